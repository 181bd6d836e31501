"""Polish Hock-Schittkowski reference optima with SLSQP (exact gradients via
finite differences in scipy) and print x*, f* at full precision.

Used once to freeze the reference points in core/src/hs_problems.cpp; the C++
tests check f(x*) against f_opt independently of the solver.
"""
import numpy as np
from scipy.optimize import minimize

INF = np.inf
a84 = [-24345, -8720288.849, 150512.5233, -156.6950325, 476470.3222,
       729482.8271, -145421.402, 2931.1506, -40.427932, 5106.192, 15711.36,
       -155011.1084, 4360.53352, 12.9492344, 10236.884, 13176.786,
       -326669.5104, 7390.68412, -27.8986976, 16643.076, 30988.146]


def hs84_c(x, o):
    a = a84
    return (a[o] * x[0] + a[o + 1] * x[0] * x[1] + a[o + 2] * x[0] * x[2]
            + a[o + 3] * x[0] * x[3] + a[o + 4] * x[0] * x[4])


P = {
    "HS1": dict(f=lambda x: 100 * (x[1] - x[0] ** 2) ** 2 + (1 - x[0]) ** 2,
                eq=[], ineq=[], lb=[-INF, -1.5], ub=[INF, INF], x=[1, 1]),
    "HS11": dict(f=lambda x: (x[0] - 5) ** 2 + x[1] ** 2 - 25, eq=[],
                 ineq=[lambda x: -x[0] ** 2 + x[1]], lb=[-INF] * 2,
                 ub=[INF] * 2, x=[1.2348, 1.5247]),
    "HS26": dict(f=lambda x: (x[0] - x[1]) ** 2 + (x[1] - x[2]) ** 4,
                 eq=[lambda x: (1 + x[1] ** 2) * x[0] + x[2] ** 4 - 3],
                 ineq=[], lb=[-INF] * 3, ub=[INF] * 3, x=[1, 1, 1]),
    "HS40": dict(f=lambda x: -x[0] * x[1] * x[2] * x[3],
                 eq=[lambda x: x[0] ** 3 + x[1] ** 2 - 1,
                     lambda x: x[0] ** 2 * x[3] - x[2],
                     lambda x: x[3] ** 2 - x[1]],
                 ineq=[], lb=[-INF] * 4, ub=[INF] * 4,
                 x=[2 ** (-1 / 3), 2 ** (-1 / 2), 2 ** (-11 / 12), 2 ** (-1 / 4)]),
    "HS56": dict(f=lambda x: -x[0] * x[1] * x[2],
                 eq=[lambda x: x[0] - 4.2 * np.sin(x[3]) ** 2,
                     lambda x: x[1] - 4.2 * np.sin(x[4]) ** 2,
                     lambda x: x[2] - 4.2 * np.sin(x[5]) ** 2,
                     lambda x: x[0] + 2 * x[1] + 2 * x[2] - 7.2 * np.sin(x[6]) ** 2],
                 ineq=[], lb=[-INF] * 7, ub=[INF] * 7,
                 x=[2.4, 1.2, 1.2, np.arcsin(np.sqrt(2.4 / 4.2)),
                    np.arcsin(np.sqrt(1.2 / 4.2)), np.arcsin(np.sqrt(1.2 / 4.2)),
                    np.pi / 2]),
    "HS78": dict(f=lambda x: np.prod(x),
                 eq=[lambda x: np.sum(x ** 2) - 10,
                     lambda x: x[1] * x[2] - 5 * x[3] * x[4],
                     lambda x: x[0] ** 3 + x[1] ** 3 + 1],
                 ineq=[], lb=[-INF] * 5, ub=[INF] * 5,
                 x=[-1.717143, 1.595709, 1.827247, -0.7636413, -0.7636450]),
    "HS79": dict(f=lambda x: (x[0] - 1) ** 2 + (x[0] - x[1]) ** 2 + (x[1] - x[2]) ** 2
                 + (x[2] - x[3]) ** 4 + (x[3] - x[4]) ** 4,
                 eq=[lambda x: x[0] + x[1] ** 2 + x[2] ** 3 - 2 - 3 * np.sqrt(2),
                     lambda x: x[1] - x[2] ** 2 + x[3] + 2 - 2 * np.sqrt(2),
                     lambda x: x[0] * x[4] - 2],
                 ineq=[], lb=[-INF] * 5, ub=[INF] * 5,
                 x=[1.191127, 1.362603, 1.472818, 1.635017, 1.679081]),
    "HS80": dict(f=lambda x: np.exp(np.prod(x)),
                 eq=[lambda x: np.sum(x ** 2) - 10,
                     lambda x: x[1] * x[2] - 5 * x[3] * x[4],
                     lambda x: x[0] ** 3 + x[1] ** 3 + 1],
                 ineq=[], lb=[-2.3, -2.3, -3.2, -3.2, -3.2],
                 ub=[2.3, 2.3, 3.2, 3.2, 3.2],
                 x=[-1.717143, 1.595709, 1.827247, -0.7636413, -0.7636450]),
    "HS81": dict(f=lambda x: np.exp(np.prod(x)) - 0.5 * (x[0] ** 3 + x[1] ** 3 + 1) ** 2,
                 eq=[lambda x: np.sum(x ** 2) - 10,
                     lambda x: x[1] * x[2] - 5 * x[3] * x[4],
                     lambda x: x[0] ** 3 + x[1] ** 3 + 1],
                 ineq=[], lb=[-2.3, -2.3, -3.2, -3.2, -3.2],
                 ub=[2.3, 2.3, 3.2, 3.2, 3.2],
                 x=[-1.717143, 1.595709, 1.827247, -0.7636413, -0.7636450]),
    "HS84": dict(f=lambda x: -a84[0] - a84[1] * x[0] - a84[2] * x[0] * x[1]
                 - a84[3] * x[0] * x[2] - a84[4] * x[0] * x[3] - a84[5] * x[0] * x[4],
                 eq=[],
                 ineq=[lambda x: hs84_c(x, 6), lambda x: 294000 - hs84_c(x, 6),
                       lambda x: hs84_c(x, 11), lambda x: 294000 - hs84_c(x, 11),
                       lambda x: hs84_c(x, 16), lambda x: 277200 - hs84_c(x, 16)],
                 lb=[0, 1.2, 20, 9, 6.5], ub=[1000, 2.4, 60, 9.3, 7],
                 x=[4.53743097, 2.4, 60, 9.3, 7]),
    "HS93": dict(f=lambda x: 0.0204 * x[0] * x[3] * (x[0] + x[1] + x[2])
                 + 0.0187 * x[1] * x[2] * (x[0] + 1.57 * x[1] + x[3])
                 + 0.0607 * x[0] * x[3] * x[4] ** 2 * (x[0] + x[1] + x[2])
                 + 0.0437 * x[1] * x[2] * x[5] ** 2 * (x[0] + 1.57 * x[1] + x[3]),
                 eq=[],
                 ineq=[lambda x: 0.001 * np.prod(x) - 2.07,
                       lambda x: 1 - 0.00062 * x[0] * x[3] * x[4] ** 2 * (x[0] + x[1] + x[2])
                       - 0.00058 * x[1] * x[2] * x[5] ** 2 * (x[0] + 1.57 * x[1] + x[3])],
                 lb=[0] * 6, ub=[INF] * 6,
                 x=[5.332666, 4.656744, 10.43299, 12.08230, 0.7526074, 0.87865084]),
    "HS106": dict(f=lambda x: x[0] + x[1] + x[2], eq=[],
                  ineq=[lambda x: 1 - 0.0025 * (x[3] + x[5]),
                        lambda x: 1 - 0.0025 * (x[4] + x[6] - x[3]),
                        lambda x: 1 - 0.01 * (x[7] - x[4]),
                        lambda x: x[0] * x[5] - 833.33252 * x[3] - 100 * x[0] + 83333.333,
                        lambda x: x[1] * x[6] - 1250 * x[4] - x[1] * x[3] + 1250 * x[3],
                        lambda x: x[2] * x[7] - 1250000 - x[2] * x[4] + 2500 * x[4]],
                  lb=[100, 1000, 1000] + [10] * 5, ub=[10000] * 3 + [1000] * 5,
                  x=[579.3167, 1359.943, 5110.071, 182.0174, 295.5985, 217.9799,
                     286.4162, 395.5979]),
}

if __name__ == "__main__":
    for name, p in P.items():
        cons = [dict(type="eq", fun=c) for c in p["eq"]]
        cons += [dict(type="ineq", fun=c) for c in p["ineq"]]
        bounds = list(zip(p["lb"], p["ub"]))
        x0 = np.array(p["x"], dtype=float)
        r = minimize(p["f"], x0, method="SLSQP", constraints=cons, bounds=bounds,
                     options=dict(ftol=1e-15, maxiter=500))
        viol = max([abs(c(r.x)) for c in p["eq"]] + [max(0, -c(r.x)) for c in p["ineq"]] + [0])
        print(name, "f=%.12g" % r.fun, "viol=%.2e" % viol,
              "x=[" + ", ".join("%.12g" % v for v in r.x) + "]", "f(seed)=%.12g" % p["f"](x0))
