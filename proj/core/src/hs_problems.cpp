// Hock-Schittkowski test problems with their standard start points.

#include <cmath>
#include <functional>
#include <map>

#include "dfnlp/bench.hpp"

namespace dfnlp {

namespace {

constexpr double kInf = kInfinity;

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

Vector filled(int n, double v) { return Vector::Constant(n, v); }

BenchProblem make(std::string id, int n, double f_opt, Vector x0, Vector x_ref) {
  BenchProblem p;
  p.id = std::move(id);
  p.dim = n;
  p.f_opt = f_opt;
  p.spec.n = n;
  p.spec.x0 = std::move(x0);
  p.spec.box_lower = filled(n, -kInf);
  p.spec.box_upper = filled(n, kInf);
  p.spec.ineq_lower = Vector(0);
  p.spec.ineq_upper = Vector(0);
  p.x_ref = std::move(x_ref);
  return p;
}

BenchProblem hs1() {
  auto p = make("HS1", 2, 0.0, vec({-2, 1}), vec({1, 1}));
  p.spec.objective = [](const Vector& x) {
    return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
  };
  p.spec.box_lower[1] = -1.5;
  return p;
}

BenchProblem hs11() {
  auto p = make("HS11", 2, -8.49846422315, vec({4.9, 0.1}), vec({1.23477283788, 1.52466396117}));
  p.spec.objective = [](const Vector& x) { return std::pow(x[0] - 5, 2) + x[1] * x[1] - 25; };
  p.spec.m2 = 1;
  p.spec.ineq_con = [](const Vector& x) { return vec({-x[0] * x[0] + x[1]}); };
  p.spec.ineq_lower = vec({0});
  p.spec.ineq_upper = vec({kInf});
  return p;
}

BenchProblem hs26() {
  auto p = make("HS26", 3, 0.0, vec({-2.6, 2, 2}), vec({1, 1, 1}));
  p.spec.objective = [](const Vector& x) { return std::pow(x[0] - x[1], 2) + std::pow(x[1] - x[2], 4); };
  p.spec.m1 = 1;
  p.spec.eq_con = [](const Vector& x) {
    return vec({(1 + x[1] * x[1]) * x[0] + std::pow(x[2], 4) - 3});
  };
  return p;
}

BenchProblem hs38() {
  auto p = make("HS38", 4, 0.0, vec({-3, -1, -3, -1}), vec({1, 1, 1, 1}));
  p.spec.objective = [](const Vector& x) {
    return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2) + 90 * std::pow(x[3] - x[2] * x[2], 2) +
           std::pow(1 - x[2], 2) + 10.1 * (std::pow(x[1] - 1, 2) + std::pow(x[3] - 1, 2)) +
           19.8 * (x[1] - 1) * (x[3] - 1);
  };
  p.spec.box_lower = filled(4, -10);
  p.spec.box_upper = filled(4, 10);
  return p;
}

BenchProblem hs40() {
  auto p = make("HS40", 4, -0.25, filled(4, 0.8),
                vec({std::pow(2.0, -1.0 / 3), std::pow(2.0, -0.5), std::pow(2.0, -11.0 / 12), std::pow(2.0, -0.25)}));
  p.spec.objective = [](const Vector& x) { return -x[0] * x[1] * x[2] * x[3]; };
  p.spec.m1 = 3;
  p.spec.eq_con = [](const Vector& x) {
    return vec({std::pow(x[0], 3) + x[1] * x[1] - 1, x[0] * x[0] * x[3] - x[2], x[3] * x[3] - x[1]});
  };
  return p;
}

BenchProblem hs46() {
  auto p = make("HS46", 5, 0.0, vec({std::sqrt(2.0) / 2, 1.75, 0.5, 2, 2}), filled(5, 1));
  p.spec.objective = [](const Vector& x) {
    return std::pow(x[0] - x[1], 2) + std::pow(x[2] - 1, 2) + std::pow(x[3] - 1, 4) + std::pow(x[4] - 1, 6);
  };
  p.spec.m1 = 2;
  p.spec.eq_con = [](const Vector& x) {
    return vec({x[0] * x[0] * x[3] + std::sin(x[3] - x[4]) - 1, x[1] + std::pow(x[2], 4) * x[3] * x[3] - 2});
  };
  return p;
}

BenchProblem hs56() {
  const double a = std::asin(std::sqrt(1 / 4.2));
  const double b = std::asin(std::sqrt(5 / 7.2));
  const double r1 = std::asin(std::sqrt(2.4 / 4.2));
  const double r2 = std::asin(std::sqrt(1.2 / 4.2));
  auto p = make("HS56", 7, -3.456, vec({1, 1, 1, a, a, a, b}), vec({2.4, 1.2, 1.2, r1, r2, r2, M_PI / 2}));
  p.spec.objective = [](const Vector& x) { return -x[0] * x[1] * x[2]; };
  p.spec.m1 = 4;
  p.spec.eq_con = [](const Vector& x) {
    auto s2 = [](double t) { return std::pow(std::sin(t), 2); };
    return vec({x[0] - 4.2 * s2(x[3]), x[1] - 4.2 * s2(x[4]), x[2] - 4.2 * s2(x[5]),
                x[0] + 2 * x[1] + 2 * x[2] - 7.2 * s2(x[6])});
  };
  return p;
}

// HS78, HS80 and HS81 share their constraints.
Vector hs78_con(const Vector& x) {
  return vec({x.squaredNorm() - 10, x[1] * x[2] - 5 * x[3] * x[4], std::pow(x[0], 3) + std::pow(x[1], 3) + 1});
}

const Vector& hs78_ref() {
  static const Vector ref = vec({-1.71714357215, 1.59570969222, 1.82724574966, -0.763643077767, -0.76364307821});
  return ref;
}

BenchProblem hs78() {
  auto p = make("HS78", 5, -2.91970040896, vec({-2, 1.5, 2, -1, -1}), hs78_ref());
  p.spec.objective = [](const Vector& x) { return x.prod(); };
  p.spec.m1 = 3;
  p.spec.eq_con = hs78_con;
  return p;
}

BenchProblem hs79() {
  auto p = make("HS79", 5, 0.0787768208711, filled(5, 2),
                vec({1.19112745247, 1.36260316454, 1.47281793228, 1.63501662184, 1.67908144159}));
  p.spec.objective = [](const Vector& x) {
    return std::pow(x[0] - 1, 2) + std::pow(x[0] - x[1], 2) + std::pow(x[1] - x[2], 2) + std::pow(x[2] - x[3], 4) +
           std::pow(x[3] - x[4], 4);
  };
  p.spec.m1 = 3;
  p.spec.eq_con = [](const Vector& x) {
    const double r2 = std::sqrt(2.0);
    return vec({x[0] + x[1] * x[1] + std::pow(x[2], 3) - 2 - 3 * r2, x[1] - x[2] * x[2] + x[3] + 2 - 2 * r2,
                x[0] * x[4] - 2});
  };
  return p;
}

BenchProblem hs80_like(const std::string& id, bool penalised) {
  auto p = make(id, 5, 0.0539498477703, vec({-2, 2, 2, -1, -1}), hs78_ref());
  if (penalised) {
    p.spec.objective = [](const Vector& x) {
      return std::exp(x.prod()) - 0.5 * std::pow(std::pow(x[0], 3) + std::pow(x[1], 3) + 1, 2);
    };
  } else {
    p.spec.objective = [](const Vector& x) { return std::exp(x.prod()); };
  }
  p.spec.m1 = 3;
  p.spec.eq_con = hs78_con;
  p.spec.box_lower = vec({-2.3, -2.3, -3.2, -3.2, -3.2});
  p.spec.box_upper = vec({2.3, 2.3, 3.2, 3.2, 3.2});
  return p;
}

constexpr double a84[21] = {-24345,       -8720288.849, 150512.5233, -156.6950325, 476470.3222, 729482.8271,
                            -145421.402,  2931.1506,    -40.427932,  5106.192,     15711.36,    -155011.1084,
                            4360.53352,   12.9492344,   10236.884,   13176.786,    -326669.5104, 7390.68412,
                            -27.8986976,  16643.076,    30988.146};

double hs84_row(const Vector& x, int o) {
  return a84[o] * x[0] + a84[o + 1] * x[0] * x[1] + a84[o + 2] * x[0] * x[2] + a84[o + 3] * x[0] * x[3] +
         a84[o + 4] * x[0] * x[4];
}

BenchProblem hs84() {
  auto p = make("HS84", 5, -5280335.10599, vec({2.52, 2, 37.5, 9.25, 6.8}), vec({4.53743097, 2.4, 60, 9.3, 7}));
  p.spec.objective = [](const Vector& x) {
    return -a84[0] - a84[1] * x[0] - a84[2] * x[0] * x[1] - a84[3] * x[0] * x[2] - a84[4] * x[0] * x[3] -
           a84[5] * x[0] * x[4];
  };
  p.spec.m2 = 3;
  p.spec.ineq_con = [](const Vector& x) { return vec({hs84_row(x, 6), hs84_row(x, 11), hs84_row(x, 16)}); };
  p.spec.ineq_lower = filled(3, 0);
  p.spec.ineq_upper = vec({294000, 294000, 277200});
  p.spec.box_lower = vec({0, 1.2, 20, 9, 6.5});
  p.spec.box_upper = vec({1000, 2.4, 60, 9.3, 7});
  return p;
}

BenchProblem hs93() {
  auto p = make("HS93", 6, 135.075962763, vec({5.54, 4.4, 12.02, 11.82, 0.702, 0.852}),
                vec({5.33266789939, 4.65674400898, 10.4329906407, 12.0823042218, 0.752607392989, 0.878650939865}));
  p.spec.objective = [](const Vector& x) {
    const double s1 = x[0] + x[1] + x[2];
    const double s2 = x[0] + 1.57 * x[1] + x[3];
    return 0.0204 * x[0] * x[3] * s1 + 0.0187 * x[1] * x[2] * s2 + 0.0607 * x[0] * x[3] * x[4] * x[4] * s1 +
           0.0437 * x[1] * x[2] * x[5] * x[5] * s2;
  };
  p.spec.m2 = 2;
  p.spec.ineq_con = [](const Vector& x) {
    const double s1 = x[0] + x[1] + x[2];
    const double s2 = x[0] + 1.57 * x[1] + x[3];
    return vec({0.001 * x.prod() - 2.07,
                1 - 0.00062 * x[0] * x[3] * x[4] * x[4] * s1 - 0.00058 * x[1] * x[2] * x[5] * x[5] * s2});
  };
  p.spec.ineq_lower = filled(2, 0);
  p.spec.ineq_upper = filled(2, kInf);
  p.spec.box_lower = filled(6, 0);
  return p;
}

BenchProblem hs106() {
  auto p = make("HS106", 8, 7049.24802208, vec({5000, 5000, 5000, 200, 350, 150, 225, 425}),
                vec({579.292786242, 1359.9165033, 5110.03873254, 182.016538806, 295.598450698, 217.983461194,
                     286.418088108, 395.598450698}));
  p.spec.objective = [](const Vector& x) { return x[0] + x[1] + x[2]; };
  p.spec.m2 = 6;
  p.spec.ineq_con = [](const Vector& x) {
    return vec({1 - 0.0025 * (x[3] + x[5]), 1 - 0.0025 * (x[4] + x[6] - x[3]), 1 - 0.01 * (x[7] - x[4]),
                x[0] * x[5] - 833.33252 * x[3] - 100 * x[0] + 83333.333,
                x[1] * x[6] - 1250 * x[4] - x[1] * x[3] + 1250 * x[3],
                x[2] * x[7] - 1250000 - x[2] * x[4] + 2500 * x[4]});
  };
  p.spec.ineq_lower = filled(6, 0);
  p.spec.ineq_upper = filled(6, kInf);
  p.spec.box_lower = vec({100, 1000, 1000, 10, 10, 10, 10, 10});
  p.spec.box_upper = vec({10000, 10000, 10000, 1000, 1000, 1000, 1000, 1000});
  return p;
}

}  // namespace

const std::vector<std::string>& hs_ids() {
  static const std::vector<std::string> ids = {"HS1",  "HS11", "HS26", "HS38", "HS40", "HS46",  "HS56",
                                               "HS78", "HS79", "HS80", "HS81", "HS84", "HS93", "HS106"};
  return ids;
}

const std::vector<std::string>& hs_required_ids() {
  static const std::vector<std::string> ids = {"HS40", "HS78", "HS79", "HS80", "HS81", "HS26", "HS38", "HS11"};
  return ids;
}

BenchProblem hs_problem(const std::string& id) {
  static const std::map<std::string, std::function<BenchProblem()>> table = {
      {"HS1", hs1},
      {"HS11", hs11},
      {"HS26", hs26},
      {"HS38", hs38},
      {"HS40", hs40},
      {"HS46", hs46},
      {"HS56", hs56},
      {"HS78", hs78},
      {"HS79", hs79},
      {"HS80", [] { return hs80_like("HS80", false); }},
      {"HS81", [] { return hs80_like("HS81", true); }},
      {"HS84", hs84},
      {"HS93", hs93},
      {"HS106", hs106},
  };
  const auto it = table.find(id);
  if (it == table.end()) throw Error("unknown problem id: " + id);
  return it->second();
}

}  // namespace dfnlp
