#include "dfnlp_cli/cli.hpp"

int main(int argc, char** argv) { return dfnlp::cli::main_entry(argc, argv); }
