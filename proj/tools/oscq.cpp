#include <iostream>

#include "CLI11.hpp"
#include "oscq/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Fourier sine/cosine transforms by a single-exponential trapezoidal rule"};
  app.require_subcommand(1);

  oscq::RunConfig config;
  std::string n_list;
  std::optional<double> m;
  std::optional<long> n;
  std::optional<double> alpha;

  auto* table1 = app.add_subcommand("table1", "error decomposition I - T_m, R_m, S_m as CSV");
  table1->add_option("--out", config.output_path, "output CSV path (default stdout)");

  auto* conv = app.add_subcommand("convergence", "abs error against n with m = sqrt(n pi/alpha)");
  conv->add_option("--integrand", config.integrand, "lorentzian:a=..,b=.. | sinc | expdecay:lambda=..")
      ->required();
  conv->add_option("--t", config.t, "transform frequency")->required();
  conv->add_option("--alpha", alpha, "decay rate alpha in m = sqrt(n pi/alpha)")->required();
  conv->add_option("--n-list", n_list, "comma separated n values (default 16,25,...,400)");
  conv->add_option("--out", config.output_path, "output CSV path (default stdout)");

  auto* om = app.add_subcommand("compare-om", "single vs double exponential errors for sin x/x");
  om->add_option("--out", config.output_path, "output CSV path (default stdout)");

  auto* tr = app.add_subcommand("transform", "evaluate one sine or cosine transform");
  tr->add_option("--integrand", config.integrand, "lorentzian:a=..,b=.. | sinc | expdecay:lambda=..")
      ->required();
  tr->add_option("--t", config.t, "transform frequency")->required();
  tr->add_option("--m", m, "rule parameter, stepsize pi/m");
  tr->add_option("--n", n, "truncation index");
  tr->add_option("--alpha", alpha, "with --n: m = sqrt(n pi/alpha)");
  tr->add_option("--map", config.map, "se | om1 | om2")->check(CLI::IsMember({"se", "om1", "om2"}));
  tr->add_flag("--cosine", config.cosine, "cosine transform by the midpoint rule");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? oscq::kExitOk : oscq::kExitUsage;
  }

  if (*table1) config.command = oscq::Command::Table1;
  else if (*conv) config.command = oscq::Command::Convergence;
  else if (*om) config.command = oscq::Command::CompareOM;
  else config.command = oscq::Command::Transform;

  config.m = m;
  config.n = n;
  config.alpha = alpha;
  if (!n_list.empty()) {
    try {
      config.n_list = oscq::parse_n_list(n_list);
    } catch (const oscq::UsageError& e) {
      std::cerr << "oscq: " << e.what() << '\n';
      return oscq::kExitUsage;
    }
  }
  return oscq::run(config, std::cout, std::cerr);
}
