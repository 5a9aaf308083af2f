#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "qes/cli/commands.hpp"

int main(int argc, char** argv) {
  using qes::cli::OutputFormat;
  qes::cli::RunConfig config;
  CLI::App app{"Strong-core perturbation solver for quartic-plus-Kratzer radial bound states"};

  int which = 0;
  std::string format = "table", gauge = "down";
  app.add_option("command", config.command, "roots | coeffs | pascal | leftvecs | series | spectrum | verify | tables")
      ->required();
  auto* which_opt = app.add_option("which", which, "table id for 'tables' (1-4)");
  app.add_option("--N", config.N, "truncation degree N");
  app.add_option("--n", config.n, "real branch index, s = N - 3n (default floor(N/2))");
  app.add_option("--K", config.K, "Pascal depth for 'pascal' and 'tables 3'");
  app.add_option("--order", config.order, "perturbation order K_max");
  app.add_option("--A", config.A, "r^4 coupling");
  app.add_option("--B", config.B, "r^3 coupling");
  app.add_option("--C", config.C, "r^2 coupling");
  app.add_option("--G", config.G, "r^-2 coupling");
  app.add_option("--ell", config.ell, "angular momentum");
  app.add_option("--lambda", config.lambda, "formal expansion parameter 1/Omega");
  app.add_option("--b", config.b, "formal symbol b");
  app.add_option("--g", config.g, "formal symbol g");
  app.add_option("--gauge", gauge, "down | up")->check(CLI::IsMember({"down", "up"}));
  app.add_option("--format", format, "table | json | csv")->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--precision", config.precision, "significant digits for real output")->check(CLI::Range(1, 50));
  app.add_option("--out", config.out, "write the result to FILE");
  app.add_option("--seed", config.seed, "seed for the numeric root sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cout << qes::cli::error_document("usage", e.what()).dump() << "\n";
    return 2;
  }

  if (which_opt->count() > 0) config.which = which;
  config.gauge = gauge == "up" ? qes::Gauge::last_component_zero : qes::Gauge::first_component_zero;
  static const std::map<std::string, OutputFormat> formats{
      {"table", OutputFormat::table}, {"json", OutputFormat::json}, {"csv", OutputFormat::csv}};
  config.format = formats.at(format);
  return qes::cli::run(config, std::cout);
}
