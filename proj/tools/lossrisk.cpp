#include <iostream>

#include "CLI11.hpp"
#include "lossrisk/commands.hpp"

int main(int argc, char** argv) {
  using lossrisk::cli::CliOptions;
  CLI::App app{"Loss-based risk measures: evaluation, sensitivity and robustness experiments"};
  app.require_subcommand(1);

  CliOptions opt;
  std::string input, scenarios, catalog, config, out;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", input, "P&L file, one value per line");
    sub->add_option("--scenarios", scenarios, "scenario P&L file");
    sub->add_option("--catalog", catalog, "measure catalog (JSON)");
    sub->add_option("--config", config, "experiment or base config (JSON)");
    sub->add_option("--out", out, "report path (default stdout)");
    sub->add_option("--seed", seed, "RNG seed");
    sub->add_option("--z-grid", opt.z_grid, "z grid \"a,b,step\"")->capture_default_str();
    sub->add_flag("--numeric", opt.numeric, "allow measures without an analytic sensitivity");
    sub->add_option("--tol", opt.tol, "axiom comparison tolerance")->capture_default_str();
  };
  add_common(app.add_subcommand("eval", "evaluate a measure catalog on P&L or scenario files"));
  add_common(app.add_subcommand("sensitivity", "tabulate analytic and numeric sensitivities as CSV"));
  add_common(app.add_subcommand("roblab", "run a contamination / consistency experiment"));
  add_common(app.add_subcommand("axioms", "check the loss-based axioms for a catalog"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : lossrisk::cli::kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  opt.command = sub->get_name();
  auto set = [&](const char* flag, const std::string& v, std::optional<std::string>& dst) {
    if (sub->count(flag) > 0) dst = v;
  };
  set("--input", input, opt.input);
  set("--scenarios", scenarios, opt.scenarios);
  set("--catalog", catalog, opt.catalog);
  set("--config", config, opt.config);
  set("--out", out, opt.out);
  if (sub->count("--seed") > 0) opt.seed = seed;

  return lossrisk::cli::run(opt, std::cout, std::cerr);
}
