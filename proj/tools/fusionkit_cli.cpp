// Command-line verification harness: builds the corpus groups, runs the
// named suites and emits deterministic reports.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fusionkit/report.hpp"

using namespace fusionkit;

int main(int argc, char **argv) {
  CLI::App app{"fusionkit verification harness"};
  app.require_subcommand(1);

  CLI::App *verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  std::vector<std::string> groups;
  unsigned prime = 2;
  std::string out_path, format = "text", config_path, fixtures;
  std::uint64_t budget_elements = 0, budget_closure = 0;
  bool rv_model = false;
  verify->add_option("--suite", suite, "lemmas | fusion | gg | extensions | rv-model | all");
  verify->add_option("--group", groups, "group spec override (builtin:..., catalog:..., file:...)");
  verify->add_option("--prime", prime, "the fusion prime");
  verify->add_option("--out", out_path, "report output path (default stdout)");
  verify->add_option("--format", format, "json | text");
  verify->add_option("--config", config_path, "key=value config file");
  verify->add_option("--fixtures", fixtures, "fixture directory");
  verify->add_option("--budget-elements", budget_elements, "element enumeration bound");
  verify->add_option("--budget-closure", budget_closure, "closure step budget");
  verify->add_flag("--rv-model", rv_model, "include the large-budget model check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  SuiteConfig cfg;
  try {
    if (!config_path.empty()) cfg = SuiteConfig::from_file(config_path);
    // Command-line values override the config file.
    if (verify->count("--suite") || cfg.suite.empty()) cfg.suite = suite;
    if (!groups.empty()) cfg.groups = groups;
    if (verify->count("--prime")) cfg.prime = prime;
    if (!out_path.empty()) cfg.outPath = out_path;
    if (verify->count("--format")) cfg.format = format;
    if (!fixtures.empty()) cfg.fixturesDir = fixtures;
    if (budget_elements) cfg.bounds.enumeration = budget_elements;
    if (budget_closure) cfg.bounds.closure_steps = budget_closure;
    if (rv_model) cfg.rvModel = true;
    if (cfg.format != "json" && cfg.format != "text")
      throw ConfigError("unknown format: " + cfg.format);
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  SuiteResult result;
  try {
    result = run_suite(cfg);
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const BoundExceeded &e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  if (cfg.outPath.empty()) {
    emit_report(std::cout, result, cfg, cfg.format);
  } else {
    std::ofstream out(cfg.outPath);
    if (!out) {
      std::cerr << "cannot write " << cfg.outPath << "\n";
      return 1;
    }
    emit_report(out, result, cfg, cfg.format);
  }
  return result.failed() == 0 ? 0 : 1;
}
