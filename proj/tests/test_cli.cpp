#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fusionkit/report.hpp"

using namespace fusionkit;

TEST_CASE("unknown suite is a config error") {
  SuiteConfig cfg;
  cfg.suite = "nonsense";
  CHECK_THROWS_AS(run_suite(cfg), ConfigError);
}

TEST_CASE("config file parsing") {
  std::string path = "test_cli_config.tmp";
  {
    std::ofstream out(path);
    out << "# comment\n";
    out << "suite = gg\n";
    out << "group = builtin:psl3:2\n";
    out << "prime = 2\n";
    out << "budget-closure = 123456\n";
  }
  SuiteConfig cfg = SuiteConfig::from_file(path);
  CHECK(cfg.suite == "gg");
  CHECK(cfg.groups.size() == 1);
  CHECK(cfg.bounds.closure_steps == 123456);
  std::remove(path.c_str());

  {
    std::ofstream out(path);
    out << "nonsense = 1\n";
  }
  CHECK_THROWS_AS(SuiteConfig::from_file(path), ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("gg suite entries and determinism of the json report") {
  SuiteConfig cfg;
  cfg.suite = "gg";
  cfg.groups = {"builtin:psl3:2", "builtin:psl2:8"};
  SuiteResult result = run_suite(cfg);
  CHECK(result.entries.size() == 2);
  for (const auto &e : result.entries) CHECK(e.verdict == EntryVerdict::pass);

  std::ostringstream a, b;
  emit_report(a, result, cfg, "json");
  SuiteResult again = run_suite(cfg);
  emit_report(b, again, cfg, "json");
  CHECK(a.str() == b.str()); // byte-identical reruns

  // Entries are sorted by (system, operation).
  for (std::size_t i = 1; i < result.entries.size(); ++i) {
    const auto &x = result.entries[i - 1];
    const auto &y = result.entries[i];
    CHECK((x.systemId < y.systemId ||
           (x.systemId == y.systemId && x.operation <= y.operation)));
  }
}

TEST_CASE("text report shape") {
  SuiteConfig cfg;
  cfg.suite = "gg";
  cfg.groups = {"builtin:psl3:2"};
  SuiteResult result = run_suite(cfg);
  std::ostringstream out;
  emit_report(out, result, cfg, "text");
  std::string text = out.str();
  CHECK(text.find("gg-classify") != std::string::npos);
  CHECK(text.find("summary pass=") != std::string::npos);
  CHECK_THROWS_AS(emit_report(out, result, cfg, "yaml"), ConfigError);
}

TEST_CASE("empty entries summarize to zeros") {
  SuiteResult empty;
  SuiteConfig cfg;
  cfg.suite = "gg";
  std::ostringstream out;
  emit_report(out, empty, cfg, "json");
  CHECK(out.str().find("\"fail\": 0") != std::string::npos);
  CHECK(out.str().find("\"pass\": 0") != std::string::npos);
}
