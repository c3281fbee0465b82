#ifndef FUSIONKIT_REPORT_HPP_
#define FUSIONKIT_REPORT_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fusionkit/bounds.hpp"

namespace fusionkit {

enum class EntryVerdict { pass, fail, preconditionViolated, skippedBudget };
std::string verdict_name(EntryVerdict v);

struct ReportEntry {
  std::string systemId;
  std::string operation;
  EntryVerdict verdict = EntryVerdict::pass;
  std::string witness; // structured payload, already rendered compactly
  std::uint64_t elapsedMillis = 0;
};

struct SuiteConfig {
  std::string suite;                    // lemmas | fusion | gg | extensions | all
  std::vector<std::string> groups;      // optional GroupSpec overrides
  unsigned prime = 2;
  Bounds bounds;
  std::string fixturesDir = "data";
  std::string outPath;
  std::string format = "text";          // json | text
  bool rvModel = false;                 // optional large-budget model check

  static SuiteConfig from_file(const std::string &path);
};

class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string &m) : std::runtime_error(m) {}
};

struct SuiteResult {
  std::vector<ReportEntry> entries; // sorted by (systemId, operation)
  std::size_t passed() const;
  std::size_t failed() const;
  std::size_t skipped() const;
};

SuiteResult run_suite(const SuiteConfig &config);

// json: {version, config, entries[], summary{pass,fail,skipped}}.  The
// json form omits elapsed times so reruns are byte-identical; the text
// form includes them.
void emit_report(std::ostream &out, const SuiteResult &result,
                 const SuiteConfig &config, const std::string &format);

} // namespace fusionkit

#endif
