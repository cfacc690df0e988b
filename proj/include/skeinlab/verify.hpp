#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skeinlab/serialize.hpp"

namespace skeinlab {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // witness on failure, or reported values
  double seconds = 0;
};

struct SuiteReport {
  int criterion = 0;
  std::string suite;
  std::string title;
  bool report_only = false;
  std::vector<CheckResult> checks;
  double seconds = 0;
  bool pass() const;
};

struct VerifyOptions {
  int max_n = 3;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Suite names in criterion order.
const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& suite, const VerifyOptions& opt);
// "all" or a single suite name; results come back in criterion order.
std::vector<SuiteReport> run_suites(const std::string& which, const VerifyOptions& opt);
bool all_pass(const std::vector<SuiteReport>& reports);

json report_to_json(const std::vector<SuiteReport>& reports, const VerifyOptions& opt);
std::string report_ascii(const std::vector<SuiteReport>& reports, bool verbose);

}  // namespace skeinlab
