#include <cstdio>
#include <map>

#include "skeinlab/verify.hpp"

using namespace skeinlab;

namespace {

// All comparisons are exact; the only numeric tolerances are wall-clock budgets per criterion.
constexpr double kExactTolerance = 0.0;
constexpr double kDefaultBudgetSeconds = 60;
const std::map<std::string, double> kBudgetSeconds{{"duality", 120}, {"hh0", 180}};
constexpr double kTotalBudgetSeconds = 600;
constexpr int kMaxN = 4;

}  // namespace

int main() {
  VerifyOptions opt;
  opt.max_n = kMaxN;
  opt.seed = 20240917;
  auto reports = run_suites("all", opt);
  bool ok = true;
  double total = 0;
  for (auto& r : reports) {
    double budget = kBudgetSeconds.count(r.suite) ? kBudgetSeconds.at(r.suite) : kDefaultBudgetSeconds;
    bool in_time = r.seconds <= budget;
    bool pass = r.pass() && in_time;
    total += r.seconds;
    const char* status = r.report_only ? "REPORT" : pass ? "PASS" : "FAIL";
    std::printf("%-6s %2d %-12s %-52s %8.2fs\n", status, r.criterion, r.suite.c_str(), r.title.c_str(), r.seconds);
    for (auto& c : r.checks)
      if (r.report_only || !c.pass) std::printf("         %s: %s\n", c.name.c_str(), c.detail.c_str());
    if (!in_time && !r.report_only) std::printf("         over budget of %.0fs\n", budget);
    if (!r.report_only) ok = ok && pass;
  }
  std::printf("tolerance %.1f (exact), max n %d, total %.2fs of %.0fs budget\n", kExactTolerance, kMaxN, total,
              kTotalBudgetSeconds);
  ok = ok && total <= kTotalBudgetSeconds;
  std::printf("%s\n", ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return ok ? 0 : 1;
}
