// The toolkit's acceptance suite: one entry per verified identity, each
// runnable on a laptop in under a minute, reporting pass/fail with the
// measured numbers.
#ifndef SPECTRALFLOW_ACCEPTANCE_HPP
#define SPECTRALFLOW_ACCEPTANCE_HPP

#include <string>
#include <vector>

namespace spectralflow {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // measured values and the thresholds they were held to
};

/// Run every acceptance criterion; results come back in id order.
std::vector<CriterionResult> run_acceptance();

/// Print one "[PASS]/[FAIL] id. name: detail" line per criterion.
/// Returns true iff everything passed.
bool report_acceptance(const std::vector<CriterionResult>& results, std::ostream& os);

}  // namespace spectralflow

#endif
