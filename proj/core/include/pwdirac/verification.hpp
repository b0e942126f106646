#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pwdirac {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string summary;
  double seconds = 0.0;
};

struct VerificationOptions {
  std::string out_dir;      // when nonempty: criteria.csv + report.json are written
  std::uint64_t seed = 1;
  std::ostream* log = nullptr;  // per-criterion progress lines
};

/// Runs the full verification suite (the nine acceptance checks of this
/// artifact) at pinned tolerances and returns one result per criterion.
std::vector<CriterionResult> run_verification(const VerificationOptions& opts);

/// criteria.csv content for a result set.
std::string criteria_csv(const std::vector<CriterionResult>& results);

}  // namespace pwdirac
