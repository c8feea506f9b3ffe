#pragma once

// The numbered reproduction checks shared by the CLI and the acceptance test.

#include <memory>
#include <string>
#include <vector>

#include "sigvol/invariants.hpp"

namespace sigvol::reproduce {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

inline constexpr int kCriterionCount = 12;

std::string criterion_title(int id);

// Runs checks by number, sharing intermediate results between them.
class Runner {
 public:
  explicit Runner(invariants::Options opt = {});
  ~Runner();

  CriterionResult run(int id);
  std::vector<CriterionResult> run_all(const std::vector<int>& ids);

 private:
  struct Cache;
  invariants::Options opt_;
  std::unique_ptr<Cache> cache_;
};

// "PASS  3  title  (detail)" style line.
std::string format_line(const CriterionResult& r);

}  // namespace sigvol::reproduce
