#pragma once

#include <string>
#include <vector>

namespace skorohod {

struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t total = 0;
  std::vector<std::string> failures;  // one message per failed check

  bool ok() const { return passed == total; }
};

// The invariant suites behind `verify`: each runs deterministic checks over
// the shipped corpus plus fixed-seed generated cases. Throws
// std::runtime_error if the corpus directory is missing or a fixture fails
// to parse (usage error, distinct from check failure).
std::vector<SuiteResult> run_verify_suites(const std::string& corpus_dir);

}  // namespace skorohod
