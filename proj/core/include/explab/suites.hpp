#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "explab/json_io.hpp"

namespace explab {

struct SuiteParams {
  std::vector<int> primes{3, 5, 7};
  std::vector<int> ranks{1, 2};
  std::uint64_t seed = 1;
  /// Largest |X| for the exhaustive additivity check when p <= 5; larger
  /// primes use min(bound, 3).
  int bound = 4;
  /// Worker threads; 0 means hardware concurrency.
  unsigned threads = 0;
};

enum class CaseStatus { pass, fail, error };

struct CaseResult {
  std::string id;
  std::string paper_anchor;
  CaseStatus status = CaseStatus::pass;
  std::string details;
};

struct SuiteReport {
  std::string suite;
  std::vector<CaseResult> cases;  // sorted by id
  SuiteParams params;

  bool all_pass() const;
  /// 0 all pass, 1 some case failed, else 3 if some case raised an error.
  int exit_code() const;
};

/// finite-identities, weyl-core, dmod-core, realization, all.
const std::vector<std::string>& suite_names();

/// Throws UsageError for an unknown suite or invalid prime/rank.
SuiteReport run_suite(const std::string& name, const SuiteParams& params);

const char* to_string(CaseStatus s);
json to_json(const SuiteReport& r);
/// One line per case: "pass  id  details".
std::string to_text(const SuiteReport& r);

}  // namespace explab
