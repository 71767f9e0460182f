#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "magic/hc_core.hpp"

namespace magic {

struct CheckRecord {
  std::string id;
  std::string claim;   // the property being checked, in words
  std::string inputs;  // short digest of the inputs
  std::vector<double> values;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyConfig {
  std::uint64_t seed = 1;
  int loops = 0;  // 0: every loop count the suite covers
  int lmax = 0;   // 0: per-check defaults
  std::int64_t samples = 1000000;
  double base = 1.0;
  double ratio = 4.0;
  GridSpec grid1{32, 16};
  GridSpec grid2{12, 8};
};

struct VerifyReport {
  static constexpr int kSchema = 1;
  std::string suite;
  VerifyConfig config;
  std::vector<CheckRecord> checks;
  double wall_seconds = 0.0;
  bool all_pass() const;
};

// numbered acceptance criteria 1..10
std::vector<CheckRecord> criterion_checks(int criterion, const VerifyConfig &cfg);
const char *criterion_title(int criterion);

// normalization, orthogonality, expansion, crossmethod, magic, conformal,
// harmonic, operators, structure, all
std::vector<std::string> suite_names();
std::vector<int> suite_criteria(const std::string &suite);
VerifyReport run_suite(const std::string &suite, const VerifyConfig &cfg);

} // namespace magic
