#pragma once

// The nine end-to-end acceptance criteria, shared by `heatcoef all` and the
// acceptance test binary.

#include <cstdint>
#include <string>
#include <vector>

#include "heatcoef/json_io.hpp"

namespace heatcoef {

struct AcceptanceBounds {
  std::int64_t pell_scan = 1'000'000;
  std::int64_t c1_m_max = 2000;
  std::int64_t soliton_m_max = 2000;
  std::int64_t kahler_n_max = 1000;
  std::int64_t kahler_consistency_n_max = 50;
  int tensor_seeds = 100;
  int sphere_level = 2000;
  int agreement_seeds = 10;

  static AcceptanceBounds full() { return {}; }
  /// Reduced ranges for smoke runs; the numeric fits keep their full size.
  static AcceptanceBounds quick();
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;  // wall time; kept out of `data` so JSON stays reproducible
  json data;
};

inline constexpr int kCriterionCount = 9;

/// Runs one criterion (1..9). Exceptions inside a criterion become a FAIL
/// with the message in `detail`.
CriterionResult run_criterion(int id, const AcceptanceBounds& bounds);

std::vector<CriterionResult> run_acceptance(const AcceptanceBounds& bounds);

/// "PASS [3] c1 zero set: ..." style line.
std::string summary_line(const CriterionResult& r);

/// Weyl-recovery exponents exercised by criterion 9 (all above -2/m for m = 2).
std::vector<double> weyl_recovery_alphas();

}  // namespace heatcoef
