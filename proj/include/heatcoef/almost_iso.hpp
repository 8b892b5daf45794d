#pragma once

// Spectra that agree up to O(i^{-alpha}): the finite-sample lim-sup statistic,
// the weighted sum omega(t) = sum_i exp(-lambda_i t) i^{-alpha} and its three
// small-t regimes, synthetic alpha-perturbations, and the check that fitted
// heat coefficients agree below the index 1 + (m/2) min(alpha, 1).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heatcoef/heat_trace.hpp"

namespace heatcoef {

enum class Regime { GT1, LT1, EQ1 };

std::string to_string(Regime regime);

/// Regime implied by alpha alone: alpha > 1, alpha < 1, alpha == 1.
Regime regime_for(double alpha);

/// 1 + (m/2) min(alpha, 1).
double index_bound(int m, double alpha);

/// max over the upper half i in (n/2, n] of |lambda1_i - lambda2_i| i^alpha,
/// on the flat lists truncated to `length` (default: the common length, which
/// must then be equal). Needs length >= 1000.
double alpha_statistic(const Spectrum& spec1, const Spectrum& spec2, double alpha,
                       std::optional<std::uint64_t> length = std::nullopt);
double alpha_statistic(const std::vector<double>& flat1, const std::vector<double>& flat2,
                       double alpha, std::optional<std::uint64_t> length = std::nullopt);

struct DivergenceProbe {
  std::vector<std::uint64_t> lengths;
  std::vector<double> statistics;
  double growth_exponent = 0.0;  // slope of log statistic against log length
};

/// alpha_statistic at several truncation lengths and its log-log growth.
DivergenceProbe divergence_probe(const std::vector<double>& flat1, const std::vector<double>& flat2,
                                 double alpha, const std::vector<std::uint64_t>& lengths);

struct AlphaReport {
  double alpha_nominal = 0.0;
  double sup_statistic = 0.0;
  Regime regime = Regime::GT1;
  double index_bound = 0.0;
};

AlphaReport alpha_report(const Spectrum& spec1, const Spectrum& spec2, double alpha);

/// lambda_i = min(lambda1_i, lambda2_i) on the common flat prefix.
Spectrum pointwise_min(const Spectrum& spec1, const Spectrum& spec2);

struct OmegaValue {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// omega(t) on a flat ascending list with a precomputed weight table.
class OmegaEvaluator {
 public:
  /// `spec_min` is the pointwise-minimum spectrum.
  OmegaEvaluator(const Spectrum& spec_min, double alpha);

  /// Throws std::domain_error for t <= 0 and TruncationError when the tail
  /// bound exceeds 1e-6 of the partial sum.
  OmegaValue operator()(double t) const;

  double alpha() const { return alpha_; }
  int dim() const { return m_; }
  double tail_bound(double t) const;

 private:
  int m_;
  double alpha_;
  std::vector<double> eigenvalues_;
  std::vector<double> weights_;
  double weyl_floor_;  // lower Weyl constant: lambda_i >= weyl_floor_ i^{2/m} beyond the list
};

OmegaValue omega(const Spectrum& spec_min, double alpha, double t);

struct RegimeReport {
  double alpha = 0.0;
  int m = 0;
  Regime expected = Regime::GT1;
  Regime classified = Regime::GT1;
  double exponent = 0.0;            // slope of log omega against log t
  double increment_exponent = 0.0;  // slope of log |omega(t_k+1) - omega(t_k)| against log t
  double target_exponent = 0.0;     // (m/2)(alpha - 1)
  double log_ratio_max = 0.0;       // max omega / ln(1/t)
  double omega_max = 0.0;
  double zeta_bound = 0.0;          // sum i^{-alpha} for alpha > 1
  std::vector<double> t_grid;
  std::vector<double> omega_values;
  bool pass = false;
  std::string detail;
};

/// Band around zero of the increment exponent that reads as logarithmic growth.
inline constexpr double kLogRegimeBand = 0.15;

/// Classifies the growth of omega on a geometric grid. The classification uses
/// the increment exponent, ~ (m/2)(alpha - 1) in every regime (negative for
/// power growth, ~0 for logarithmic growth, positive when omega converges).
/// PASS needs the classification to match alpha and, per regime, the power
/// exponent within 10% of (m/2)(alpha-1) (LT1), max omega/ln(1/t) <= 1.1 m/2
/// (EQ1), or omega <= zeta(alpha) on the grid (GT1).
RegimeReport regime_check(const Spectrum& spec_min, double alpha, const std::vector<double>& t_grid);

/// Grid [t_hi/1000, t_hi] with t_hi = 0.02/lambda_1 (first nonzero), raised to the
/// omega-safe range.
std::vector<double> omega_grid(const Spectrum& spec_min, double alpha, int points = 25);

/// lambda_i + amplitude eps_i i^{-alpha}, eps_i uniform in [-1, 1] from
/// SplitMix64(seed) keyed by i. Within a degenerate level the draws are sorted
/// and scaled by the level's smallest i^{-alpha}, so the result stays ordered
/// and |shift at position i| <= amplitude i^{-alpha}. Negative results clamp
/// to 0. The result is a flat spectrum (unit multiplicities except exact ties).
Spectrum perturb(const Spectrum& spec, double alpha, double amplitude, std::uint64_t seed);

struct AgreementRow {
  int index = 0;
  double a1 = 0.0;
  double a2 = 0.0;
  double difference = 0.0;
  double tolerance = 0.0;
  bool agree = false;
  bool required = false;  // index < 1 + (m/2) min(alpha, 1)
};

struct AgreementReport {
  double alpha = 0.0;
  double index_bound = 0.0;
  std::vector<AgreementRow> rows;
  HeatTraceFit fit1;
  HeatTraceFit fit2;
  bool pass = false;  // every required row agrees
};

/// Tolerance factor applied to the larger fit uncertainty.
inline constexpr double kAgreementFactor = 3.0;

/// Fits both spectra on the same grid (auto_grid of spec1 unless given).
AgreementReport coefficient_agreement(const Spectrum& spec1, const Spectrum& spec2, double alpha,
                                      int order, std::vector<double> t_grid = {});

/// sum_{i >= 1} i^{-alpha}, alpha > 1.
double zeta(double alpha);

}  // namespace heatcoef
