#pragma once

// Model spectra, the heat trace Z(t) = sum mult * exp(-lambda t) with a
// truncation bound, and least-squares extraction of the small-t coefficients
// of (4 pi t)^{m/2} Z(t) ~ a0 + a1 t + ... + aN t^N.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace heatcoef {

/// Raised when a truncated spectrum cannot resolve the requested t.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the least-squares design is too ill-conditioned to trust.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpectralLevel {
  double eigenvalue = 0.0;
  std::uint64_t multiplicity = 1;

  friend bool operator==(const SpectralLevel&, const SpectralLevel&) = default;
};

/// Truncated p-form spectrum with eigenvalues grouped into levels.
/// Invariants: eigenvalues strictly increasing, multiplicities >= 1, first
/// eigenvalue >= 0.
struct Spectrum {
  int m = 0;
  int p = 0;
  double volume = 0.0;
  std::vector<SpectralLevel> levels;
  std::string label;

  std::uint64_t count() const;
  /// Throws std::invalid_argument naming the broken invariant.
  void validate() const;

  friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

/// Volume of the round m-sphere of sectional curvature k.
double sphere_volume(int m, double k);

/// Functions on the round m-sphere of curvature k: eigenvalues k l(l+m-1),
/// l = 0..max_level, with spherical-harmonic multiplicities.
Spectrum sphere_spectrum(int m, double k, int max_level);

/// Flat torus R^m / prod(L_j Z): eigenvalues 4 pi^2 sum (v_j/L_j)^2 <= cutoff.
Spectrum torus_spectrum(int m, const std::vector<double>& side_lengths, double cutoff);

/// Eigenvalues repeated by multiplicity, ascending. Throws if the expanded
/// list would exceed `max_count` entries.
std::vector<double> flatten(const Spectrum& spec, std::uint64_t max_count = 100'000'000);

/// Groups a sorted list of eigenvalues (equal values merge into one level).
Spectrum from_flat(int m, int p, double volume, const std::vector<double>& sorted_eigenvalues,
                   std::string label);

struct HeatTraceValue {
  double value = 0.0;
  double tail_bound = 0.0;  // bound on the contribution of the levels not stored
};

/// Upper bound on sum over eigenvalues beyond the stored range, assuming the
/// counting function keeps the Weyl growth N(lambda) <= C lambda^{m/2} seen on
/// the last tenth of the stored levels (C inflated by 2).
double heat_trace_tail_bound(const Spectrum& spec, double t);

/// Throws std::domain_error for t <= 0 and TruncationError when the tail
/// bound exceeds 1e-9 of the partial sum.
HeatTraceValue heat_trace(const Spectrum& spec, double t);

struct HeatTraceFit {
  std::vector<double> a_hat;        // a0 .. aN
  std::vector<double> uncertainty;  // residual_rms / t_min^i
  double residual = 0.0;            // RMS of (4 pi t)^{m/2} Z - model over the grid
  std::vector<double> t_grid;
  std::vector<double> rescaled_trace;  // (4 pi t)^{m/2} Z(t)
  std::vector<double> model;
  double condition = 0.0;   // of the column-scaled design matrix
  double tail_bound = 0.0;  // largest relative truncation bound on the grid
};

/// Condition number above which fit_coefficients refuses to return.
inline constexpr double kMaxFitCondition = 1e8;

/// Requires >= 3(N+1) strictly positive grid points, each truncation-safe.
HeatTraceFit fit_coefficients(const Spectrum& spec, int order, const std::vector<double>& t_grid);

/// Geometric grid in [t_max/50, t_max] with t_max = 0.01/lambda_1 (first
/// nonzero eigenvalue); the lower end is raised to the truncation-safe range.
std::vector<double> auto_grid(const Spectrum& spec, int points = 40);

std::vector<double> geometric_grid(double lo, double hi, int points);

/// Smallest t on a geometric scan where heat_trace stays within its tail
/// tolerance.
double min_safe_t(const Spectrum& spec);

/// Estimate of lim lambda_i / i^{2/m}: weighted regression of
/// lambda / i^{2/m} = c + d i^{-1/m} over the upper half of the index range,
/// using each level's middle index. Needs >= 1000 eigenvalues.
double weyl_constant(const Spectrum& spec);

/// 4 pi (Gamma(m/2+1) / (C(m,p) V))^{2/m}, the Weyl limit implied by the a0
/// term of the heat expansion.
double weyl_constant_exact(int m, int p, double volume);

/// Volume recovered from a Weyl-constant estimate.
double volume_from_weyl(int m, int p, double weyl);

}  // namespace heatcoef
