#pragma once

// Exact evaluation of the heat-invariant coefficients a0, a1, a2 of the Hodge
// Laplacian on p-forms, and of the binomial combination polynomial f/g that
// controls the sign of any linear combination of c1, c2, c3.

#include <cstdint>
#include <optional>

#include "heatcoef/exact.hpp"

namespace heatcoef {

/// C(n, k) with the convention C(n, k) = 0 for n < 0, k < 0 or k > n.
BigInt binom(std::int64_t n, std::int64_t k);

/// Weights of |R|^2, |Ric|^2 and s^2 in the local a2 integrand for p-forms on
/// an m-manifold. Invariant under p -> m - p.
struct PatodiCoefficients {
  std::int64_t p = 0;
  std::int64_t m = 1;
  Rational c1;
  Rational c2;
  Rational c3;
};

/// Throws std::domain_error unless 0 <= p <= m and m >= 1.
PatodiCoefficients patodi_coeffs(std::int64_t p, std::int64_t m);

/// The exact data entering a0, a1, a2.
///
/// `s2_weight`, `ricci0_weight`, `weyl_weight` are the weights of s^2,
/// |Ric0|^2 and |W|^2 once |R|^2 and |Ric|^2 are split along R = S + P + W.
/// The traceless-Ricci weight needs m >= 3 and is empty below that.
struct HeatCoefficientSet {
  std::int64_t p = 0;
  std::int64_t m = 1;
  Rational a0_per_volume;                  // C(m, p)
  Rational a1_scalar_factor;  // multiplies the total scalar curvature
  Rational s2_weight;
  std::optional<Rational> ricci0_weight;
  Rational weyl_weight;
};

/// Requires m >= 2.
HeatCoefficientSet heat_coefficient_set(std::int64_t p, std::int64_t m);

/// (m-2)!/(p!(m-p)!) * [p^2 - m p + m(m-1)/6]. Rejects m < 2 (no value of
/// (m-2)! is assumed at m = 1).
Rational a1_coefficient(std::int64_t p, std::int64_t m);

/// Decomposed s^2 weight 2c1/(m(m-1)) + c2/m + c3.
Rational a2_scalar_weight(const PatodiCoefficients& c);

/// a2 of a space form of sectional curvature k and the given volume
/// (W = 0, Ric0 = 0, s = m(m-1)k).
double a2_constant_curvature(std::int64_t p, std::int64_t m, double k, double volume);

/// f = alpha m(m-1)(m-2)(m-3) + beta (m-2)(m-3) p(m-p) + gamma p(p-1)(m-p)(m-p-1)
/// and g = f - alpha-term. For integer 0 <= p <= m and m >= 4,
///   alpha C(m,p) + beta C(m-2,p-1) + gamma C(m-4,p-2) = (m-4)!/(p!(m-p)!) f.
struct ComboPolynomial {
  Rational f;
  Rational g;
};

ComboPolynomial combo_f(const Rational& p, std::int64_t m, const Rational& alpha,
                        const Rational& beta, const Rational& gamma);

/// (m-4)!/(p!(m-p)!) for integer 0 <= p <= m, m >= 4.
Rational combo_prefactor(std::int64_t p, std::int64_t m);

/// Weights (1/180, -1/12, 1/2) that turn the combination into c1.
struct ComboWeights {
  Rational alpha;
  Rational beta;
  Rational gamma;
};

ComboWeights c1_weights();

}  // namespace heatcoef
