#include "heatcoef/patodi.hpp"

#include <stdexcept>
#include <string>

namespace heatcoef {

BigInt binom(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= static_cast<unsigned long>(n - k + i);
    mpz_divexact_ui(result.get_mpz_t(), result.get_mpz_t(), static_cast<unsigned long>(i));
  }
  return result;
}

namespace {

void require_pm(std::int64_t p, std::int64_t m, std::int64_t m_min, const char* what) {
  if (m < m_min || p < 0 || p > m) {
    throw std::domain_error(std::string(what) + ": need 0 <= p <= m and m >= " +
                            std::to_string(m_min) + ", got (p, m) = (" + std::to_string(p) +
                            ", " + std::to_string(m) + ")");
  }
}

BigInt factorial(std::int64_t n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

}  // namespace

PatodiCoefficients patodi_coeffs(std::int64_t p, std::int64_t m) {
  require_pm(p, m, 1, "patodi_coeffs");
  const Rational a(binom(m, p));
  const Rational b(binom(m - 2, p - 1));
  const Rational c(binom(m - 4, p - 2));

  PatodiCoefficients out;
  out.p = p;
  out.m = m;
  out.c1 = a / 180 - b / 12 + c / 2;
  out.c2 = -a / 180 + b / 2 - 2 * c;
  out.c3 = a / 72 - b / 6 + c / 2;
  out.c1.canonicalize();
  out.c2.canonicalize();
  out.c3.canonicalize();
  return out;
}

Rational a1_coefficient(std::int64_t p, std::int64_t m) {
  require_pm(p, m, 2, "a1_coefficient");
  const Rational prefactor =
      make_rational(factorial(m - 2), factorial(p) * factorial(m - p));
  Rational bracket = Rational(p * p - m * p) + make_rational(m * (m - 1), 6);
  Rational r = prefactor * bracket;
  r.canonicalize();
  return r;
}

Rational a2_scalar_weight(const PatodiCoefficients& c) {
  const std::int64_t m = c.m;
  if (m < 2) throw std::domain_error("a2_scalar_weight: need m >= 2");
  Rational w = 2 * c.c1 / Rational(m * (m - 1)) + c.c2 / Rational(m) + c.c3;
  w.canonicalize();
  return w;
}

HeatCoefficientSet heat_coefficient_set(std::int64_t p, std::int64_t m) {
  require_pm(p, m, 2, "heat_coefficient_set");
  const auto c = patodi_coeffs(p, m);
  HeatCoefficientSet set;
  set.p = p;
  set.m = m;
  set.a0_per_volume = Rational(binom(m, p));
  set.a1_scalar_factor = a1_coefficient(p, m);
  set.s2_weight = a2_scalar_weight(c);
  if (m >= 3) {
    Rational w = 4 * c.c1 / Rational(m - 2) + c.c2;
    w.canonicalize();
    set.ricci0_weight = w;
  }
  set.weyl_weight = c.c1;
  return set;
}

double a2_constant_curvature(std::int64_t p, std::int64_t m, double k, double volume) {
  require_pm(p, m, 2, "a2_constant_curvature");
  const double weight = to_double(a2_scalar_weight(patodi_coeffs(p, m)));
  const double s = static_cast<double>(m * (m - 1)) * k;
  return weight * s * s * volume;
}

ComboPolynomial combo_f(const Rational& p, std::int64_t m, const Rational& alpha,
                        const Rational& beta, const Rational& gamma) {
  const Rational mq(m);
  const Rational q = mq - p;
  ComboPolynomial out;
  out.g = beta * Rational((m - 2) * (m - 3)) * p * q + gamma * p * (p - 1) * q * (q - 1);
  out.f = alpha * Rational(m * (m - 1) * (m - 2) * (m - 3)) + out.g;
  out.f.canonicalize();
  out.g.canonicalize();
  return out;
}

Rational combo_prefactor(std::int64_t p, std::int64_t m) {
  require_pm(p, m, 4, "combo_prefactor");
  return make_rational(factorial(m - 4), factorial(p) * factorial(m - p));
}

ComboWeights c1_weights() {
  return {make_rational(1, 180), make_rational(-1, 12), make_rational(1, 2)};
}

}  // namespace heatcoef
