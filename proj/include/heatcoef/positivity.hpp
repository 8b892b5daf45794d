#pragma once

// Exhaustive exact sign certificates for the coefficient combinations
//   C1:      c1
//   SOLITON: 2 c1/(m-1) + c2/2 + c3
//   KAHLER:  (4n+2)/((n+1)(n+2)) c1 + c2/2 + c3   (m = 2n)
// over finite dimension ranges, together with exact checks of the closed-form
// boundary polynomials and the critical-point analysis of g(p).

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heatcoef/exact.hpp"
#include "heatcoef/patodi.hpp"

namespace heatcoef {

enum class Combo { C1, Soliton, Kahler };

std::string to_string(Combo combo);
Combo parse_combo(const std::string& name);  // "c1" | "soliton" | "kahler"

struct Violation {
  std::int64_t p = 0;
  std::int64_t m = 0;  // n for the Kahler combination
  Rational value;
};

struct BoundaryCheck {
  std::string label;
  Rational closed_form;
  Rational computed;
  bool match = false;
};

struct SignCertificate {
  Combo combo = Combo::C1;
  std::string region;
  std::int64_t checked_bound = 0;
  std::int64_t pairs_checked = 0;
  std::vector<Violation> violations;
  std::vector<BoundaryCheck> boundary_checks;
  std::vector<std::pair<std::int64_t, std::int64_t>> zero_set;  // exact zeros found

  bool valid() const;
};

/// Evenly spread sample of `count` distinct integers in [lo, hi].
std::vector<std::int64_t> sample_dimensions(std::int64_t lo, std::int64_t hi, std::size_t count);

// -- C1 ---------------------------------------------------------------------

/// Checks every 0 <= p <= floor(m/2), 1 <= m <= m_max: c1 == 0 exactly on
/// {(1,15),(2,15),(2,16)}, c1 > 0 for p = 0, (p = 1, m >= 16),
/// (p = 2, m != 15, 16) and p >= 3.
SignCertificate c1_certify(std::int64_t m_max);

// -- SOLITON ----------------------------------------------------------------

/// 2 c1/(m-1) + c2/2 + c3 through the Patodi coefficients. m >= 2.
Rational soliton_combo(std::int64_t p, std::int64_t m);

/// Same quantity as
///   m/(90(m-1)) C(m,p) + (m-3)/(12(m-1)) C(m-2,p-1) - (m-3)/(2(m-1)) C(m-4,p-2).
Rational soliton_combo_closed_form(std::int64_t p, std::int64_t m);

/// (alpha, beta, gamma) = (m/(90(m-1)), (m-3)/(12(m-1)), -(m-3)/(2(m-1))).
ComboWeights soliton_weights(std::int64_t m);

/// Closed forms of f at the boundary points (m >= 4).
Rational soliton_f_at_p2_closed(std::int64_t m);         // (m-2)(m-3)(m^3+14m^2-165m+360)/(90(m-1))
Rational soliton_f_at_half_closed(std::int64_t m);       // m^2(m-2)(m-3)(m-16)/(1440(m-1))
Rational soliton_f_at_p0_closed(std::int64_t m);         // (m-2)(m-3)m^2/90
Rational soliton_f_at_half_minus_closed(std::int64_t m);  // (m-3)[m(m-9)^2+(m-3)^2+36]/1440

/// Positivity on (p=0, m>=2), (p=1, m>=3), (p>=2, 17<=m<=m_max) and
/// (p<m/2, 5<=m<=16), all with p <= floor(m/2). m_max >= 17.
SignCertificate soliton_certify(std::int64_t m_max, std::size_t boundary_samples = 20);

/// Integer minimiser of f(., m, soliton weights) over [2, m-2] and whether it
/// sits at p = 2 or at an integer nearest to m/2.
struct MinimumLocation {
  std::int64_t argmin = 0;
  Rational minimum;
  bool at_boundary = false;
};
MinimumLocation soliton_minimum_location(std::int64_t m);

// -- KAHLER -----------------------------------------------------------------

/// (4n+2)/((n+1)(n+2)) c1 + c2/2 + c3 with c_j = c_j(p, 2n); n >= 2, 0 <= p <= n.
Rational kahler_combo(std::int64_t p, std::int64_t n);

/// Positivity for all 0 <= p <= n, 2 <= n <= n_max.
SignCertificate kahler_certify(std::int64_t n_max, std::size_t boundary_samples = 20);

// -- critical points of g ---------------------------------------------------

struct CriticalReport {
  std::int64_t m = 0;
  Rational beta;
  Rational gamma;
  Rational p1;            // m/2
  Rational discriminant;  // 4 gamma^2 (m^2-2m+2) + 8 gamma beta (m-2)(m-3)
  std::optional<std::pair<double, double>> p23;  // empty when complex
  Rational g2_at_p1;
  std::optional<Rational> g2_at_p23;  // exact 2 gamma (2p-m)^2 = discriminant/(2 gamma)
  std::optional<std::pair<double, double>> g2_at_p23_numeric;
};

/// Requires m >= 4 and gamma != 0.
CriticalReport g_critical_report(std::int64_t m, const Rational& beta, const Rational& gamma);

/// g and its closed-form derivative g'(p) = (2p-m)[2 gamma p^2 - 2 gamma m p +
/// gamma (m-1) - beta (m-2)(m-3)], in floating point for real p.
double g_value(double p, std::int64_t m, double beta, double gamma);
double g_prime_closed(double p, std::int64_t m, double beta, double gamma);

}  // namespace heatcoef
