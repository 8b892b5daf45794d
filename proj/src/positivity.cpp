#include "heatcoef/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heatcoef {

std::string to_string(Combo combo) {
  switch (combo) {
    case Combo::C1:
      return "c1";
    case Combo::Soliton:
      return "soliton";
    case Combo::Kahler:
      return "kahler";
  }
  return "unknown";
}

Combo parse_combo(const std::string& name) {
  if (name == "c1") return Combo::C1;
  if (name == "soliton") return Combo::Soliton;
  if (name == "kahler") return Combo::Kahler;
  throw std::invalid_argument("unknown combination '" + name + "'");
}

bool SignCertificate::valid() const {
  return violations.empty() &&
         std::all_of(boundary_checks.begin(), boundary_checks.end(),
                     [](const BoundaryCheck& b) { return b.match; });
}

std::vector<std::int64_t> sample_dimensions(std::int64_t lo, std::int64_t hi, std::size_t count) {
  std::vector<std::int64_t> out;
  if (hi < lo || count == 0) return out;
  const auto span = hi - lo;
  if (static_cast<std::uint64_t>(span) + 1 <= count) {
    for (auto m = lo; m <= hi; ++m) out.push_back(m);
    return out;
  }
  for (std::size_t i = 0; i < count; ++i) {
    const auto m = lo + (span * static_cast<std::int64_t>(i) + static_cast<std::int64_t>(count - 1) / 2) /
                            static_cast<std::int64_t>(count - 1);
    if (out.empty() || out.back() != m) out.push_back(m);
  }
  return out;
}

namespace {

// C(m,p), C(m-2,p-1), C(m-4,p-2) for p = 0, 1, 2, ... of a fixed m.
class PatodiRow {
 public:
  explicit PatodiRow(std::int64_t m) : a_(m, 0), b_(m - 2, -1), c_(m - 4, -2) {}

  std::int64_t p() const { return a_.k(); }
  const BigInt& a() const { return a_.value(); }
  const BigInt& b() const { return b_.value(); }
  const BigInt& c() const { return c_.value(); }

  void advance() {
    a_.advance();
    b_.advance();
    c_.advance();
  }

 private:
  BinomialWalk a_;
  BinomialWalk b_;
  BinomialWalk c_;
};

void add_check(SignCertificate& cert, std::string label, const Rational& closed,
               const Rational& computed) {
  cert.boundary_checks.push_back({std::move(label), closed, computed, closed == computed});
}

std::string at_m(const char* what, std::int64_t m) {
  return std::string(what) + " at m=" + std::to_string(m);
}

Rational poly_rational(std::int64_t num, std::int64_t den) { return make_rational(num, den); }

}  // namespace

// -- C1 ---------------------------------------------------------------------

SignCertificate c1_certify(std::int64_t m_max) {
  if (m_max < 1) throw std::domain_error("c1_certify: need m_max >= 1");
  SignCertificate cert;
  cert.combo = Combo::C1;
  cert.checked_bound = m_max;
  cert.region =
      "0<=p<=floor(m/2), 1<=m<=" + std::to_string(m_max) +
      "; zero exactly on {(1,15),(2,15),(2,16)}; positive for p=0, (p=1,m>=16), "
      "(p=2,m!=15,16), p>=3";

  for (std::int64_t m = 1; m <= m_max; ++m) {
    PatodiRow row(m);
    for (std::int64_t p = 0; 2 * p <= m; ++p, row.advance()) {
      // 180 c1 = C(m,p) - 15 C(m-2,p-1) + 90 C(m-4,p-2)
      const BigInt scaled = row.a() - 15 * row.b() + 90 * row.c();
      const int s = sign(scaled);
      ++cert.pairs_checked;

      const bool claimed_zero = (p == 1 && m == 15) || (p == 2 && (m == 15 || m == 16));
      const bool claimed_positive =
          p == 0 || (p == 1 && m >= 16) || (p == 2 && m != 15 && m != 16) || p >= 3;

      if (s == 0) cert.zero_set.emplace_back(p, m);
      const bool bad = (claimed_zero && s != 0) || (claimed_positive && s <= 0) ||
                       (!claimed_zero && !claimed_positive && s == 0);
      if (bad) cert.violations.push_back({p, m, make_rational(scaled, 180)});
    }
  }

  for (auto m : sample_dimensions(2, m_max, 20)) {
    add_check(cert, at_m("c1(0,m) = 1/180", m), make_rational(1, 180), patodi_coeffs(0, m).c1);
    add_check(cert, at_m("c1(1,m) = m/180 - 1/12", m),
              make_rational(m, 180) - make_rational(1, 12), patodi_coeffs(1, m).c1);
  }
  if (m_max >= 14) {
    add_check(cert, "c1(1,14) = -1/180", make_rational(-1, 180), patodi_coeffs(1, 14).c1);
  }
  return cert;
}

// -- SOLITON ----------------------------------------------------------------

Rational soliton_combo(std::int64_t p, std::int64_t m) {
  if (m < 2) throw std::domain_error("soliton_combo: need m >= 2");
  const auto c = patodi_coeffs(p, m);
  Rational v = 2 * c.c1 / Rational(m - 1) + c.c2 / 2 + c.c3;
  v.canonicalize();
  return v;
}

Rational soliton_combo_closed_form(std::int64_t p, std::int64_t m) {
  if (m < 2 || p < 0 || p > m) throw std::domain_error("soliton_combo_closed_form: bad (p, m)");
  const auto w = soliton_weights(m);
  Rational v = w.alpha * Rational(binom(m, p)) + w.beta * Rational(binom(m - 2, p - 1)) +
               w.gamma * Rational(binom(m - 4, p - 2));
  v.canonicalize();
  return v;
}

ComboWeights soliton_weights(std::int64_t m) {
  if (m < 2) throw std::domain_error("soliton_weights: need m >= 2");
  return {make_rational(m, 90 * (m - 1)), make_rational(m - 3, 12 * (m - 1)),
          make_rational(-(m - 3), 2 * (m - 1))};
}

Rational soliton_f_at_p2_closed(std::int64_t m) {
  const Rational cubic(m * m * m + 14 * m * m - 165 * m + 360);
  Rational v = poly_rational((m - 2) * (m - 3), 90 * (m - 1)) * cubic;
  v.canonicalize();
  return v;
}

Rational soliton_f_at_half_closed(std::int64_t m) {
  return poly_rational(m * m * (m - 2) * (m - 3) * (m - 16), 1440 * (m - 1));
}

Rational soliton_f_at_p0_closed(std::int64_t m) {
  return poly_rational((m - 2) * (m - 3) * m * m, 90);
}

Rational soliton_f_at_half_minus_closed(std::int64_t m) {
  return poly_rational((m - 3) * (m * (m - 9) * (m - 9) + (m - 3) * (m - 3) + 36), 1440);
}

SignCertificate soliton_certify(std::int64_t m_max, std::size_t boundary_samples) {
  if (m_max < 17) throw std::domain_error("soliton_certify: need m_max >= 17");
  SignCertificate cert;
  cert.combo = Combo::Soliton;
  cert.checked_bound = m_max;
  cert.region = "p<=floor(m/2) with (p=0,m>=2), (p=1,m>=3), (p>=2,17<=m<=" +
                std::to_string(m_max) + "), (p<m/2,5<=m<=16)";

  for (std::int64_t m = 2; m <= m_max; ++m) {
    PatodiRow row(m);
    for (std::int64_t p = 0; 2 * p <= m; ++p, row.advance()) {
      const bool claimed = p == 0 || (p == 1 && m >= 3) || (p >= 2 && m >= 17) ||
                           (2 * p < m && m >= 5 && m <= 16);
      if (!claimed) continue;
      ++cert.pairs_checked;
      // 360(m-1) * combo = 4m C(m,p) + 30(m-3) C(m-2,p-1) - 180(m-3) C(m-4,p-2)
      const BigInt scaled = 4 * m * row.a() + 30 * (m - 3) * row.b() - 180 * (m - 3) * row.c();
      if (sign(scaled) <= 0) {
        cert.violations.push_back({p, m, make_rational(scaled, BigInt(360 * (m - 1)))});
      }
    }
  }

  for (auto m : sample_dimensions(5, m_max, boundary_samples)) {
    const auto w = soliton_weights(m);
    const auto f_at = [&](const Rational& p) { return combo_f(p, m, w.alpha, w.beta, w.gamma).f; };
    add_check(cert, at_m("f(p=0)", m), soliton_f_at_p0_closed(m), f_at(Rational(0)));
    add_check(cert, at_m("f(p=2)", m), soliton_f_at_p2_closed(m), f_at(Rational(2)));
    add_check(cert, at_m("f(p=m/2)", m), soliton_f_at_half_closed(m), f_at(make_rational(m, 2)));
    add_check(cert, at_m("f(p=(m-1)/2)", m), soliton_f_at_half_minus_closed(m),
              f_at(make_rational(m - 1, 2)));

    const auto crit = g_critical_report(m, w.beta, w.gamma);
    add_check(cert, at_m("g''(m/2) = m(m-3)(2m-1)/(6(m-1))", m),
              make_rational(m * (m - 3) * (2 * m - 1), 6 * (m - 1)), crit.g2_at_p1);
    add_check(cert, at_m("Delta = m(m-3)^2(2m-1)/(3(m-1)^2)", m),
              make_rational(m * (m - 3) * (m - 3) * (2 * m - 1), 3 * (m - 1) * (m - 1)),
              crit.discriminant);
  }
  {
    const auto w = soliton_weights(16);
    add_check(cert, "f(p=m/2) vanishes at m=16", Rational(0),
              combo_f(Rational(8), 16, w.alpha, w.beta, w.gamma).f);
  }
  return cert;
}

MinimumLocation soliton_minimum_location(std::int64_t m) {
  if (m < 6) throw std::domain_error("soliton_minimum_location: need m >= 6");
  const auto w = soliton_weights(m);
  MinimumLocation loc;
  bool first = true;
  for (std::int64_t p = 2; p <= m - 2; ++p) {
    auto f = combo_f(Rational(p), m, w.alpha, w.beta, w.gamma).f;
    if (first || f < loc.minimum) {
      loc.minimum = f;
      loc.argmin = p;
      first = false;
    }
  }
  // p -> m-p symmetry: report the representative at or below m/2.
  if (2 * loc.argmin > m) loc.argmin = m - loc.argmin;
  loc.at_boundary = loc.argmin == 2 || loc.argmin == m / 2;
  return loc;
}

// -- KAHLER -----------------------------------------------------------------

Rational kahler_combo(std::int64_t p, std::int64_t n) {
  if (n < 2 || p < 0 || p > n) throw std::domain_error("kahler_combo: need n >= 2, 0 <= p <= n");
  const auto c = patodi_coeffs(p, 2 * n);
  Rational v = make_rational(4 * n + 2, (n + 1) * (n + 2)) * c.c1 + c.c2 / 2 + c.c3;
  v.canonicalize();
  return v;
}

SignCertificate kahler_certify(std::int64_t n_max, std::size_t boundary_samples) {
  if (n_max < 2) throw std::domain_error("kahler_certify: need n_max >= 2");
  SignCertificate cert;
  cert.combo = Combo::Kahler;
  cert.checked_bound = n_max;
  cert.region = "0<=p<=n, 2<=n<=" + std::to_string(n_max) + " (m = 2n)";

  for (std::int64_t n = 2; n <= n_max; ++n) {
    const std::int64_t m = 2 * n;
    PatodiRow row(m);
    for (std::int64_t p = 0; p <= n; ++p, row.advance()) {
      ++cert.pairs_checked;
      // 360(n+1)(n+2) * combo
      //   = 2(4n+2)(A - 15B + 90C) + (n+1)(n+2)(4A + 30B - 180C)
      const BigInt c1x180 = row.a() - 15 * row.b() + 90 * row.c();
      const BigInt rest = 4 * row.a() + 30 * row.b() - 180 * row.c();
      const BigInt scaled = 2 * (4 * n + 2) * c1x180 + (n + 1) * (n + 2) * rest;
      if (sign(scaled) <= 0) {
        cert.violations.push_back({p, n, make_rational(scaled, BigInt(360 * (n + 1) * (n + 2)))});
      }
    }
  }

  for (auto n : sample_dimensions(2, n_max, boundary_samples)) {
    Rational closed = make_rational(1, 90) + make_rational(2 * n + 1, 90 * (n + 1) * (n + 2));
    closed.canonicalize();
    add_check(cert, "combo(p=0) = 1/90 + (2n+1)/(90(n+1)(n+2)) at n=" + std::to_string(n), closed,
              kahler_combo(0, n));
  }
  if (n_max >= 8) add_check(cert, "c1(2,16) = 0", Rational(0), patodi_coeffs(2, 16).c1);
  return cert;
}

// -- critical points of g ---------------------------------------------------

CriticalReport g_critical_report(std::int64_t m, const Rational& beta, const Rational& gamma) {
  if (m < 4) throw std::domain_error("g_critical_report: need m >= 4");
  if (gamma == 0) throw std::domain_error("g_critical_report: gamma must be nonzero");
  CriticalReport r;
  r.m = m;
  r.beta = beta;
  r.gamma = gamma;
  r.p1 = make_rational(m, 2);

  const Rational mm(m);
  const Rational k23((m - 2) * (m - 3));
  r.discriminant = 4 * gamma * gamma * Rational(m * m - 2 * m + 2) + 8 * gamma * beta * k23;
  r.discriminant.canonicalize();

  // g''(m/2) = 2 Q(m/2), Q(p) = 2 gamma p^2 - 2 gamma m p + gamma (m-1) - beta (m-2)(m-3)
  const Rational half = r.p1;
  Rational q_half = 2 * gamma * half * half - 2 * gamma * mm * half + gamma * Rational(m - 1) -
                    beta * k23;
  r.g2_at_p1 = 2 * q_half;
  r.g2_at_p1.canonicalize();

  if (sign(r.discriminant) > 0) {
    // roots of Q: p = m/2 +- sqrt(disc)/(4 gamma)
    const double root = std::sqrt(to_double(r.discriminant)) / (4.0 * std::fabs(to_double(gamma)));
    const double md = static_cast<double>(m);
    const double p2 = md / 2 - root;
    const double p3 = md / 2 + root;
    r.p23 = std::make_pair(p2, p3);
    // (2p - m)^2 = disc / (4 gamma^2)
    Rational exact = r.discriminant / (2 * gamma);
    exact.canonicalize();
    r.g2_at_p23 = exact;
    const double gd = to_double(gamma);
    r.g2_at_p23_numeric = std::make_pair(2 * gd * (2 * p2 - md) * (2 * p2 - md),
                                         2 * gd * (2 * p3 - md) * (2 * p3 - md));
  }
  return r;
}

double g_value(double p, std::int64_t m, double beta, double gamma) {
  const double md = static_cast<double>(m);
  const double q = md - p;
  return beta * (md - 2) * (md - 3) * p * q + gamma * p * (p - 1) * q * (q - 1);
}

double g_prime_closed(double p, std::int64_t m, double beta, double gamma) {
  const double md = static_cast<double>(m);
  return (2 * p - md) *
         (2 * gamma * p * p - 2 * gamma * md * p + gamma * (md - 1) - beta * (md - 2) * (md - 3));
}

}  // namespace heatcoef
