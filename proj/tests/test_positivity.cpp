#include <doctest.h>

#include <cmath>

#include "heatcoef/positivity.hpp"
#include "oracle.hpp"

using namespace heatcoef;

namespace {

const oracle::Pascal& pascal() {
  static const oracle::Pascal C(2010);
  return C;
}

Rational q(std::int64_t a, std::int64_t b = 1) { return make_rational(a, b); }

Rational soliton_oracle(std::int64_t p, std::int64_t m) {
  const auto c = oracle::coeffs(pascal(), p, m);
  Rational v = 2 * c.c1 / (m - 1) + c.c2 / 2 + c.c3;
  v.canonicalize();
  return v;
}

Rational kahler_oracle(std::int64_t p, std::int64_t n) {
  const auto c = oracle::coeffs(pascal(), p, 2 * n);
  Rational v = Rational(4 * n + 2, (n + 1) * (n + 2)) * c.c1 + c.c2 / 2 + c.c3;
  v.canonicalize();
  return v;
}

struct SolitonWeights {
  Rational alpha, beta, gamma;
};

SolitonWeights weights(std::int64_t m) {
  return {Rational(m, 90 * (m - 1)), Rational(m - 3, 12 * (m - 1)), Rational(-(m - 3), 2 * (m - 1))};
}

}  // namespace

TEST_CASE("c1 certificate to m = 2000") {
  const auto cert = c1_certify(2000);
  CHECK(cert.valid());
  CHECK(cert.violations.empty());
  const std::vector<std::pair<std::int64_t, std::int64_t>> zeros{{1, 15}, {2, 15}, {2, 16}};
  CHECK(cert.zero_set == zeros);
  CHECK(cert.checked_bound == 2000);
  // sum over m of floor(m/2) + 1
  std::int64_t pairs = 0;
  for (std::int64_t m = 1; m <= 2000; ++m) pairs += m / 2 + 1;
  CHECK(cert.pairs_checked == pairs);
}

TEST_CASE("c1 on p = 1 and below m = 15") {
  for (std::int64_t m = 2; m <= 300; ++m) {
    const Rational c = patodi_coeffs(1, m).c1;
    CHECK(c == q(m, 180) - q(1, 12));
    CHECK((c == 0) == (m == 15));
  }
  CHECK(patodi_coeffs(1, 14).c1 == q(-1, 180));
  CHECK(patodi_coeffs(1, 14).c1 < 0);
}

TEST_CASE("c1 sign pattern against the oracle") {
  for (std::int64_t m = 1; m <= 400; ++m) {
    for (std::int64_t p = 0; p <= m / 2; ++p) {
      const auto c = oracle::coeffs(pascal(), p, m).c1;
      const bool zero = (p == 1 && m == 15) || (p == 2 && (m == 15 || m == 16));
      const bool claimed_positive = p == 0 || (p == 1 && m >= 16) || (p == 2 && !zero) || p >= 3;
      if (zero) REQUIRE(c == 0);
      if (claimed_positive) REQUIRE(c > 0);
    }
  }
}

TEST_CASE("soliton combination: both forms agree for p <= m <= 200") {
  for (std::int64_t m = 2; m <= 200; ++m) {
    for (std::int64_t p = 0; p <= m; ++p) {
      const Rational want = soliton_oracle(p, m);
      REQUIRE(soliton_combo(p, m) == want);
      REQUIRE(soliton_combo_closed_form(p, m) == want);
    }
  }
  CHECK_THROWS_AS(soliton_combo(0, 1), std::domain_error);
}

TEST_CASE("soliton f at p = m/2, m = 16 vanishes") {
  const auto w = weights(16);
  CHECK(oracle::f(q(8), 16, w.alpha, w.beta, w.gamma) == 0);
  CHECK(combo_f(q(8), 16, w.alpha, w.beta, w.gamma).f == 0);
  CHECK(soliton_combo(8, 16) == 0);
}

TEST_CASE("soliton boundary polynomials") {
  for (std::int64_t m = 4; m <= 120; ++m) {
    const auto w = weights(m);
    const Rational M(m);
    const Rational at0 = (M - 2) * (M - 3) * M * M / 90;
    const Rational at2 = (M - 2) * (M - 3) / (90 * (M - 1)) * (M * M * M + 14 * M * M - 165 * M + 360);
    const Rational at_half = M * M * (M - 2) * (M - 3) * (M - 16) / (1440 * (M - 1));
    const Rational at_half_minus = (M - 3) * (M * (M - 9) * (M - 9) + (M - 3) * (M - 3) + 36) / 1440;
    CHECK(oracle::f(q(0), m, w.alpha, w.beta, w.gamma) == at0);
    CHECK(oracle::f(q(2), m, w.alpha, w.beta, w.gamma) == at2);
    CHECK(oracle::f(M / 2, m, w.alpha, w.beta, w.gamma) == at_half);
    CHECK(oracle::f((M - 1) / 2, m, w.alpha, w.beta, w.gamma) == at_half_minus);
    CHECK(soliton_f_at_p0_closed(m) == at0);
    CHECK(soliton_f_at_p2_closed(m) == at2);
    CHECK(soliton_f_at_half_closed(m) == at_half);
    CHECK(soliton_f_at_half_minus_closed(m) == at_half_minus);
    if (m >= 5) CHECK(soliton_oracle(0, m) > 0);
  }
}

TEST_CASE("soliton weights") {
  const auto w = soliton_weights(10);
  CHECK(w.alpha == q(10, 810));
  CHECK(w.beta == q(7, 108));
  CHECK(w.gamma == q(-7, 18));
}

TEST_CASE("soliton certificate to m = 2000") {
  const auto cert = soliton_certify(2000);
  CHECK(cert.valid());
  CHECK(cert.violations.empty());
  REQUIRE(cert.boundary_checks.size() >= 6 * 20);
  for (const auto& b : cert.boundary_checks) {
    CAPTURE(b.label);
    CHECK(b.match);
    CHECK(b.closed_form == b.computed);
  }
  CHECK_THROWS_AS(soliton_certify(16), std::domain_error);
}

TEST_CASE("soliton positivity regions against the oracle") {
  for (std::int64_t m = 2; m <= 200; ++m) {
    for (std::int64_t p = 0; p <= m / 2; ++p) {
      const bool claimed = (p == 0) || (p == 1 && m >= 3) || (p >= 2 && m >= 17) ||
                           (2 * p < m && m >= 5 && m <= 16);
      if (claimed) REQUIRE(soliton_oracle(p, m) > 0);
    }
  }
}

TEST_CASE("soliton minimum over [2, m-2] sits at p = 2 or p = m/2, 17 <= m <= 2000") {
  for (std::int64_t m = 17; m <= 2000; ++m) {
    const auto loc = soliton_minimum_location(m);
    REQUIRE(loc.at_boundary);
    REQUIRE(loc.minimum > 0);
  }
  // direct oracle on a smaller range
  for (std::int64_t m = 17; m <= 120; ++m) {
    const auto w = weights(m);
    Rational best = oracle::f(q(2), m, w.alpha, w.beta, w.gamma);
    std::int64_t arg = 2;
    for (std::int64_t p = 3; p <= m - 2; ++p) {
      const Rational v = oracle::f(q(p), m, w.alpha, w.beta, w.gamma);
      if (v < best) {
        best = v;
        arg = p;
      }
    }
    REQUIRE((arg == 2 || arg == m / 2 || arg == (m + 1) / 2));
    REQUIRE(soliton_minimum_location(m).minimum == best);
  }
}

TEST_CASE("Kahler combination") {
  CHECK(kahler_combo(0, 2) == q(17, 1080));
  CHECK(kahler_combo(2, 8) > 0);
  CHECK(patodi_coeffs(2, 16).c1 == 0);
  for (std::int64_t n = 2; n <= 150; ++n) {
    for (std::int64_t p = 0; p <= n; ++p) REQUIRE(kahler_combo(p, n) == kahler_oracle(p, n));
  }
  CHECK_THROWS_AS(kahler_combo(3, 2), std::domain_error);
  CHECK_THROWS_AS(kahler_combo(0, 1), std::domain_error);
}

TEST_CASE("Kahler certificate to n = 1000") {
  const auto cert = kahler_certify(1000);
  CHECK(cert.valid());
  CHECK(cert.violations.empty());
  std::int64_t pairs = 0;
  for (std::int64_t n = 2; n <= 1000; ++n) pairs += n + 1;
  CHECK(cert.pairs_checked == pairs);
  for (const auto& b : cert.boundary_checks) CHECK(b.match);
}

TEST_CASE("combinations are symmetric under p -> m - p") {
  for (std::int64_t m = 2; m <= 120; ++m) {
    for (std::int64_t p = 0; p <= m; ++p) {
      REQUIRE(patodi_coeffs(p, m).c1 == patodi_coeffs(m - p, m).c1);
      REQUIRE(soliton_combo(p, m) == soliton_combo(m - p, m));
      if (m % 2 == 0 && m >= 4) REQUIRE(kahler_oracle(p, m / 2) == kahler_oracle(m - p, m / 2));
    }
  }
}

TEST_CASE("critical points of g for the soliton weights") {
  for (std::int64_t m = 4; m <= 300; ++m) {
    const auto w = weights(m);
    const auto rep = g_critical_report(m, w.beta, w.gamma);
    const Rational M(m);
    CHECK(rep.p1 == M / 2);
    if (m == 4) continue;  // gamma and beta carry (m-3), nonzero from m = 4 on
    CHECK(rep.g2_at_p1 == M * (M - 3) * (2 * M - 1) / (6 * (M - 1)));
    CHECK(rep.discriminant == M * (M - 3) * (M - 3) * (2 * M - 1) / (3 * (M - 1) * (M - 1)));
    CHECK(rep.g2_at_p1 > 0);
    REQUIRE(rep.p23.has_value());
    CHECK(rep.p23->first + rep.p23->second == doctest::Approx(static_cast<double>(m)));
    REQUIRE(rep.g2_at_p23.has_value());
    CHECK(sign(*rep.g2_at_p23) == sign(w.gamma));
    // 2 gamma (2p - m)^2 at the numeric roots
    const double gamma = to_double(w.gamma);
    const double at_root = 2.0 * gamma * std::pow(2.0 * rep.p23->first - m, 2.0);
    CHECK(at_root == doctest::Approx(to_double(*rep.g2_at_p23)).epsilon(1e-9));
  }
}

TEST_CASE("critical report with complex roots and domain errors") {
  // gamma beta < 0 with large beta makes the discriminant negative
  const auto rep = g_critical_report(10, q(-5), q(1, 100));
  CHECK(rep.discriminant < 0);
  CHECK_FALSE(rep.p23.has_value());
  CHECK_FALSE(rep.g2_at_p23.has_value());
  CHECK_THROWS_AS(g_critical_report(10, q(1), q(0)), std::domain_error);
  CHECK_THROWS_AS(g_critical_report(3, q(1), q(1)), std::domain_error);
}

TEST_CASE("finite differences of g match the closed-form derivative") {
  const std::vector<std::tuple<std::int64_t, double, double>> cases{
      {17, 0.3, -0.7}, {40, -1.2, 0.5}, {9, 0.05, 1.5}, {100, 0.47, -0.49}};
  for (const auto& [m, beta, gamma] : cases) {
    for (int i = 0; i < 20; ++i) {
      const double p = -1.0 + (m + 2.0) * (i + 0.37) / 20.0;
      const double h = 1e-4 * std::max(1.0, std::fabs(p));
      // five-point stencil
      const double fd = (-g_value(p + 2 * h, m, beta, gamma) + 8 * g_value(p + h, m, beta, gamma) -
                         8 * g_value(p - h, m, beta, gamma) + g_value(p - 2 * h, m, beta, gamma)) /
                        (12 * h);
      const double exact = g_prime_closed(p, m, beta, gamma);
      const double scale = std::max(std::fabs(exact), 1e-6 * std::fabs(g_value(p, m, beta, gamma)) + 1.0);
      CAPTURE(m);
      CAPTURE(p);
      CHECK(std::fabs(fd - exact) / scale < 1e-8);
    }
  }
}

TEST_CASE("sample_dimensions") {
  const auto s = sample_dimensions(17, 2000, 20);
  CHECK(s.size() == 20);
  CHECK(s.front() == 17);
  CHECK(s.back() == 2000);
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] > s[i - 1]);
  CHECK(sample_dimensions(5, 7, 20).size() == 3);
}

TEST_CASE("combo names round trip") {
  for (auto c : {Combo::C1, Combo::Soliton, Combo::Kahler}) CHECK(parse_combo(to_string(c)) == c);
  CHECK_THROWS_AS(parse_combo("nope"), std::invalid_argument);
}
