#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>

#include "heatcoef/curvature.hpp"
#include "heatcoef/patodi.hpp"
#include "heatcoef/rng.hpp"

using namespace heatcoef;

namespace {

Sym2Tensor random_sym(int m, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Sym2Tensor a(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) a.set(i, j, rng.uniform(-1.0, 1.0));
  }
  return a;
}

Eigen::MatrixXd inverse_oracle(const Sym2Tensor& g) {
  const int m = g.dim();
  Eigen::MatrixXd a(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) a(i, j) = g(i, j);
  }
  return a.inverse();
}

/// Full contraction with every index raised, written as the eight-fold sum.
double norm2_oracle(const AlgCurvTensor& t, const Sym2Tensor& g) {
  const int m = g.dim();
  const auto gi = inverse_oracle(g);
  double sum = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
              for (int c = 0; c < m; ++c)
                for (int d = 0; d < m; ++d)
                  sum += gi(i, a) * gi(j, b) * gi(k, c) * gi(l, d) * t(i, j, k, l) * t(a, b, c, d);
  return sum;
}

double max_abs(const AlgCurvTensor& t) {
  double v = 0.0;
  for (double x : t.entries()) v = std::max(v, std::fabs(x));
  return v;
}

double rel_diff(const AlgCurvTensor& a, const AlgCurvTensor& b) {
  return max_abs(a - b) / std::max(max_abs(a), max_abs(b));
}

}  // namespace

TEST_CASE("Kulkarni-Nomizu product") {
  const auto g = Sym2Tensor::identity(2);
  const auto gg = kulkarni_nomizu(g, g);
  CHECK(gg(0, 1, 0, 1) == 2.0);
  CHECK(gg(0, 1, 1, 0) == -2.0);
  CHECK(gg(0, 0, 0, 0) == 0.0);
  for (int m = 2; m <= 6; ++m) {
    const auto a = random_sym(m, 10 + m);
    const auto b = random_sym(m, 20 + m);
    const auto ab = kulkarni_nomizu(a, b);
    CHECK(rel_diff(ab, kulkarni_nomizu(b, a)) < 1e-15);
    CHECK(ab.symmetry_defect() < 1e-14);
    CHECK(ab.bianchi_defect() < 1e-12);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l) {
            const double want = a(i, k) * b(j, l) - a(i, l) * b(j, k) + a(j, l) * b(i, k) - a(j, k) * b(i, l);
            REQUIRE(ab(i, j, k, l) == doctest::Approx(want).epsilon(1e-14));
            REQUIRE(std::fabs(ab(i, j, k, l) + ab(j, i, k, l)) < 1e-15);
          }
  }
  CHECK_THROWS(kulkarni_nomizu(Sym2Tensor::identity(2), Sym2Tensor::identity(3)));
}

TEST_CASE("Sym2Tensor rejects asymmetric entries") {
  CHECK_THROWS_AS(Sym2Tensor(2, {1.0, 2.0, 3.0, 1.0}), std::invalid_argument);
  CHECK_NOTHROW(Sym2Tensor(2, {1.0, 2.0, 2.0, 1.0}));
}

TEST_CASE("inverse metric") {
  CHECK_THROWS_AS(inverse_metric(Sym2Tensor(2, {1.0, 2.0, 2.0, 1.0})), std::domain_error);
  const auto rc = random_curvature(5, 3);
  const auto gi = inverse_metric(rc.metric);
  const auto oracle = inverse_oracle(rc.metric);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(gi(i, j) == doctest::Approx(oracle(i, j)).epsilon(1e-12));
}

TEST_CASE("Ricci contraction") {
  for (int m = 2; m <= 7; ++m) {
    const auto rc = random_curvature(m, 100 + m);
    const auto& g = rc.metric;
    const double k = 0.37;
    const auto cc = contract_ricci(constant_curvature_tensor(g, k), g);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) CHECK(cc.ricci(i, j) == doctest::Approx((m - 1) * k * g(i, j)).epsilon(1e-12));
    CHECK(cc.scalar == doctest::Approx(m * (m - 1) * k).epsilon(1e-12));

    const auto gi = inverse_oracle(g);
    const auto ric = contract_ricci(rc.curvature, g);
    double trace = 0.0;
    for (int y = 0; y < m; ++y)
      for (int w = 0; w < m; ++w) {
        double want = 0.0;
        for (int i = 0; i < m; ++i)
          for (int kk = 0; kk < m; ++kk) want += gi(i, kk) * rc.curvature(i, y, kk, w);
        CHECK(ric.ricci(y, w) == doctest::Approx(want).epsilon(1e-11));
        trace += gi(y, w) * ric.ricci(y, w);
      }
    CHECK(trace == doctest::Approx(ric.scalar).epsilon(1e-11));

    const auto scaled = contract_ricci(2.5 * rc.curvature, g);
    CHECK(scaled.scalar == doctest::Approx(2.5 * ric.scalar).epsilon(1e-12));
  }
}

TEST_CASE("norm2 agrees with the eight-fold sum") {
  for (int m = 2; m <= 4; ++m) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto rc = random_curvature(m, seed);
      const double n = norm2(rc.curvature, rc.metric);
      CHECK(n >= 0.0);
      CHECK(n == doctest::Approx(norm2_oracle(rc.curvature, rc.metric)).epsilon(1e-11));
    }
  }
}

TEST_CASE("decomposition of space forms and Einstein tensors") {
  for (int m = 3; m <= 7; ++m) {
    const auto rc = random_curvature(m, 500 + m);
    const auto& g = rc.metric;
    const auto cc = constant_curvature_tensor(g, -0.8);
    const auto d = decompose(cc, g);
    const double scale = std::sqrt(norm2(cc, g));
    CHECK(std::sqrt(norm2(d.ricci0_part, g)) / scale < 1e-12);
    CHECK(std::sqrt(norm2(d.weyl, g)) / scale < 1e-12);

    // Dropping P from a random tensor leaves an Einstein tensor.
    const auto full = decompose(rc.curvature, g);
    const auto einstein = full.scalar_part + full.weyl;
    const auto de = decompose(einstein, g);
    CHECK(std::sqrt(norm2(de.ricci0_part, g)) / std::sqrt(norm2(einstein, g)) < 1e-12);
    CHECK(de.traceless_ricci_norm2 / norm2(einstein, g) < 1e-20);

    // S + P + W reassembles R
    CHECK(rel_diff(full.scalar_part + full.ricci0_part + full.weyl, rc.curvature) < 1e-12);
  }
  CHECK_THROWS_AS(decompose(random_curvature(2, 1).curvature, random_curvature(2, 1).metric), std::domain_error);
}

TEST_CASE("identity residuals below 1e-10 for m = 3..8 and 100 seeds") {
  for (int m = 3; m <= 8; ++m) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto r = identity_residuals(m, seed);
      CAPTURE(m);
      CAPTURE(seed);
      REQUIRE(r.orthogonal_sum < 1e-10);
      REQUIRE(r.scalar_norm < 1e-10);
      REQUIRE(r.ricci0_norm < 1e-10);
      REQUIRE(r.ricci_norm < 1e-10);
      REQUIRE(r.weyl_trace < 1e-10);
      REQUIRE(r.cross_terms < 1e-10);
      REQUIRE(r.integrand < 1e-10);
    }
  }
}

TEST_CASE("random curvature is deterministic and has Weyl part from m = 4") {
  const auto a = random_curvature(5, 77);
  const auto b = random_curvature(5, 77);
  CHECK(a.curvature.entries() == b.curvature.entries());
  CHECK(a.metric.entries() == b.metric.entries());
  CHECK(random_curvature(5, 78).curvature.entries() != a.curvature.entries());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rc = random_curvature(4, seed, 3);
    CHECK(rc.curvature.bianchi_defect() < 1e-12);
    const auto d = decompose(rc.curvature, rc.metric);
    CHECK(norm2(d.weyl, rc.metric) / norm2(rc.curvature, rc.metric) > 1e-6);
  }
  // In dimension 3 the Weyl part vanishes identically.
  const auto rc3 = random_curvature(3, 9);
  const auto d3 = decompose(rc3.curvature, rc3.metric);
  CHECK(norm2(d3.weyl, rc3.metric) / norm2(rc3.curvature, rc3.metric) < 1e-20);
}

TEST_CASE("a2 integrand consistency") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rc = random_curvature(5, seed);
    for (std::int64_t p = 0; p <= 2; ++p) {
      const auto ip = a2_integrand_consistency(rc.curvature, rc.metric, p);
      CHECK(std::fabs(ip.undecomposed - ip.decomposed) <= 1e-10 * std::fabs(ip.undecomposed));
    }
  }
  const auto g = Sym2Tensor::identity(4);
  const auto flat = a2_integrand_consistency(AlgCurvTensor(4), g, 1);
  CHECK(flat.undecomposed == 0.0);
  CHECK(flat.decomposed == 0.0);

  for (int m = 3; m <= 8; ++m) {
    const double k = 1.3;
    const double s = m * (m - 1) * k;
    for (std::int64_t p = 0; p <= m; ++p) {
      const auto ip = a2_integrand_consistency(constant_curvature_tensor(Sym2Tensor::identity(m), k),
                                               Sym2Tensor::identity(m), p);
      const double want = to_double(heat_coefficient_set(p, m).s2_weight) * s * s;
      CHECK(ip.undecomposed == doctest::Approx(want).epsilon(1e-12));
      CHECK(ip.decomposed == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("Kahler constant-HSC consistency is exact for n <= 50") {
  for (std::int64_t n = 2; n <= 50; ++n) {
    for (std::int64_t p = 0; p <= 2 * n; ++p) {
      const auto k = kahler_constant_hsc_consistency(n, p, make_rational(1));
      REQUIRE(k.c2_coefficient_from_norms == k.c2_coefficient_constant_hsc);
      REQUIRE(k.value_from_norms == k.value_constant_hsc);
    }
  }
  const auto zero = kahler_constant_hsc_consistency(4, 3, make_rational(0));
  CHECK(zero.value_from_norms == 0);
  CHECK(zero.value_constant_hsc == 0);
  const auto one = kahler_constant_hsc_consistency(6, 5, make_rational(2, 3));
  const auto scaled = kahler_constant_hsc_consistency(6, 5, make_rational(-10, 3));
  CHECK(scaled.value_from_norms == one.value_from_norms * 25);
  CHECK(scaled.value_constant_hsc == one.value_constant_hsc * 25);
  CHECK_THROWS_AS(kahler_constant_hsc_consistency(1, 0, make_rational(1)), std::domain_error);
  CHECK_THROWS_AS(kahler_constant_hsc_consistency(3, 7, make_rational(1)), std::domain_error);
}
