#include "heatcoef/curvature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "heatcoef/patodi.hpp"
#include "heatcoef/rng.hpp"

namespace heatcoef {

// -- Sym2Tensor -------------------------------------------------------------

Sym2Tensor::Sym2Tensor(int m) : m_(m), data_(static_cast<std::size_t>(m * m), 0.0) {
  if (m < 1) throw std::domain_error("Sym2Tensor: dimension must be positive");
}

Sym2Tensor::Sym2Tensor(int m, std::vector<double> entries) : m_(m), data_(std::move(entries)) {
  if (m < 1 || data_.size() != static_cast<std::size_t>(m * m)) {
    throw std::invalid_argument("Sym2Tensor: need m*m entries");
  }
  double scale = 0.0;
  for (double v : data_) scale = std::max(scale, std::fabs(v));
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (std::fabs((*this)(i, j) - (*this)(j, i)) > 1e-14 * std::max(scale, 1e-300)) {
        throw std::invalid_argument("Sym2Tensor: entries are not symmetric");
      }
    }
  }
}

Sym2Tensor Sym2Tensor::identity(int m) {
  Sym2Tensor g(m);
  for (int i = 0; i < m; ++i) g.set(i, i, 1.0);
  return g;
}

void Sym2Tensor::set(int i, int j, double v) {
  data_[static_cast<std::size_t>(i * m_ + j)] = v;
  data_[static_cast<std::size_t>(j * m_ + i)] = v;
}

Sym2Tensor& Sym2Tensor::operator+=(const Sym2Tensor& o) {
  if (o.m_ != m_) throw std::invalid_argument("Sym2Tensor: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Sym2Tensor& Sym2Tensor::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

// -- AlgCurvTensor ----------------------------------------------------------

AlgCurvTensor::AlgCurvTensor(int m) : m_(m), data_(static_cast<std::size_t>(m * m * m * m), 0.0) {
  if (m < 1) throw std::domain_error("AlgCurvTensor: dimension must be positive");
}

AlgCurvTensor& AlgCurvTensor::operator+=(const AlgCurvTensor& o) {
  if (o.m_ != m_) throw std::invalid_argument("AlgCurvTensor: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

AlgCurvTensor& AlgCurvTensor::operator-=(const AlgCurvTensor& o) {
  if (o.m_ != m_) throw std::invalid_argument("AlgCurvTensor: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

AlgCurvTensor& AlgCurvTensor::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

namespace {

double max_abs(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::fabs(x));
  return s;
}

}  // namespace

double AlgCurvTensor::symmetry_defect() const {
  const double scale = max_abs(data_);
  if (scale == 0.0) return 0.0;
  const auto& r = *this;
  double worst = 0.0;
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j)
      for (int k = 0; k < m_; ++k)
        for (int l = 0; l < m_; ++l) {
          const double v = r(i, j, k, l);
          worst = std::max({worst, std::fabs(v + r(j, i, k, l)), std::fabs(v + r(i, j, l, k)),
                            std::fabs(v - r(k, l, i, j))});
        }
  return worst / scale;
}

double AlgCurvTensor::bianchi_defect() const {
  const double scale = max_abs(data_);
  if (scale == 0.0) return 0.0;
  const auto& r = *this;
  double worst = 0.0;
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j)
      for (int k = 0; k < m_; ++k)
        for (int l = 0; l < m_; ++l) {
          worst = std::max(worst, std::fabs(r(i, j, k, l) + r(j, k, i, l) + r(k, i, j, l)));
        }
  return worst / scale;
}

// -- operations -------------------------------------------------------------

AlgCurvTensor kulkarni_nomizu(const Sym2Tensor& a, const Sym2Tensor& b) {
  const int m = a.dim();
  if (b.dim() != m) throw std::invalid_argument("kulkarni_nomizu: dimension mismatch");
  AlgCurvTensor out(m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z)
        for (int w = 0; w < m; ++w) {
          out(x, y, z, w) =
              a(x, z) * b(y, w) - a(x, w) * b(y, z) + a(y, w) * b(x, z) - a(y, z) * b(x, w);
        }
  return out;
}

Sym2Tensor inverse_metric(const Sym2Tensor& g) {
  const int m = g.dim();
  Eigen::MatrixXd mat(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) mat(i, j) = g(i, j);
  Eigen::LLT<Eigen::MatrixXd> llt(mat);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("metric is not positive definite");
  }
  const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(m, m));
  Sym2Tensor out(m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) out.set(i, j, 0.5 * (inv(i, j) + inv(j, i)));
  return out;
}

RicciContraction contract_ricci(const AlgCurvTensor& r, const Sym2Tensor& g) {
  const int m = r.dim();
  if (g.dim() != m) throw std::invalid_argument("contract_ricci: dimension mismatch");
  const Sym2Tensor ginv = inverse_metric(g);
  RicciContraction out{Sym2Tensor(m), 0.0};
  for (int y = 0; y < m; ++y)
    for (int w = y; w < m; ++w) {
      double acc = 0.0;
      for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) acc += ginv(i, k) * r(i, y, k, w);
      out.ricci.set(y, w, acc);
    }
  double s = 0.0;
  for (int j = 0; j < m; ++j)
    for (int w = 0; w < m; ++w) s += ginv(j, w) * out.ricci(j, w);
  out.scalar = s;
  return out;
}

double norm2(const AlgCurvTensor& t, const Sym2Tensor& g) {
  const int m = t.dim();
  if (g.dim() != m) throw std::invalid_argument("norm2: dimension mismatch");
  const Sym2Tensor ginv = inverse_metric(g);
  // Raise one slot at a time: up = ginv applied to slot `slot`.
  std::vector<double> cur = t.entries();
  std::vector<double> next(cur.size());
  const auto idx = [m](int i, int j, int k, int l) {
    return static_cast<std::size_t>(((i * m + j) * m + k) * m + l);
  };
  for (int slot = 0; slot < 4; ++slot) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l) {
            int a[4] = {i, j, k, l};
            double acc = 0.0;
            for (int c = 0; c < m; ++c) {
              const int orig = a[slot];
              int b[4] = {a[0], a[1], a[2], a[3]};
              b[slot] = c;
              acc += ginv(orig, c) * cur[idx(b[0], b[1], b[2], b[3])];
            }
            next[idx(i, j, k, l)] = acc;
          }
    std::swap(cur, next);
  }
  double s = 0.0;
  const auto& low = t.entries();
  for (std::size_t i = 0; i < low.size(); ++i) s += low[i] * cur[i];
  return s;
}

double norm2(const Sym2Tensor& t, const Sym2Tensor& g) {
  const int m = t.dim();
  if (g.dim() != m) throw std::invalid_argument("norm2: dimension mismatch");
  const Sym2Tensor ginv = inverse_metric(g);
  double s = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) s += ginv(i, a) * ginv(j, b) * t(i, j) * t(a, b);
  return s;
}

Decomposition decompose(const AlgCurvTensor& r, const Sym2Tensor& g) {
  const int m = r.dim();
  if (m < 3) {
    throw std::domain_error("decompose: the traceless-Ricci part needs m >= 3, got m = " +
                            std::to_string(m));
  }
  auto rc = contract_ricci(r, g);
  Decomposition d;
  d.scalar = rc.scalar;
  d.ricci = rc.ricci;
  d.traceless_ricci = rc.ricci - (rc.scalar / m) * g;
  const double md = static_cast<double>(m);
  d.scalar_part = (rc.scalar / (2.0 * md * (md - 1.0))) * kulkarni_nomizu(g, g);
  d.ricci0_part = (1.0 / (md - 2.0)) * kulkarni_nomizu(d.traceless_ricci, g);
  d.weyl = r - d.scalar_part - d.ricci0_part;
  d.traceless_ricci_norm2 = norm2(d.traceless_ricci, g);
  return d;
}

double max_trace(const AlgCurvTensor& t, const Sym2Tensor& g) {
  const auto rc = contract_ricci(t, g);
  return max_abs(rc.ricci.entries());
}

RandomCurvature random_curvature(int m, std::uint64_t seed, int summands) {
  if (m < 2) throw std::domain_error("random_curvature: need m >= 2");
  if (summands < 1) throw std::domain_error("random_curvature: need at least one summand");
  SplitMix64 rng(seed);
  const auto random_sym = [&] {
    Sym2Tensor a(m);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) a.set(i, j, rng.uniform(-1.0, 1.0));
    return a;
  };

  // g = I + B B^T / m, positive definite.
  std::vector<double> b(static_cast<std::size_t>(m * m));
  for (double& v : b) v = rng.uniform(-1.0, 1.0);
  Sym2Tensor g = Sym2Tensor::identity(m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      double acc = 0.0;
      for (int k = 0; k < m; ++k) acc += b[static_cast<std::size_t>(i * m + k)] * b[static_cast<std::size_t>(j * m + k)];
      g.set(i, j, g(i, j) + acc / m);
    }

  AlgCurvTensor r(m);
  for (int s = 0; s < summands; ++s) {
    const Sym2Tensor a = random_sym();
    const Sym2Tensor c = random_sym();
    r += kulkarni_nomizu(a, c);
  }
  return {std::move(r), std::move(g)};
}

AlgCurvTensor constant_curvature_tensor(const Sym2Tensor& g, double k) {
  return (0.5 * k) * kulkarni_nomizu(g, g);
}

IntegrandPair a2_integrand_consistency(const AlgCurvTensor& r, const Sym2Tensor& g, std::int64_t p) {
  const int m = r.dim();
  const auto d = decompose(r, g);
  const auto c = patodi_coeffs(p, m);
  const auto w = heat_coefficient_set(p, m);

  const double r2 = norm2(r, g);
  const double ric2 = norm2(d.ricci, g);
  const double s2 = d.scalar * d.scalar;
  const double weyl2 = norm2(d.weyl, g);

  IntegrandPair out;
  out.undecomposed = to_double(c.c1) * r2 + to_double(c.c2) * ric2 + to_double(c.c3) * s2;
  out.decomposed = to_double(w.s2_weight) * s2 + to_double(*w.ricci0_weight) * d.traceless_ricci_norm2 +
                   to_double(w.weyl_weight) * weyl2;
  return out;
}

KahlerIntegrandPair kahler_constant_hsc_consistency(std::int64_t n, std::int64_t p, const Rational& c) {
  if (n < 2 || p < 0 || p > 2 * n) {
    throw std::domain_error("kahler_constant_hsc_consistency: need n >= 2, 0 <= p <= 2n");
  }
  const auto cs = patodi_coeffs(p, 2 * n);
  const Rational s(n * (n + 1));  // scalar curvature per unit c
  const Rational s2 = s * s;

  // Ric0 = 0, B = 0: |R^c|^2 = |S^c|^2, |R|^2 = 4|R^c|^2, |Ric|^2 = s^2/m.
  const Rational sc2 = s2 / Rational(2 * n * (n + 1));
  const Rational r2 = 4 * sc2;
  const Rational ric2 = s2 / Rational(2 * n);

  KahlerIntegrandPair out;
  out.c2_coefficient_from_norms = cs.c1 * r2 + cs.c2 * ric2 + cs.c3 * s2;
  out.c2_coefficient_constant_hsc =
      (2 * cs.c1 / Rational(n * (n + 1)) + cs.c2 / Rational(2 * n) + cs.c3) * s2;
  out.c2_coefficient_from_norms.canonicalize();
  out.c2_coefficient_constant_hsc.canonicalize();
  out.value_from_norms = out.c2_coefficient_from_norms * c * c;
  out.value_constant_hsc = out.c2_coefficient_constant_hsc * c * c;
  out.value_from_norms.canonicalize();
  out.value_constant_hsc.canonicalize();
  return out;
}

double IdentityResiduals::worst() const {
  return std::max({orthogonal_sum, scalar_norm, ricci0_norm, ricci_norm, weyl_trace, cross_terms, integrand});
}

IdentityResiduals identity_residuals(int m, std::uint64_t seed) {
  const auto rc = random_curvature(m, seed);
  const auto& g = rc.metric;
  const auto d = decompose(rc.curvature, g);
  const double r2 = norm2(rc.curvature, g);
  const double s2n = norm2(d.scalar_part, g);
  const double p2n = norm2(d.ricci0_part, g);
  const double w2n = norm2(d.weyl, g);
  const double ric2 = norm2(d.ricci, g);
  const double s2 = d.scalar * d.scalar;
  const auto inner = [&](const AlgCurvTensor& a, const AlgCurvTensor& b) {
    return 0.5 * (norm2(a + b, g) - norm2(a, g) - norm2(b, g));
  };

  IdentityResiduals out;
  out.m = m;
  out.seed = seed;
  out.weyl_norm2 = w2n;
  out.orthogonal_sum = std::fabs(r2 - (s2n + p2n + w2n)) / r2;
  out.scalar_norm = std::fabs(s2n - 2.0 * s2 / (m * (m - 1.0))) / r2;
  out.ricci0_norm = std::fabs(p2n - 4.0 * d.traceless_ricci_norm2 / (m - 2.0)) / r2;
  out.ricci_norm = std::fabs(ric2 - d.traceless_ricci_norm2 - s2 / m) / ric2;
  out.weyl_trace = max_trace(d.weyl, g) / std::sqrt(r2);
  out.cross_terms = std::max({std::fabs(inner(d.scalar_part, d.ricci0_part)),
                              std::fabs(inner(d.scalar_part, d.weyl)),
                              std::fabs(inner(d.ricci0_part, d.weyl))}) /
                    r2;
  for (std::int64_t p = 0; p <= m / 2; ++p) {
    const auto ip = a2_integrand_consistency(rc.curvature, g, p);
    const double scale = std::max(std::fabs(ip.undecomposed), std::fabs(ip.decomposed));
    if (scale > 0.0) out.integrand = std::max(out.integrand, std::fabs(ip.undecomposed - ip.decomposed) / scale);
  }
  return out;
}

}  // namespace heatcoef
