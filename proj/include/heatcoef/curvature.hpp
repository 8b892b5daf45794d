#pragma once

// Pointwise algebra of curvature tensors: Kulkarni-Nomizu products, Ricci and
// scalar contractions, the orthogonal split R = S + P + W and the norm
// identities that turn the a2 integrand into its decomposed form.

#include <cstdint>
#include <utility>
#include <vector>

#include "heatcoef/exact.hpp"

namespace heatcoef {

/// Symmetric bilinear form on R^m, dense row-major storage.
class Sym2Tensor {
 public:
  Sym2Tensor() = default;
  explicit Sym2Tensor(int m);
  /// Symmetrises nothing: throws if `entries` is not symmetric to 1e-14 relative.
  Sym2Tensor(int m, std::vector<double> entries);

  static Sym2Tensor identity(int m);

  int dim() const { return m_; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * m_ + j)]; }
  /// Sets (i,j) and (j,i).
  void set(int i, int j, double v);
  const std::vector<double>& entries() const { return data_; }

  Sym2Tensor& operator+=(const Sym2Tensor& o);
  Sym2Tensor& operator*=(double s);
  friend Sym2Tensor operator+(Sym2Tensor a, const Sym2Tensor& b) { return a += b; }
  friend Sym2Tensor operator-(Sym2Tensor a, const Sym2Tensor& b) { return a += (-1.0 * b); }
  friend Sym2Tensor operator*(double s, Sym2Tensor a) { return a *= s; }

 private:
  int m_ = 0;
  std::vector<double> data_;
};

/// Rank-4 covariant tensor with the symmetries of a curvature tensor,
/// R(x,y,z,w) = -R(y,x,z,w) = -R(x,y,w,z) = R(z,w,x,y), plus first Bianchi.
class AlgCurvTensor {
 public:
  AlgCurvTensor() = default;
  explicit AlgCurvTensor(int m);

  int dim() const { return m_; }
  double operator()(int i, int j, int k, int l) const { return data_[index(i, j, k, l)]; }
  double& operator()(int i, int j, int k, int l) { return data_[index(i, j, k, l)]; }
  const std::vector<double>& entries() const { return data_; }

  AlgCurvTensor& operator+=(const AlgCurvTensor& o);
  AlgCurvTensor& operator-=(const AlgCurvTensor& o);
  AlgCurvTensor& operator*=(double s);
  friend AlgCurvTensor operator+(AlgCurvTensor a, const AlgCurvTensor& b) { return a += b; }
  friend AlgCurvTensor operator-(AlgCurvTensor a, const AlgCurvTensor& b) { return a -= b; }
  friend AlgCurvTensor operator*(double s, AlgCurvTensor a) { return a *= s; }

  /// Largest violation of the pair (anti)symmetries and of first Bianchi,
  /// relative to the largest entry.
  double symmetry_defect() const;
  double bianchi_defect() const;

 private:
  std::size_t index(int i, int j, int k, int l) const {
    return static_cast<std::size_t>(((i * m_ + j) * m_ + k) * m_ + l);
  }

  int m_ = 0;
  std::vector<double> data_;
};

/// A o B (x,y,z,w) = A(x,z)B(y,w) - A(x,w)B(y,z) + A(y,w)B(x,z) - A(y,z)B(x,w).
AlgCurvTensor kulkarni_nomizu(const Sym2Tensor& a, const Sym2Tensor& b);

/// Inverse of a positive-definite metric. Throws std::domain_error if g is not
/// positive definite.
Sym2Tensor inverse_metric(const Sym2Tensor& g);

struct RicciContraction {
  Sym2Tensor ricci;
  double scalar = 0.0;
};

/// Ric(y,w) = g^{ik} R(e_i, y, e_k, w), s = g^{jw} Ric(j, w).
RicciContraction contract_ricci(const AlgCurvTensor& r, const Sym2Tensor& g);

/// Full squared norms with every index raised by g.
double norm2(const AlgCurvTensor& t, const Sym2Tensor& g);
double norm2(const Sym2Tensor& t, const Sym2Tensor& g);

struct Decomposition {
  AlgCurvTensor scalar_part;    // S = s/(2m(m-1)) g o g
  AlgCurvTensor ricci0_part;    // P = Ric0 o g / (m-2)
  AlgCurvTensor weyl;           // W = R - S - P
  Sym2Tensor ricci;
  Sym2Tensor traceless_ricci;   // Ric0 = Ric - (s/m) g
  double scalar = 0.0;
  double traceless_ricci_norm2 = 0.0;
};

/// Requires m >= 3.
Decomposition decompose(const AlgCurvTensor& r, const Sym2Tensor& g);

/// Largest single trace g^{ik} T(e_i, ., e_k, .) entry (the other traces follow
/// from the symmetries).
double max_trace(const AlgCurvTensor& t, const Sym2Tensor& g);

struct RandomCurvature {
  AlgCurvTensor curvature;
  Sym2Tensor metric;
};

/// Deterministic pseudo-random curvature tensor: a sum of `summands`
/// Kulkarni-Nomizu products of random symmetric forms, with a random
/// positive-definite metric. Same (m, seed, summands) gives identical bits.
RandomCurvature random_curvature(int m, std::uint64_t seed, int summands = 4);

/// Space-form tensor (k/2) g o g, sectional curvature k.
AlgCurvTensor constant_curvature_tensor(const Sym2Tensor& g, double k);

struct IntegrandPair {
  double undecomposed = 0.0;  // c1 |R|^2 + c2 |Ric|^2 + c3 s^2
  double decomposed = 0.0;    // s^2, |Ric0|^2, |W|^2 weights
};

/// Both forms of the local a2 integrand for p-forms; m >= 3.
IntegrandPair a2_integrand_consistency(const AlgCurvTensor& r, const Sym2Tensor& g, std::int64_t p);

struct KahlerIntegrandPair {
  Rational c2_coefficient_from_norms;     // c1|R|^2 + c2|Ric|^2 + c3 s^2 via the Kahler norm relations
  Rational c2_coefficient_constant_hsc;   // [2c1/(n(n+1)) + c2/(2n) + c3] (n(n+1))^2
  Rational value_from_norms;              // times c^2
  Rational value_constant_hsc;
};

/// Constant holomorphic sectional curvature c on complex dimension n (m = 2n):
/// Ric0 = 0, B = 0, s = n(n+1)c. One side expands the undecomposed integrand with
/// |R|^2 = 4|R^c|^2, |R^c|^2 = |S^c|^2 = s^2/(2n(n+1)) and |Ric|^2 = s^2/(2n);
/// the other is the bracketed constant-HSC weight. n >= 2, 0 <= p <= 2n.
KahlerIntegrandPair kahler_constant_hsc_consistency(std::int64_t n, std::int64_t p, const Rational& c);

/// Relative residuals of the decomposition identities for one random tensor.
/// Norm identities are scaled by |R|^2 (|Ric|^2 for the Ricci one), traces by |R|.
struct IdentityResiduals {
  int m = 0;
  std::uint64_t seed = 0;
  double orthogonal_sum = 0.0;  // |R|^2 - (|S|^2 + |P|^2 + |W|^2)
  double scalar_norm = 0.0;     // |S|^2 - 2 s^2/(m(m-1))
  double ricci0_norm = 0.0;     // |P|^2 - 4|Ric0|^2/(m-2)
  double ricci_norm = 0.0;      // |Ric|^2 - |Ric0|^2 - s^2/m
  double weyl_trace = 0.0;      // largest single contraction of W
  double cross_terms = 0.0;     // largest of <S,P>, <S,W>, <P,W>
  double integrand = 0.0;       // a2_integrand_consistency, p = 0 .. floor(m/2)
  double weyl_norm2 = 0.0;

  double worst() const;
};

IdentityResiduals identity_residuals(int m, std::uint64_t seed);

}  // namespace heatcoef
