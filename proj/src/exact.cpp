#include "heatcoef/exact.hpp"

#include <stdexcept>

#include "heatcoef/patodi.hpp"

namespace heatcoef {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  return make_rational(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
}

int sign(const Rational& q) { return sgn(q); }
int sign(const BigInt& z) { return sgn(z); }

std::string to_string(const BigInt& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

BinomialWalk::BinomialWalk(std::int64_t n, std::int64_t k0)
    : n_(n), k_(k0), value_(binom(n, k0)) {}

void BinomialWalk::advance() {
  ++k_;
  if (n_ < 0 || k_ < 0 || k_ > n_) {
    value_ = 0;
    return;
  }
  if (k_ == 0) {
    value_ = 1;
    return;
  }
  // C(n,k) = C(n,k-1) (n-k+1) / k, exact.
  value_ *= static_cast<unsigned long>(n_ - k_ + 1);
  mpz_divexact_ui(value_.get_mpz_t(), value_.get_mpz_t(), static_cast<unsigned long>(k_));
}

}  // namespace heatcoef
