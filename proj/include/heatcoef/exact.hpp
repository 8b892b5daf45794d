#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace heatcoef {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Canonical rational from numerator/denominator (reduced, positive denominator).
Rational make_rational(const BigInt& num, const BigInt& den);
Rational make_rational(std::int64_t num, std::int64_t den = 1);

int sign(const Rational& q);
int sign(const BigInt& z);

std::string to_string(const BigInt& z);
std::string to_string(const Rational& q);  // "num/den", or "num" when den == 1

double to_double(const Rational& q);

/// Walks C(n, k) for fixed n and k = k0, k0+1, ... in O(1) big-integer work per
/// step. Negative n or k outside [0, n] give 0.
class BinomialWalk {
 public:
  BinomialWalk(std::int64_t n, std::int64_t k0);

  const BigInt& value() const { return value_; }
  std::int64_t k() const { return k_; }
  void advance();

 private:
  std::int64_t n_;
  std::int64_t k_;
  BigInt value_;
};

}  // namespace heatcoef
