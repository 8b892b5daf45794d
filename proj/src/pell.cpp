#include "heatcoef/pell.hpp"

#include <cmath>
#include <stdexcept>

namespace heatcoef {

std::vector<PellSolution> pell_solutions(std::size_t count) {
  std::vector<PellSolution> out;
  out.reserve(count);
  BigInt r = 1;
  BigInt m = 1;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back({r, m});
    // (m + 1 + r sqrt3)(2 + sqrt3)
    BigInt r_next = m + 2 * r + 1;
    BigInt m_next = 2 * m + 3 * r + 1;
    r = std::move(r_next);
    m = std::move(m_next);
  }
  return out;
}

std::vector<DimPair> exceptional_real(std::size_t count) {
  std::vector<DimPair> out;
  out.reserve(count);
  BigInt p = 0;
  BigInt m = 1;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back({p, m});
    BigInt p_next = m - p;
    BigInt m_next = 5 * m - 6 * p + 1;
    p = std::move(p_next);
    m = std::move(m_next);
  }
  return out;
}

std::vector<DimPair> exceptional_complex(std::size_t count) {
  std::vector<DimPair> out;
  out.reserve(count);
  BigInt q = 1;
  BigInt n = 3;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back({q, n});
    BigInt q_next = 8 * n - 5 * q + 1;
    BigInt n_next = 19 * n - 12 * q + 3;
    q = std::move(q_next);
    n = std::move(n_next);
  }
  return out;
}

bool is_a1_degenerate(const BigInt& p, const BigInt& m) {
  const BigInt v = 6 * p * p - 6 * m * p + m * (m - 1);
  return v == 0;
}

bool is_a1_degenerate(std::int64_t p, std::int64_t m) {
  if (m > 1'000'000'000 || m < -1'000'000'000) {
    return is_a1_degenerate(BigInt(static_cast<long>(p)), BigInt(static_cast<long>(m)));
  }
  return 6 * p * p - 6 * m * p + m * (m - 1) == 0;
}

bool is_kahler_a1_degenerate(const BigInt& q, const BigInt& n) {
  const BigInt v = 3 * q * q - 6 * n * q + n * (2 * n - 1);
  return v == 0;
}

namespace {

std::int64_t isqrt(std::int64_t x) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

}  // namespace

std::vector<DimPair> brute_force_zero_scan(std::int64_t m_max) {
  if (m_max < 1) throw std::domain_error("brute_force_zero_scan: need m_max >= 1");
  if (m_max > 1'000'000'000) throw std::domain_error("brute_force_zero_scan: m_max above 1e9");
  std::vector<DimPair> out;
  for (std::int64_t m = 1; m <= m_max; ++m) {
    // p = (m -+ r)/2 with 3 r^2 = m(m+2); the root below m/2 uses the minus sign.
    const std::int64_t prod = m * (m + 2);
    if (prod % 3 != 0) continue;
    const std::int64_t r2 = prod / 3;
    const std::int64_t r = isqrt(r2);
    if (r * r != r2 || (m - r) % 2 != 0) continue;
    const std::int64_t p = (m - r) / 2;
    if (p >= 0 && 2 * p <= m && is_a1_degenerate(p, m)) {
      out.push_back({BigInt(static_cast<long>(p)), BigInt(static_cast<long>(m))});
    }
  }
  return out;
}

std::vector<DimPair> naive_zero_scan(std::int64_t m_max) {
  if (m_max < 1) throw std::domain_error("naive_zero_scan: need m_max >= 1");
  std::vector<DimPair> out;
  for (std::int64_t m = 1; m <= m_max; ++m) {
    for (std::int64_t p = 0; 2 * p <= m; ++p) {
      if (is_a1_degenerate(p, m)) {
        out.push_back({BigInt(static_cast<long>(p)), BigInt(static_cast<long>(m))});
      }
    }
  }
  return out;
}

std::vector<DimPair> exceptional_real_up_to(std::int64_t m_max) {
  std::vector<DimPair> out;
  BigInt p = 0;
  BigInt m = 1;
  while (m <= m_max) {
    out.push_back({p, m});
    BigInt p_next = m - p;
    BigInt m_next = 5 * m - 6 * p + 1;
    p = std::move(p_next);
    m = std::move(m_next);
  }
  return out;
}

}  // namespace heatcoef
