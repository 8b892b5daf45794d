#pragma once

// Dimension pairs on which the a1 bracket p^2 - m p + m(m-1)/6 vanishes, via
// the Pell equation (m+1)^2 - 3 r^2 = 1.

#include <cstdint>
#include <vector>

#include "heatcoef/exact.hpp"

namespace heatcoef {

/// (p, m) in the real case, (q, n) in the Kahler case (m = 2n).
struct DimPair {
  BigInt p;
  BigInt m;

  friend bool operator==(const DimPair&, const DimPair&) = default;
};

struct PellSolution {
  BigInt r;
  BigInt m;
};

/// First `count` positive solutions of (m+1)^2 - 3 r^2 = 1, from (r, m) = (1, 1).
std::vector<PellSolution> pell_solutions(std::size_t count);

/// (p_i, m_i) from (0, 1): p' = m - p, m' = 5m - 6p + 1.
std::vector<DimPair> exceptional_real(std::size_t count);

/// (q_i, n_i) from (1, 3): q' = 8n - 5q + 1, n' = 19n - 12q + 3.
std::vector<DimPair> exceptional_complex(std::size_t count);

/// 6p^2 - 6mp + m(m-1) == 0.
bool is_a1_degenerate(const BigInt& p, const BigInt& m);
bool is_a1_degenerate(std::int64_t p, std::int64_t m);

/// q^2 - 2nq + n(2n-1)/3 == 0, i.e. 3q^2 - 6nq + n(2n-1) == 0.
bool is_kahler_a1_degenerate(const BigInt& q, const BigInt& n);

/// All (p, m) with 1 <= m <= m_max, 0 <= p <= floor(m/2) and a degenerate a1
/// bracket, sorted by m. O(m_max): for each m tests whether m(m+2)/3 is a
/// perfect square r^2 with m - r even.
std::vector<DimPair> brute_force_zero_scan(std::int64_t m_max);

/// The O(m_max^2) double loop over (p, m). Only for small m_max.
std::vector<DimPair> naive_zero_scan(std::int64_t m_max);

/// Prefix of exceptional_real with m_i <= m_max.
std::vector<DimPair> exceptional_real_up_to(std::int64_t m_max);

}  // namespace heatcoef
