#pragma once

// Takagi's function T(x) = sum_{n>=1} 2^-n phi^(n)(x), with phi the tent map
// (2x on [0, 1/2], 2 - 2x on [1/2, 1]).

#include "takagi/exact.hpp"
#include "takagi/expansion.hpp"

#include <cstdint>
#include <vector>

namespace takagi {

/// phi(x) for x in [0, 1].
Rat tent(const Rat& x);
/// phi^(n)(x), phi^(0) = identity.
Rat tent_iterate(const Rat& x, std::uint64_t n);

/// Orbit x, phi(x), phi^2(x), ... up to the first repeated value.
/// points[preperiod_len] is the cycle start and
/// tent(points.back()) == points[preperiod_len].
struct OrbitTrace {
  std::vector<Rat> points;
  std::uint64_t preperiod_len = 0;
  std::uint64_t cycle_len = 0;
};

/// Throws ExpansionError(period_too_long) past max_orbit points.
OrbitTrace tent_orbit(const Rat& x, std::uint64_t max_orbit = kDefaultMaxPeriod);

/// sum_{j < k} s_j, the total number of 1-bits in 0, 1, ..., k-1.
BigInt popcount_prefix_sum(const BigInt& k);

/// T(k / 2^m) = 2^-m sum_{j=0}^{k-1} (m - 2 s_j), exactly. Requires 0 <= k <= 2^m.
Dyadic takagi_dyadic(const BigInt& k, std::uint64_t m);

/// Exact T(x) for rational x in [0, 1]: the tent orbit of x is eventually
/// periodic, so the series splits into a finite head and a geometric tail.
/// Throws ExpansionError(period_too_long) when the orbit is longer than
/// max_orbit points (the period of 1/q can be as long as q - 1).
Rat takagi_rational(const Rat& x, std::uint64_t max_orbit = kDefaultMaxPeriod);

/// sum_{n=1}^{terms} 2^-n phi^(n)(x), exact, for x = r / 2^m.
Dyadic takagi_partial(const BigInt& r, std::uint64_t m, std::uint64_t terms);

/// Rigorous enclosure of T(x): T_N is affine on [x_M, x_M + 2^-M], so its
/// range there is the hull of the two endpoint values; the dropped tail
/// lies in [0, 2^-N]. Width <= N 2^-M + 2^-N. depth = 0 selects M = 2N.
Interval takagi_enclosure(const BinaryExpansion& x, std::uint64_t terms, std::uint64_t depth = 0);

}  // namespace takagi
