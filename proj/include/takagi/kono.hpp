#pragma once

// Kono's split of the forward difference of T at x with step h = 2^-p:
//
//   T(x+h) - T(x) = S1 + S2 + S3
//   S1 = h D_{k0}
//   S2 = [sum_{k>p} 2^-k (1 - e_k - e'_k)] * sum_{n=k0+1}^{p} X_n(x)
//   S3 = 1/2 sum_{n>p} sum_{k>n} [X_n(x) X_k(x) - X_n(x+h) X_k(x+h)] 2^-k
//
// where e, e' are the digits of x and x+h, X_n = 1 - 2 e_n, and k0 is the
// length of their common prefix.

#include "takagi/exact.hpp"
#include "takagi/expansion.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace takagi {

struct KonoSplit {
  Dyadic h;
  std::uint64_t p = 0;
  std::uint64_t k0 = 0;
  Dyadic sigma1;
  /// sum_{k>p} 2^-k (1 - e_k - e'_k)
  Interval sigma2_factor;
  std::optional<Rat> sigma2_factor_exact;
  /// sum_{n=k0+1}^{p} X_n(x)
  std::int64_t middle = 0;
  Interval sigma2;
  Interval sigma3;
  Interval total;
  /// T(x+h) - T(x), evaluated exactly when x is rational.
  std::optional<Rat> reference_delta;

  bool identity_holds() const { return !reference_delta || total.contains(*reference_delta); }
};

inline std::uint64_t default_kono_depth(std::uint64_t p) { return std::max<std::uint64_t>(80, 2 * p); }

/// depth = 0 selects the default max(80, 2p).
KonoSplit kono_split(const BinaryExpansion& x, std::uint64_t p, std::uint64_t depth = 0);

/// sum_{n=k0+1}^{p} X_n(x) by direct summation. Throws std::invalid_argument
/// unless (k0, p) is the carry pattern of x + 2^-p: e_{k0+1} = 0 and
/// e_k = 1 for k0+2 <= k <= p.
std::int64_t middle_sum(const BinaryExpansion& x, std::uint64_t k0, std::uint64_t p);

/// sum_{k>p} 2^-k (1 - e_k - e'_k) for x' = x + 2^-p. Exact (point
/// interval up to 2^-(depth+64) outward rounding) for rational x; otherwise
/// truncated at `depth` with tail radius 2^-depth.
struct Sigma2Factor {
  Interval value;
  std::optional<Rat> exact;
};
Sigma2Factor sigma2_factor(const BinaryExpansion& x, std::uint64_t p, std::uint64_t depth = 0);

struct MaximizerReport {
  std::uint64_t c = 0;
  std::uint64_t mstar = 0;
  /// f(0), f(1), ... up to where the scan stopped.
  std::vector<Dyadic> fvalues;
};

/// f(m) = (1 - 2^-m)(c - m)
Dyadic maximize_objective(std::uint64_t c, std::uint64_t m);

/// Largest maximizer m* of f over m = 0, 1, 2, ... The scan stops once
/// c - m drops below the best value seen, since f(m) <= c - m.
MaximizerReport maximize_f(std::uint64_t c);

}  // namespace takagi
