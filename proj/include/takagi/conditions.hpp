#pragma once

// Condition sequences for one-sided infinite derivatives of T at a
// non-dyadic x with 1-positions a_n and 0-positions b_n:
//
//   T'_+(x) = +inf  iff  a_n - 2n -> +inf
//   T'_-(x) = +inf  iff  a_{n+1} - 2a_n + 2n - log2(a_{n+1} - a_n) -> -inf
//   T'_+(x) = -inf  iff  the same expression in b_n -> -inf
//   T'_-(x) = -inf  iff  b_n - 2n -> +inf
//
// plus the Kruppel counterexample slopes and finite-horizon diagnostics.

#include "takagi/exact.hpp"
#include "takagi/expansion.hpp"
#include "takagi/gap_sequence.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace takagi {

struct ConditionSample {
  std::uint64_t n = 0;
  std::uint64_t a_n = 0;
  std::uint64_t a_next = 0;
  std::uint64_t gap = 0;
  std::int64_t begle_ayres = 0;  // a_n - 2n
  /// a_{n+1} - 2 a_n + 2n, exact
  std::int64_t exact_part = 0;
  /// log2(a_{n+1} - a_n); the only rounded quantity (abs error < 1e-12)
  double log_gap = 0.0;
  double c_n = 0.0;
  Rat ratio;  // a_{n+1} / a_n
};

std::vector<ConditionSample> condition_sequence(const GapSequence& g, std::uint64_t count);
/// Same, for the 1-positions (or 0-positions) of an expansion.
std::vector<ConditionSample> condition_sequence(const BinaryExpansion& x, DigitKind which,
                                                std::uint64_t count);
std::vector<std::int64_t> begle_ayres_sequence(const GapSequence& g, std::uint64_t count);
std::vector<std::int64_t> begle_ayres_sequence(const BinaryExpansion& x, DigitKind which,
                                               std::uint64_t count);

struct SufficientReport {
  double ratio_limsup_est = 0.0;    // max a_{n+1}/a_n over the last half of the samples
  double density_liminf_est = 0.0;  // min a_n / n over the same window
  double epsilon = 0.0;             // min(1, 2 - ratio_limsup_est)
  bool satisfied_empirically = false;
};

/// Windowed check of  limsup a_{n+1}/a_n = 2 - eps  and  liminf a_n/n > 2/eps.
SufficientReport sufficient_check(const GapSequence& g, std::uint64_t count);

enum class Trend { diverges_minus, diverges_plus, bounded, inconclusive };
std::string to_string(Trend t);

struct TrendThresholds {
  double slope = 0.05;  // theta
  double bound = 10.0;  // B
};

struct TrendReport {
  Trend verdict = Trend::inconclusive;
  std::uint64_t horizon = 0;
  double window_slope = 0.0;
  std::vector<double> last_values;
};

/// Finite-horizon heuristic over the last `window` samples: least-squares
/// slope s, last value v, range r.
///   diverges_minus  s < -theta and v < -B
///   diverges_plus   s > theta and v > B
///   bounded         r <= B and |s| <= theta
///   inconclusive    otherwise
TrendReport classify_trend(const std::vector<double>& samples, std::uint64_t window,
                           TrendThresholds thresholds = {});

/// 2^m [T((k+1)/2^m) - T((k-2)/2^m)] for x = sum_n 2^-(4^n), m = a_{n+1} - 1
/// and k/2^m < x < (k+1)/2^m, computed from the dyadic formula.
/// Throws BudgetExceeded if m exceeds bit_budget.
Rat kruppel_window_slope(std::uint64_t n, std::uint64_t bit_budget = kDefaultBitBudget);
/// The closed form 4 a_n - a_{n+1} - 6n + 7 for a_n = 4^n.
std::int64_t kruppel_window_closed_form(std::uint64_t n);

/// 2^m [T((k+1)/2^m) - T(k/2^m)] for the k with k/2^m < x < (k+1)/2^m.
/// Throws std::invalid_argument when x = k/2^m (dyadic x at or past its
/// last 1-digit).
BigInt dyadic_interval_slope(const BinaryExpansion& x, std::uint64_t m);

}  // namespace takagi
