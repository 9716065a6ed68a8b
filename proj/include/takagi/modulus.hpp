#pragma once

// Scaled difference quotients (T(x+h) - T(x)) / (h log2(1/|h|)) and the
// digit-density diagnostics that govern their limit.

#include "takagi/exact.hpp"
#include "takagi/expansion.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace takagi {

enum class DensityCase { a, b, c, irregular, undetermined };
std::string to_string(DensityCase c);

/// Finite-horizon thresholds for density_estimate.
struct DensityThresholds {
  double drift = 0.05;          // |d1(n) - d1(n/2)| above this: no density
  double extreme = 0.01;        // d1 within this of 0 or 1 counts as extreme
  double ratio_regular = 1.25;  // max gap ratio in window at or below: ratio -> 1
  double ratio_irregular = 1.5; // at or above: ratio does not tend to 1
};

struct DensityReport {
  std::uint64_t n = 0;
  Rat d1_estimate;  // I_n / n, exact
  DensityCase regular_case = DensityCase::undetermined;
  /// Largest ratio of consecutive 1-positions (case b) or 0-positions (case c)
  /// in the second half of the prefix; 0 when not computed.
  double window_gap_ratio = 0.0;
  std::string note;
};

DensityReport density_estimate(const BinaryExpansion& x, std::uint64_t n,
                               DensityThresholds thresholds = {});

/// Denominator convention: h log2(1/|h|) or |h| log2(1/|h|).
enum class Denominator { signed_h, abs_h };

/// T(x+h) - T(x), exact; negative h goes through T(1-x+|h|) - T(1-x).
Rat modulus_delta(const Rat& x, const Dyadic& h);

/// (T(x+h) - T(x)) / (h log2(1/|h|)) with exact numerator. Requires
/// 0 < x + h < 1, h != 0, |h| < 1.
double scaled_quotient(const Rat& x, const Dyadic& h, Denominator mode = Denominator::signed_h);
/// The same ratio with the log factor left out: (T(x+h) - T(x)) / h, exactly.
Rat difference_quotient(const Rat& x, const Dyadic& h);

enum class Schedule { plain, zeros, kono_window };
std::string to_string(Schedule s);

struct ModulusPoint {
  std::uint64_t index = 0;  // j (plain) or n (zeros, kono_window)
  std::uint64_t p = 0;      // |h| = 2^-p
  int sign = 1;
  Dyadic h;
  double ratio = 0.0;
  std::optional<Rat> delta_exact;
  std::optional<Interval> delta_enclosure;
  /// enclosure width / |delta midpoint|; 0 for exact points
  double relative_width = 0.0;
  bool flagged = false;
};

struct ModulusTrace {
  Schedule schedule = Schedule::plain;
  Denominator denominator = Denominator::signed_h;
  std::vector<ModulusPoint> points;
  std::optional<double> predicted_limit;
};

struct ModulusRequest {
  Schedule schedule = Schedule::plain;
  /// j values (plain) or n values (zeros, kono_window)
  std::vector<std::uint64_t> indices;
  /// signs of h for the plain schedule
  std::vector<int> signs{1};
  Denominator denominator = Denominator::signed_h;
  /// points whose enclosure width exceeds this fraction of |delta| are flagged
  double max_relative_width = 1e-6;
};

ModulusTrace modulus_experiment(const BinaryExpansion& x, const ModulusRequest& request);

/// d0(x) - d1(x) when it is known exactly (rational x) or diagnosed regular.
std::optional<double> predicted_modulus_limit(const BinaryExpansion& x, std::uint64_t horizon = 4096);

}  // namespace takagi
