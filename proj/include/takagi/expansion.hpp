#pragma once

// Binary expansions x = sum_k eps_k 2^-k of points in [0, 1).
//
// Three backends: a finite dyadic value, an eventually periodic rational
// (preperiod + primitive period), and a rule-generated gap sequence listing
// the positions of either the 1-digits or the 0-digits. Dyadic points always
// use the expansion that ends in zeros.

#include "takagi/exact.hpp"
#include "takagi/gap_sequence.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace takagi {

/// Which digit a gap sequence lists: a_n are the 1-positions, b_n the 0-positions.
enum class DigitKind { zeros = 0, ones = 1 };

constexpr DigitKind opposite(DigitKind k) {
  return k == DigitKind::ones ? DigitKind::zeros : DigitKind::ones;
}

class ExpansionError : public std::domain_error {
public:
  enum class Kind { out_of_range, overflow, reflect_zero, period_too_long };
  ExpansionError(Kind kind, const std::string& what) : std::domain_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

struct DigitStats {
  std::uint64_t n = 0;
  std::uint64_t ones = 0;   // I_n
  std::uint64_t zeros = 0;  // O_n
  std::int64_t deficiency = 0;  // D_n = O_n - I_n
  Rat density_estimate;         // I_n / n
};

inline constexpr std::uint64_t kDefaultMaxPeriod = std::uint64_t{1} << 24;

class BinaryExpansion {
public:
  struct FiniteDyadic {
    Dyadic value;
  };
  struct RationalPeriodic {
    Rat value;
    std::vector<std::uint8_t> preperiod;
    std::vector<std::uint8_t> period;  // primitive, nonempty
  };
  struct GapRule {
    GapSequencePtr sequence;
    DigitKind marks = DigitKind::ones;
    /// Digits at positions 1..patch.size() overriding the rule.
    std::vector<std::uint8_t> patch;
    std::uint64_t budget = kDefaultBitBudget;
  };
  using Backend = std::variant<FiniteDyadic, RationalPeriodic, GapRule>;

  explicit BinaryExpansion(Backend backend);

  static BinaryExpansion of_rational(const Rat& x, std::uint64_t max_period = kDefaultMaxPeriod);
  static BinaryExpansion of_gaps(GapSequencePtr seq, DigitKind marks = DigitKind::ones,
                                 std::uint64_t budget = kDefaultBitBudget);

  const Backend& backend() const noexcept { return backend_; }
  bool is_finite_dyadic() const { return std::holds_alternative<FiniteDyadic>(backend_); }
  bool is_gap_rule() const { return std::holds_alternative<GapRule>(backend_); }
  /// Exact value, available for the dyadic and periodic backends.
  std::optional<Rat> rational_value() const;

  /// eps_k, k >= 1.
  int digit(std::uint64_t k) const;
  /// sum_{k <= m} eps_k 2^-k
  Dyadic truncate(std::uint64_t m) const;
  /// Largest digit position that may be materialized.
  std::uint64_t budget() const;

  /// Smallest position > after holding digit `which`; nullopt when there is none.
  std::optional<std::uint64_t> next_position(DigitKind which, std::uint64_t after) const;

  /// Short human-readable description.
  std::string describe() const;

private:
  Backend backend_;
};

BinaryExpansion expansion_of_rational(const Rat& x);
int digit(const BinaryExpansion& x, std::uint64_t k);
DigitStats stats(const BinaryExpansion& x, std::uint64_t n);

/// Positions of the first `count` 1-digits (a_n) or 0-digits (b_n).
/// Throws GeneratorExhausted if the expansion has fewer such digits.
std::vector<std::uint64_t> gaps(const BinaryExpansion& x, std::size_t count, DigitKind which);

/// Expansion of 1 - x, for 0 < x < 1.
BinaryExpansion reflect(const BinaryExpansion& x);

struct Pow2Sum {
  BinaryExpansion value;  // x + 2^-p
  std::uint64_t k0 = 0;   // length of the common prefix of x and x + 2^-p
};

/// x + 2^-p. With q the last 0-digit of x at or before p, the result has
/// eps_q flipped to 1, positions q+1..p cleared, and k0 = q - 1.
/// Throws ExpansionError(overflow) when eps_1..eps_p are all 1 (then x + 2^-p >= 1).
Pow2Sum add_pow2(const BinaryExpansion& x, std::uint64_t p);

}  // namespace takagi
