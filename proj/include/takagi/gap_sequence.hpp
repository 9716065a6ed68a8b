#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace takagi {

/// Thrown when a sequence cannot produce a requested term (finite source,
/// or the term is not representable below 2^62).
class GeneratorExhausted : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a digit position beyond the configured bit budget is needed.
class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultBitBudget = std::uint64_t{1} << 20;
/// Largest term value a generator may produce.
inline constexpr std::uint64_t kMaxTerm = std::uint64_t{1} << 62;

/// Strictly increasing positive integers a_1 < a_2 < ..., generated lazily
/// from a term rule and memoized. Shared between expansions via
/// shared_ptr<const GapSequence>; extension is internally synchronized.
class GapSequence {
public:
  /// rule(n, previous) returns a_n given a_1..a_{n-1}, or nullopt when the
  /// term is not representable (> 2^62) or the source has ended.
  using Rule = std::function<std::optional<std::uint64_t>(std::uint64_t n,
                                                          std::span<const std::uint64_t> prev)>;

  GapSequence(std::string kind, Rule rule);
  GapSequence(const GapSequence&) = delete;
  GapSequence& operator=(const GapSequence&) = delete;

  /// Generator identifier with parameters, e.g. "linear:3".
  const std::string& kind() const noexcept { return kind_; }

  /// a_n, 1-based.
  std::uint64_t at(std::uint64_t n) const;
  std::vector<std::uint64_t> prefix(std::size_t count) const;
  /// Number of terms <= pos.
  std::uint64_t count_le(std::uint64_t pos) const;
  bool contains(std::uint64_t pos) const;
  /// Smallest term > pos, if representable.
  std::optional<std::uint64_t> next_after(std::uint64_t pos) const;

private:
  // Extends until the memo has `count` terms or a term > bound exists.
  // Caller holds mu_.
  void extend_locked(std::uint64_t count, std::uint64_t bound) const;

  std::string kind_;
  Rule rule_;
  mutable std::mutex mu_;
  mutable std::vector<std::uint64_t> terms_;
  mutable bool ended_ = false;
};

using GapSequencePtr = std::shared_ptr<const GapSequence>;

/// Sequence from an explicit list of terms (finite; used in tests and for
/// gap prefixes read back from expansions).
GapSequencePtr gap_sequence_from_terms(std::string kind, std::vector<std::uint64_t> terms);

/// Built-in generators, named as in the expansion-spec grammar:
///   linear:K      a_n = K n                    (K >= 2)
///   poly:c0,c1,.. a_n = sum c_i n^i
///   geo:A         a_n = floor(A^n)             (1 < A, A exact decimal)
///   kruppel       a_n = 4^n
///   pow2plus:B    a_n = 2^n + floor(B n)
///   primes        a_n = n-th prime
///   sqrtdrift     a_n = 2n + floor(sqrt n)
///   logdrift      a_n = 2n + floor(log2 n) + 2
///   normalmix     a_1 = 3; a_{n+1} = 2n + 3 floor(sqrt n) if a_n <= 2n + floor(sqrt n),
///                 else a_n + 1
/// Throws std::invalid_argument for unknown names or malformed parameters.
/// Monotonicity violations surface lazily, at the first offending term.
GapSequencePtr builtin_generator(const std::string& name, const std::string& params = "");

}  // namespace takagi
