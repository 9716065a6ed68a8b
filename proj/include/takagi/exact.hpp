#pragma once

// Exact arithmetic foundation: dyadic rationals k/2^e, general rationals,
// and intervals with dyadic endpoints. Nothing in here ever rounds except the
// explicitly named outward-rounding helpers.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace takagi {

using BigInt = mpz_class;

/// Number of 1-bits in the binary representation of j.
std::uint64_t bit_count(std::uint64_t j) noexcept;
std::uint64_t bit_count(const BigInt& j);

class Rat;

/// Exact dyadic rational num / 2^exp, kept in canonical form
/// (exp == 0 or num odd), so structural equality is value equality.
class Dyadic {
public:
  Dyadic() = default;
  Dyadic(long v) : num_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Dyadic(BigInt num, std::uint64_t exp = 0);

  /// 2^-e
  static Dyadic pow2_neg(std::uint64_t e);

  const BigInt& num() const noexcept { return num_; }
  std::uint64_t exp() const noexcept { return exp_; }

  bool is_zero() const { return sgn(num_) == 0; }
  int sign() const { return sgn(num_); }

  /// Multiply by 2^k (k may be negative).
  Dyadic ldexp(std::int64_t k) const;

  Rat to_rat() const;
  double to_double() const;
  /// "num/den" with den = 2^exp, or just "num" when exp == 0.
  std::string str() const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a);
  Dyadic& operator+=(const Dyadic& b) { return *this = *this + b; }
  Dyadic& operator-=(const Dyadic& b) { return *this = *this - b; }
  Dyadic& operator*=(const Dyadic& b) { return *this = *this * b; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

private:
  void canonicalize();

  BigInt num_{0};
  std::uint64_t exp_{0};
};

/// Exact rational in lowest terms with positive denominator.
class Rat {
public:
  Rat() = default;
  Rat(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(const BigInt& num, const BigInt& den);
  explicit Rat(mpq_class q);
  Rat(const Dyadic& d);  // NOLINT(google-explicit-constructor)

  /// Parses "p/q", "p" or a finite decimal such as "1.5" exactly.
  static Rat parse(const std::string& text);

  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }
  const mpq_class& mpq() const noexcept { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  /// True when the denominator is a power of two.
  bool is_dyadic() const;
  /// Converts a dyadic-valued rational; throws std::domain_error otherwise.
  Dyadic to_dyadic() const;

  BigInt floor() const;
  double to_double() const { return q_.get_d(); }
  std::string str() const;

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ + b.q_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ - b.q_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ * b.q_)); }
  friend Rat operator/(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }
  Rat& operator+=(const Rat& b) { q_ += b.q_; return *this; }
  Rat& operator-=(const Rat& b) { q_ -= b.q_; return *this; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

private:
  mpq_class q_{0};
};

/// Largest multiple of 2^-bits that is <= r, and smallest that is >= r.
Dyadic floor_dyadic(const Rat& r, std::uint64_t bits);
Dyadic ceil_dyadic(const Rat& r, std::uint64_t bits);

/// Closed interval [lo, hi] with exact dyadic endpoints. Every operation
/// returns an enclosure of the exact real result.
class Interval {
public:
  Interval() = default;
  explicit Interval(Dyadic point) : lo_(point), hi_(std::move(point)) {}
  Interval(Dyadic lo, Dyadic hi);

  /// Tightest enclosure of r with endpoints on the grid 2^-bits.
  static Interval enclose(const Rat& r, std::uint64_t bits);
  static Interval hull(const Dyadic& a, const Dyadic& b);

  const Dyadic& lo() const noexcept { return lo_; }
  const Dyadic& hi() const noexcept { return hi_; }
  Dyadic width() const { return hi_ - lo_; }
  Dyadic midpoint() const { return (lo_ + hi_).ldexp(-1); }
  bool is_point() const { return lo_ == hi_; }

  bool contains(const Rat& r) const;
  bool contains(const Dyadic& d) const { return lo_ <= d && d <= hi_; }
  bool contains(const Interval& other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }
  /// max(|lo|, |hi|)
  Dyadic magnitude() const;

  /// Symmetric widening by r >= 0.
  Interval widen(const Dyadic& r) const;
  Interval scale(const Dyadic& s) const;

  friend Interval operator+(const Interval& a, const Interval& b) {
    return {a.lo_ + b.lo_, a.hi_ + b.hi_};
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return {a.lo_ - b.hi_, a.hi_ - b.lo_};
  }
  friend bool operator==(const Interval&, const Interval&) = default;

  std::string str() const;

private:
  Dyadic lo_;
  Dyadic hi_;
};

}  // namespace takagi
