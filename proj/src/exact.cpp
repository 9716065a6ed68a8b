#include "takagi/exact.hpp"

#include <bit>
#include <cctype>
#include <stdexcept>
#include <utility>

namespace takagi {

std::uint64_t bit_count(std::uint64_t j) noexcept { return std::popcount(j); }

std::uint64_t bit_count(const BigInt& j) {
  if (sgn(j) < 0) throw std::domain_error("bit_count: negative argument");
  return mpz_popcount(j.get_mpz_t());
}

// ---------------------------------------------------------------- Dyadic

Dyadic::Dyadic(BigInt num, std::uint64_t exp) : num_(std::move(num)), exp_(exp) {
  canonicalize();
}

Dyadic Dyadic::pow2_neg(std::uint64_t e) { return Dyadic(BigInt(1), e); }

void Dyadic::canonicalize() {
  if (sgn(num_) == 0) {
    exp_ = 0;
    return;
  }
  if (exp_ == 0) return;
  const std::uint64_t tz = mpz_scan1(num_.get_mpz_t(), 0);
  const std::uint64_t shift = std::min(tz, exp_);
  if (shift > 0) {
    mpz_tdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), shift);
    exp_ -= shift;
  }
}

Dyadic Dyadic::ldexp(std::int64_t k) const {
  if (k >= 0) {
    const auto uk = static_cast<std::uint64_t>(k);
    if (uk <= exp_) return Dyadic(num_, exp_ - uk);
    BigInt n;
    mpz_mul_2exp(n.get_mpz_t(), num_.get_mpz_t(), uk - exp_);
    return Dyadic(std::move(n), 0);
  }
  return Dyadic(num_, exp_ + static_cast<std::uint64_t>(-k));
}

namespace {
// Bring both operands to the common exponent max(ea, eb).
std::pair<BigInt, BigInt> aligned(const Dyadic& a, const Dyadic& b) {
  BigInt x = a.num();
  BigInt y = b.num();
  if (a.exp() < b.exp()) {
    mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), b.exp() - a.exp());
  } else if (b.exp() < a.exp()) {
    mpz_mul_2exp(y.get_mpz_t(), y.get_mpz_t(), a.exp() - b.exp());
  }
  return {std::move(x), std::move(y)};
}
}  // namespace

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  auto [x, y] = aligned(a, b);
  return Dyadic(BigInt(x + y), std::max(a.exp_, b.exp_));
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
  auto [x, y] = aligned(a, b);
  return Dyadic(BigInt(x - y), std::max(a.exp_, b.exp_));
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(BigInt(a.num_ * b.num_), a.exp_ + b.exp_);
}

Dyadic operator-(const Dyadic& a) { return Dyadic(BigInt(-a.num_), a.exp_); }

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  auto [x, y] = aligned(a, b);
  const int c = cmp(x, y);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Rat Dyadic::to_rat() const {
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, exp_);
  return Rat(num_, den);
}

double Dyadic::to_double() const {
  // mpq handles huge exponents gracefully (underflows to 0).
  return to_rat().to_double();
}

std::string Dyadic::str() const {
  if (exp_ == 0) return num_.get_str();
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, exp_);
  return num_.get_str() + "/" + den.get_str();
}

// ---------------------------------------------------------------- Rat

Rat::Rat(const BigInt& num, const BigInt& den) : q_(num, den) {
  if (sgn(den) == 0) throw std::domain_error("Rat: zero denominator");
  q_.canonicalize();
}

Rat::Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Rat::Rat(const Dyadic& d) : Rat(d.to_rat()) {}

Rat operator/(const Rat& a, const Rat& b) {
  if (b.is_zero()) throw std::domain_error("Rat: division by zero");
  return Rat(mpq_class(a.q_ / b.q_));
}

Rat Rat::parse(const std::string& text) {
  auto fail = [&] { throw std::invalid_argument("not a rational number: '" + text + "'"); };
  if (text.empty()) fail();
  const auto slash = text.find('/');
  auto parse_int = [&](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) fail();
    for (std::size_t k = i; k < s.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) fail();
    return BigInt(s[0] == '+' ? s.substr(1) : s, 10);
  };
  if (slash != std::string::npos) {
    const BigInt den = parse_int(text.substr(slash + 1));
    if (sgn(den) == 0) fail();
    return Rat(parse_int(text.substr(0, slash)), den);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rat(parse_int(text), BigInt(1));
  const std::string whole = text.substr(0, dot);
  const std::string frac = text.substr(dot + 1);
  if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) fail();
  const bool negative = !whole.empty() && whole[0] == '-';
  const std::string digits = (whole == "-" || whole == "+" || whole.empty() ? "0" : whole);
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
  BigInt w = parse_int(digits);
  BigInt f(frac, 10);
  BigInt n = abs(w) * scale + f;
  if (negative) n = -n;
  return Rat(n, scale);
}

bool Rat::is_dyadic() const {
  const BigInt d = q_.get_den();
  return mpz_popcount(d.get_mpz_t()) == 1;
}

Dyadic Rat::to_dyadic() const {
  if (!is_dyadic()) throw std::domain_error("Rat::to_dyadic: " + str() + " is not dyadic");
  const BigInt d = q_.get_den();
  return Dyadic(q_.get_num(), mpz_sizeinbase(d.get_mpz_t(), 2) - 1);
}

BigInt Rat::floor() const {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

std::string Rat::str() const { return q_.get_str(); }

Dyadic floor_dyadic(const Rat& r, std::uint64_t bits) {
  BigInt n = r.num();
  mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), bits);
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), r.den().get_mpz_t());
  return Dyadic(std::move(q), bits);
}

Dyadic ceil_dyadic(const Rat& r, std::uint64_t bits) {
  BigInt n = r.num();
  mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), bits);
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), r.den().get_mpz_t());
  return Dyadic(std::move(q), bits);
}

// ---------------------------------------------------------------- Interval

Interval::Interval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw std::invalid_argument("Interval: lo > hi");
}

Interval Interval::enclose(const Rat& r, std::uint64_t bits) {
  return {floor_dyadic(r, bits), ceil_dyadic(r, bits)};
}

Interval Interval::hull(const Dyadic& a, const Dyadic& b) {
  return a <= b ? Interval(a, b) : Interval(b, a);
}

bool Interval::contains(const Rat& r) const {
  return lo_.to_rat() <= r && r <= hi_.to_rat();
}

Dyadic Interval::magnitude() const {
  const Dyadic a = lo_.sign() < 0 ? -lo_ : lo_;
  const Dyadic b = hi_.sign() < 0 ? -hi_ : hi_;
  return a < b ? b : a;
}

Interval Interval::widen(const Dyadic& r) const {
  if (r.sign() < 0) throw std::invalid_argument("Interval::widen: negative radius");
  return {lo_ - r, hi_ + r};
}

Interval Interval::scale(const Dyadic& s) const {
  Dyadic a = lo_ * s;
  Dyadic b = hi_ * s;
  return s.sign() >= 0 ? Interval(std::move(a), std::move(b)) : Interval(std::move(b), std::move(a));
}

std::string Interval::str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }

}  // namespace takagi
