#include "takagi/takagi.hpp"

#include "wide_int.hpp"

#include <stdexcept>

namespace takagi {

namespace {

void require_unit(const Rat& x, const char* who) {
  if (x.sign() < 0 || x > Rat(1)) {
    throw std::domain_error(std::string(who) + ": x must lie in [0, 1], got " + x.str());
  }
}

// Orbit of r/q under the tent map with the denominator held fixed, so the
// numerators r_n in [0, q] identify the points.
template <class Int>
Int tent_step(const Int& y, const Int& q) {
  const Int twice = y + y;
  return twice <= q ? twice : Int(q + q - twice);
}

struct Cycle {
  std::uint64_t mu = 0;      // index of the cycle start
  std::uint64_t lambda = 0;  // cycle length
};

[[noreturn]] void orbit_too_long(std::uint64_t max_orbit) {
  throw ExpansionError(ExpansionError::Kind::period_too_long,
                       "tent orbit longer than " + std::to_string(max_orbit) + " points");
}

// Brent's cycle detection.
template <class Int>
Cycle find_cycle(const Int& start, const Int& q, std::uint64_t max_orbit) {
  std::uint64_t power = 1, lambda = 1;
  Int tortoise = start;
  Int hare = tent_step(start, q);
  while (tortoise != hare) {
    if (power == lambda) {
      tortoise = hare;
      power *= 2;
      lambda = 0;
    }
    hare = tent_step(hare, q);
    if (++lambda > max_orbit) orbit_too_long(max_orbit);
  }
  Cycle c;
  c.lambda = lambda;
  tortoise = start;
  hare = start;
  for (std::uint64_t i = 0; i < lambda; ++i) hare = tent_step(hare, q);
  while (tortoise != hare) {
    tortoise = tent_step(tortoise, q);
    hare = tent_step(hare, q);
    if (++c.mu + c.lambda > max_orbit) orbit_too_long(max_orbit);
  }
  return c;
}

template <class Int>
Rat takagi_from_orbit(const Int& start, const Int& q_fixed, const BigInt& q, std::uint64_t max_orbit) {
  // S = sum_{n>=0} 2^-n r_n / q
  //   = [P (2^lambda - 1) + C] / (q 2^mu (2^lambda - 1)),
  // P = sum_{n<mu} r_n 2^(mu-n),  C = sum_{mu<=n<mu+lambda} r_n 2^(mu+lambda-n).
  // T(x) = S - r_0 / q.
  const Cycle c = find_cycle(start, q_fixed, max_orbit);
  BigInt pre = 0, cyc = 0;
  Int y = start;
  for (std::uint64_t n = 0; n < c.mu + c.lambda; ++n) {
    BigInt& acc = n < c.mu ? pre : cyc;
    acc += detail::as_mpz(y);
    acc <<= 1;
    y = tent_step(y, q_fixed);
  }
  const BigInt geo = (BigInt(1) << static_cast<mp_bitcnt_t>(c.lambda)) - 1;
  const BigInt num = pre * geo + cyc;
  const BigInt den = q * geo << static_cast<mp_bitcnt_t>(c.mu);
  return Rat(num, den) - Rat(detail::as_mpz(start), q);
}

}  // namespace

Rat tent(const Rat& x) {
  require_unit(x, "tent");
  static const Rat half(BigInt(1), BigInt(2));
  return x <= half ? Rat(2) * x : Rat(2) - Rat(2) * x;
}

Rat tent_iterate(const Rat& x, std::uint64_t n) {
  require_unit(x, "tent_iterate");
  Rat y = x;
  for (std::uint64_t i = 0; i < n; ++i) y = tent(y);
  return y;
}

OrbitTrace tent_orbit(const Rat& x, std::uint64_t max_orbit) {
  require_unit(x, "tent_orbit");
  const BigInt q = x.den();
  const Cycle c = find_cycle(x.num(), q, max_orbit);
  OrbitTrace trace;
  trace.preperiod_len = c.mu;
  trace.cycle_len = c.lambda;
  trace.points.reserve(c.mu + c.lambda);
  BigInt y = x.num();
  for (std::uint64_t n = 0; n < c.mu + c.lambda; ++n) {
    trace.points.emplace_back(y, q);
    y = tent_step(y, q);
  }
  return trace;
}

BigInt popcount_prefix_sum(const BigInt& k) {
  if (sgn(k) < 0) throw std::domain_error("popcount_prefix_sum: negative argument");
  // k = 2^t + rest: the block [0, 2^t) holds t 2^(t-1) ones and each of
  // 2^t .. k-1 has the top bit plus the bits of j - 2^t.
  BigInt total = 0;
  BigInt rest = k;
  while (sgn(rest) > 0) {
    const std::uint64_t t = mpz_sizeinbase(rest.get_mpz_t(), 2) - 1;
    mpz_clrbit(rest.get_mpz_t(), t);
    if (t > 0) total += BigInt(static_cast<unsigned long>(t)) << static_cast<mp_bitcnt_t>(t - 1);
    total += rest;
  }
  return total;
}

Dyadic takagi_dyadic(const BigInt& k, std::uint64_t m) {
  if (sgn(k) < 0 || mpz_sizeinbase(k.get_mpz_t(), 2) > m + 1 ||
      k > (BigInt(1) << static_cast<mp_bitcnt_t>(m))) {
    throw std::domain_error("takagi_dyadic: need 0 <= k <= 2^m");
  }
  const BigInt value = detail::to_mpz(m) * k - 2 * popcount_prefix_sum(k);
  return Dyadic(value, m);
}

Rat takagi_rational(const Rat& x, std::uint64_t max_orbit) {
  require_unit(x, "takagi_rational");
  if (x.is_zero() || x == Rat(1)) return Rat(0);
  const BigInt q = x.den();
  const BigInt r0 = x.num();
  // q + q must fit in the fixed-width type.
  if (detail::fits_bits(q, 62)) {
    const auto small_q = static_cast<std::uint64_t>(detail::to_u128(q));
    return takagi_from_orbit(static_cast<std::uint64_t>(detail::to_u128(r0)), small_q, q, max_orbit);
  }
  if (detail::fits_bits(q, 126)) {
    return takagi_from_orbit(detail::to_u128(r0), detail::to_u128(q), q, max_orbit);
  }
  return takagi_from_orbit(r0, q, q, max_orbit);
}

Dyadic takagi_partial(const BigInt& r, std::uint64_t m, std::uint64_t terms) {
  const BigInt one_scaled = BigInt(1) << static_cast<mp_bitcnt_t>(m);
  if (sgn(r) < 0 || r > one_scaled) throw std::domain_error("takagi_partial: need 0 <= r <= 2^m");
  const BigInt two_scaled = one_scaled << 1;
  BigInt y = r;
  BigInt acc = 0;
  for (std::uint64_t n = 1; n <= terms; ++n) {
    y <<= 1;
    if (y > one_scaled) y = two_scaled - y;
    acc <<= 1;
    acc += y;
  }
  return Dyadic(std::move(acc), terms + m);
}

Interval takagi_enclosure(const BinaryExpansion& x, std::uint64_t terms, std::uint64_t depth) {
  if (terms == 0) throw std::out_of_range("takagi_enclosure: need N >= 1");
  const std::uint64_t m = depth == 0 ? 2 * terms : depth;
  if (m < terms) throw std::out_of_range("takagi_enclosure: need depth M >= N");
  if (const auto* d = std::get_if<BinaryExpansion::FiniteDyadic>(&x.backend())) {
    // phi^(n)(k/2^e) = 0 for n > e, so the series is finite.
    if (d->value.exp() <= terms) {
      return Interval(takagi_partial(d->value.num(), d->value.exp(), terms));
    }
  }
  const Dyadic xm = x.truncate(m);
  const BigInt r = xm.ldexp(static_cast<std::int64_t>(m)).num();
  const Dyadic left = takagi_partial(r, m, terms);
  const Dyadic right = takagi_partial(BigInt(r + 1), m, terms);
  const Interval head = Interval::hull(left, right);
  return head + Interval(Dyadic(0), Dyadic::pow2_neg(terms));
}

}  // namespace takagi
