#include "takagi/kono.hpp"

#include "takagi/takagi.hpp"

#include <stdexcept>

namespace takagi {

namespace {

// Extra bits below 2^-depth used when rounding exact rational factors.
constexpr std::uint64_t kGuardBits = 64;

// x - x_p, the part of x beyond position p, exactly.
Rat tail_beyond(const Rat& x, std::uint64_t p) { return x - Rat(floor_dyadic(x, p)); }

// Truncated double sum for S3 with the terms at positions > depth bounded.
// Digits of x and y are known to agree beyond `agree_after`; when that is
// within the truncation, every dropped term is zero.
Interval sigma3_enclosure(const BinaryExpansion& x, const BinaryExpansion& y, std::uint64_t p,
                          std::uint64_t depth, std::uint64_t agree_after) {
  auto half_double_sum = [&](const BinaryExpansion& z) {
    // sum_{n=p+1}^{K} X_n sum_{k=n+1}^{K} X_k 2^(K-k), then scaled by 2^-(K+1)
    BigInt suffix = 0;
    BigInt acc = 0;
    for (std::uint64_t n = depth; n > p; --n) {
      const int xn = 1 - 2 * z.digit(n);
      if (xn > 0) acc += suffix; else acc -= suffix;
      const BigInt term = BigInt(1) << static_cast<mp_bitcnt_t>(depth - n);
      if (xn > 0) suffix += term; else suffix -= term;
    }
    return Dyadic(std::move(acc), depth + 1);
  };
  const Dyadic head = half_double_sum(x) - half_double_sum(y);
  if (agree_after <= depth) return Interval(head);
  const Dyadic radius(BigInt(static_cast<unsigned long>(depth - p + 1)), depth);
  return Interval(head).widen(radius);
}

std::int64_t rademacher_sum(const BinaryExpansion& x, std::uint64_t from, std::uint64_t to) {
  std::int64_t s = 0;
  for (std::uint64_t n = from; n <= to; ++n) s += 1 - 2 * x.digit(n);
  return s;
}

Sigma2Factor factor_for(const BinaryExpansion& x, const BinaryExpansion& y, std::uint64_t p,
                        std::uint64_t depth) {
  const auto xv = x.rational_value();
  const auto yv = y.rational_value();
  if (xv && yv) {
    // sum_{k>p} 2^-k - (x - x_p) - (y - y_p)
    Rat exact = Rat(Dyadic::pow2_neg(p)) - tail_beyond(*xv, p) - tail_beyond(*yv, p);
    Interval value = Interval::enclose(exact, depth + kGuardBits);
    return {std::move(value), std::move(exact)};
  }
  if (depth <= p) throw std::out_of_range("sigma2_factor: truncation depth must exceed p");
  const Dyadic partial = Dyadic::pow2_neg(p) - Dyadic::pow2_neg(depth) -
                         (x.truncate(depth) - x.truncate(p)) - (y.truncate(depth) - y.truncate(p));
  return {Interval(partial).widen(Dyadic::pow2_neg(depth)), std::nullopt};
}

}  // namespace

std::int64_t middle_sum(const BinaryExpansion& x, std::uint64_t k0, std::uint64_t p) {
  if (k0 >= p) throw std::invalid_argument("middle_sum: need k0 < p");
  bool pattern = x.digit(k0 + 1) == 0;
  for (std::uint64_t k = k0 + 2; pattern && k <= p; ++k) pattern = x.digit(k) == 1;
  if (!pattern) {
    throw std::invalid_argument("middle_sum: (k0=" + std::to_string(k0) + ", p=" + std::to_string(p) +
                                ") is not the carry pattern of x + 2^-p");
  }
  return rademacher_sum(x, k0 + 1, p);
}

Sigma2Factor sigma2_factor(const BinaryExpansion& x, std::uint64_t p, std::uint64_t depth) {
  if (depth == 0) depth = default_kono_depth(p);
  const Pow2Sum sum = add_pow2(x, p);
  return factor_for(x, sum.value, p, depth);
}

KonoSplit kono_split(const BinaryExpansion& x, std::uint64_t p, std::uint64_t depth) {
  if (p == 0) throw std::out_of_range("kono_split: p must be >= 1");
  if (depth == 0) depth = default_kono_depth(p);
  const Pow2Sum sum = add_pow2(x, p);

  KonoSplit s;
  s.h = Dyadic::pow2_neg(p);
  s.p = p;
  s.k0 = sum.k0;
  const std::int64_t d_k0 = s.k0 == 0 ? 0 : stats(x, s.k0).deficiency;
  s.sigma1 = s.h * Dyadic(d_k0);

  Sigma2Factor factor = factor_for(x, sum.value, p, depth);
  s.sigma2_factor = std::move(factor.value);
  s.sigma2_factor_exact = std::move(factor.exact);
  s.middle = rademacher_sum(x, s.k0 + 1, p);
  s.sigma2 = s.sigma2_factor.scale(Dyadic(s.middle));
  // x + 2^-p only rewrites positions <= p.
  s.sigma3 = sigma3_enclosure(x, sum.value, p, depth, p);
  s.total = Interval(s.sigma1) + s.sigma2 + s.sigma3;

  const auto xv = x.rational_value();
  const auto yv = sum.value.rational_value();
  if (xv && yv) s.reference_delta = takagi_rational(*yv) - takagi_rational(*xv);
  return s;
}

Dyadic maximize_objective(std::uint64_t c, std::uint64_t m) {
  const Dyadic one(1);
  return (one - Dyadic::pow2_neg(m)) *
         Dyadic(BigInt(static_cast<long>(c)) - BigInt(static_cast<long>(m)));
}

MaximizerReport maximize_f(std::uint64_t c) {
  if (c < 1) throw std::invalid_argument("maximize_f: need c >= 1");
  MaximizerReport report;
  report.c = c;
  Dyadic best = maximize_objective(c, 0);
  report.fvalues.push_back(best);
  for (std::uint64_t m = 1; m <= c; ++m) {
    if (Dyadic(static_cast<long>(c - m)) < best) break;
    Dyadic f = maximize_objective(c, m);
    if (f >= best) {
      best = f;
      report.mstar = m;
    }
    report.fvalues.push_back(std::move(f));
  }
  return report;
}

}  // namespace takagi
