#include "takagi/expansion.hpp"

#include "wide_int.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace takagi {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_budget(std::uint64_t k, std::uint64_t budget) {
  if (k > budget) {
    throw BudgetExceeded("digit position " + std::to_string(k) + " exceeds bit budget " +
                         std::to_string(budget));
  }
}

// Binary long division of num/den (0 <= num < den, den not a power of two),
// returning the preperiod and primitive period digits. The preperiod has
// length v2(den); after it the remainder sequence is purely periodic.
template <class Int>
void long_division(const Int& num, const Int& den, std::uint64_t pre_len, std::uint64_t max_period,
                   std::vector<std::uint8_t>& pre, std::vector<std::uint8_t>& period) {
  Int r = num;
  auto step = [&](std::vector<std::uint8_t>& out) {
    r = r + r;
    if (r >= den) {
      r = r - den;
      out.push_back(1);
    } else {
      out.push_back(0);
    }
  };
  for (std::uint64_t i = 0; i < pre_len; ++i) step(pre);
  const Int start = r;
  do {
    if (period.size() >= max_period) {
      throw ExpansionError(ExpansionError::Kind::period_too_long,
                           "binary period exceeds " + std::to_string(max_period) + " digits");
    }
    step(period);
  } while (!(r == start));
}

std::uint64_t count_ones(const std::vector<std::uint8_t>& bits, std::size_t len) {
  return static_cast<std::uint64_t>(std::count(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(len), 1));
}

}  // namespace

BinaryExpansion::BinaryExpansion(Backend backend) : backend_(std::move(backend)) {}

BinaryExpansion BinaryExpansion::of_rational(const Rat& x, std::uint64_t max_period) {
  if (x.sign() < 0 || x >= Rat(1)) {
    throw ExpansionError(ExpansionError::Kind::out_of_range,
                         "expansion requires 0 <= x < 1, got " + x.str());
  }
  if (x.is_dyadic()) return BinaryExpansion(FiniteDyadic{x.to_dyadic()});

  const BigInt den = x.den();
  const std::uint64_t v2 = mpz_scan1(den.get_mpz_t(), 0);
  RationalPeriodic rp{x, {}, {}};
  // r + r must not overflow: keep den below 2^126.
  if (detail::fits_bits(den, 126)) {
    long_division(detail::from_mpz<detail::u128>(x.num()), detail::from_mpz<detail::u128>(den), v2,
                  max_period, rp.preperiod, rp.period);
  } else {
    long_division(x.num(), den, v2, max_period, rp.preperiod, rp.period);
  }
  return BinaryExpansion(std::move(rp));
}

BinaryExpansion BinaryExpansion::of_gaps(GapSequencePtr seq, DigitKind marks, std::uint64_t budget) {
  if (!seq) throw std::invalid_argument("of_gaps: null sequence");
  return BinaryExpansion(GapRule{std::move(seq), marks, {}, budget});
}

std::optional<Rat> BinaryExpansion::rational_value() const {
  return std::visit(overloaded{
                        [](const FiniteDyadic& d) -> std::optional<Rat> { return Rat(d.value); },
                        [](const RationalPeriodic& r) -> std::optional<Rat> { return r.value; },
                        [](const GapRule&) -> std::optional<Rat> { return std::nullopt; },
                    },
                    backend_);
}

int BinaryExpansion::digit(std::uint64_t k) const {
  if (k == 0) throw std::out_of_range("digit positions start at 1");
  return std::visit(
      overloaded{
          [k](const FiniteDyadic& d) -> int {
            if (k > d.value.exp()) return 0;
            return mpz_tstbit(d.value.num().get_mpz_t(), d.value.exp() - k);
          },
          [k](const RationalPeriodic& r) -> int {
            const std::uint64_t pre = r.preperiod.size();
            if (k <= pre) return r.preperiod[k - 1];
            return r.period[(k - 1 - pre) % r.period.size()];
          },
          [k](const GapRule& g) -> int {
            if (k <= g.patch.size()) return g.patch[k - 1];
            check_budget(k, g.budget);
            const bool listed = g.sequence->contains(k);
            return (g.marks == DigitKind::ones) == listed ? 1 : 0;
          },
      },
      backend_);
}

std::uint64_t BinaryExpansion::budget() const {
  if (const auto* g = std::get_if<GapRule>(&backend_)) return g->budget;
  return std::numeric_limits<std::uint64_t>::max();
}

Dyadic BinaryExpansion::truncate(std::uint64_t m) const {
  return std::visit(
      overloaded{
          [m](const FiniteDyadic& d) { return floor_dyadic(Rat(d.value), m); },
          [m](const RationalPeriodic& r) { return floor_dyadic(r.value, m); },
          [m](const GapRule& g) {
            check_budget(m, g.budget);
            BigInt bits;
            const std::uint64_t lim = std::min<std::uint64_t>(m, g.patch.size());
            if (g.marks == DigitKind::ones) {
              for (std::uint64_t pos = lim; auto next = g.sequence->next_after(pos);) {
                if (*next > m) break;
                mpz_setbit(bits.get_mpz_t(), m - *next);
                pos = *next;
              }
            } else if (m > lim) {
              // all ones on (lim, m], then clear the listed zero positions
              BigInt ones = (BigInt(1) << static_cast<mp_bitcnt_t>(m - lim)) - 1;
              bits = ones;
              for (std::uint64_t pos = lim; auto next = g.sequence->next_after(pos);) {
                if (*next > m) break;
                mpz_clrbit(bits.get_mpz_t(), m - *next);
                pos = *next;
              }
            }
            for (std::uint64_t k = 1; k <= lim; ++k)
              if (g.patch[k - 1]) mpz_setbit(bits.get_mpz_t(), m - k);
            return Dyadic(std::move(bits), m);
          },
      },
      backend_);
}

std::optional<std::uint64_t> BinaryExpansion::next_position(DigitKind which,
                                                            std::uint64_t after) const {
  const int want = which == DigitKind::ones ? 1 : 0;
  if (const auto* d = std::get_if<FiniteDyadic>(&backend_)) {
    for (std::uint64_t k = after + 1; k <= d->value.exp(); ++k)
      if (digit(k) == want) return k;
    if (want == 0) return std::max(after, d->value.exp()) + 1;
    return std::nullopt;
  }
  if (const auto* r = std::get_if<RationalPeriodic>(&backend_)) {
    // a non-dyadic rational's period holds both digits
    const std::uint64_t span = r->preperiod.size() + r->period.size();
    for (std::uint64_t k = after + 1; k <= after + span + 1; ++k)
      if (digit(k) == want) return k;
    return std::nullopt;
  }
  const auto& g = std::get<GapRule>(backend_);
  std::uint64_t k = after + 1;
  for (; k <= g.patch.size(); ++k)
    if (g.patch[k - 1] == want) return k;
  if (which == g.marks) {
    auto next = g.sequence->next_after(k - 1);
    if (next) check_budget(*next, g.budget);
    return next;
  }
  for (;; ++k) {
    check_budget(k, g.budget);
    if (!g.sequence->contains(k)) return k;
  }
}

std::string BinaryExpansion::describe() const {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const FiniteDyadic& d) { out << "dyadic " << d.value.str(); },
                 [&](const RationalPeriodic& r) {
                   out << "rational " << r.value.str() << " = 0.";
                   for (auto b : r.preperiod) out << int(b);
                   out << "(";
                   const std::size_t shown = std::min<std::size_t>(r.period.size(), 32);
                   for (std::size_t i = 0; i < shown; ++i) out << int(r.period[i]);
                   if (shown < r.period.size()) out << "...[" << r.period.size() << "]";
                   out << ")";
                 },
                 [&](const GapRule& g) {
                   out << "gaps " << (g.marks == DigitKind::ones ? "ones" : "zeros") << " at "
                       << g.sequence->kind();
                   if (!g.patch.empty()) out << " (patched prefix of " << g.patch.size() << ")";
                 },
             },
             backend_);
  return out.str();
}

// ---------------------------------------------------------------- free ops

BinaryExpansion expansion_of_rational(const Rat& x) { return BinaryExpansion::of_rational(x); }

int digit(const BinaryExpansion& x, std::uint64_t k) { return x.digit(k); }

DigitStats stats(const BinaryExpansion& x, std::uint64_t n) {
  if (n == 0) throw std::out_of_range("stats: n must be >= 1");
  std::uint64_t ones = 0;
  std::visit(overloaded{
                 [&](const BinaryExpansion::FiniteDyadic& d) {
                   const std::uint64_t e = d.value.exp();
                   if (n >= e) {
                     ones = bit_count(d.value.num());
                   } else {
                     BigInt head;
                     mpz_tdiv_q_2exp(head.get_mpz_t(), d.value.num().get_mpz_t(), e - n);
                     ones = bit_count(head);
                   }
                 },
                 [&](const BinaryExpansion::RationalPeriodic& r) {
                   const std::uint64_t pre = r.preperiod.size();
                   if (n <= pre) {
                     ones = count_ones(r.preperiod, n);
                     return;
                   }
                   const std::uint64_t per = r.period.size();
                   const std::uint64_t rest = n - pre;
                   ones = count_ones(r.preperiod, pre) +
                          (rest / per) * count_ones(r.period, per) + count_ones(r.period, rest % per);
                 },
                 [&](const BinaryExpansion::GapRule& g) {
                   check_budget(n, g.budget);
                   const std::uint64_t lim = std::min<std::uint64_t>(n, g.patch.size());
                   ones = count_ones(g.patch, lim);
                   if (n > lim) {
                     const std::uint64_t listed = g.sequence->count_le(n) - g.sequence->count_le(lim);
                     ones += g.marks == DigitKind::ones ? listed : (n - lim) - listed;
                   }
                 },
             },
             x.backend());
  DigitStats s;
  s.n = n;
  s.ones = ones;
  s.zeros = n - ones;
  s.deficiency = static_cast<std::int64_t>(s.zeros) - static_cast<std::int64_t>(s.ones);
  s.density_estimate = Rat(detail::to_mpz(ones), detail::to_mpz(n));
  return s;
}

std::vector<std::uint64_t> gaps(const BinaryExpansion& x, std::size_t count, DigitKind which) {
  std::vector<std::uint64_t> out;
  out.reserve(count);
  std::uint64_t pos = 0;
  while (out.size() < count) {
    const auto next = x.next_position(which, pos);
    if (!next) {
      throw GeneratorExhausted("expansion " + x.describe() + " has only " +
                               std::to_string(out.size()) + " " +
                               (which == DigitKind::ones ? "1" : "0") + "-digits");
    }
    out.push_back(*next);
    pos = *next;
  }
  return out;
}

BinaryExpansion reflect(const BinaryExpansion& x) {
  return std::visit(
      overloaded{
          [](const BinaryExpansion::FiniteDyadic& d) {
            if (d.value.is_zero()) {
              throw ExpansionError(ExpansionError::Kind::reflect_zero, "reflect: x must be > 0");
            }
            return BinaryExpansion(BinaryExpansion::FiniteDyadic{Dyadic(1) - d.value});
          },
          [](const BinaryExpansion::RationalPeriodic& r) {
            BinaryExpansion::RationalPeriodic out{Rat(1) - r.value, r.preperiod, r.period};
            for (auto& b : out.preperiod) b ^= 1;
            for (auto& b : out.period) b ^= 1;
            return BinaryExpansion(std::move(out));
          },
          [](const BinaryExpansion::GapRule& g) {
            BinaryExpansion::GapRule out = g;
            out.marks = opposite(g.marks);
            for (auto& b : out.patch) b ^= 1;
            return BinaryExpansion(std::move(out));
          },
      },
      x.backend());
}

Pow2Sum add_pow2(const BinaryExpansion& x, std::uint64_t p) {
  if (p == 0) throw std::out_of_range("add_pow2: p must be >= 1");
  std::uint64_t q = 0;
  for (std::uint64_t j = p; j >= 1; --j) {
    if (x.digit(j) == 0) {
      q = j;
      break;
    }
  }
  if (q == 0) {
    throw ExpansionError(ExpansionError::Kind::overflow,
                         "x + 2^-" + std::to_string(p) +
                             " >= 1: digits 1.." + std::to_string(p) + " of x are all ones");
  }
  if (const auto value = x.rational_value()) {
    return {BinaryExpansion::of_rational(*value + Rat(Dyadic::pow2_neg(p))), q - 1};
  }
  auto g = std::get<BinaryExpansion::GapRule>(x.backend());
  std::vector<std::uint8_t> patch(std::max<std::uint64_t>(p, g.patch.size()));
  for (std::uint64_t k = 1; k <= patch.size(); ++k)
    patch[k - 1] = static_cast<std::uint8_t>(x.digit(k));
  patch[q - 1] = 1;
  for (std::uint64_t k = q + 1; k <= p; ++k) patch[k - 1] = 0;
  g.patch = std::move(patch);
  return {BinaryExpansion(std::move(g)), q - 1};
}

}  // namespace takagi
