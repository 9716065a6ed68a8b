#include "oracles.hpp"

#include "takagi/kono.hpp"
#include "takagi/spec_parser.hpp"
#include "takagi/takagi.hpp"

#include <doctest.h>

using namespace takagi;

namespace {

Rat q(long a, long b) { return Rat(BigInt(a), BigInt(b)); }

}  // namespace

TEST_CASE("split at x = 1/3") {
  const auto third = expansion_of_rational(q(1, 3));
  const KonoSplit s = kono_split(third, 3, 80);
  CHECK(s.k0 == 2);
  CHECK(s.sigma1 == Dyadic(0));
  REQUIRE(s.reference_delta);
  CHECK(*s.reference_delta == takagi_rational(q(11, 24)) - takagi_rational(q(1, 3)));
  CHECK(s.identity_holds());

  const KonoSplit c = kono_split(third, 4, 80);  // eps_4 = 1, so the carry stops at 3
  CHECK(c.k0 == 2);
  CHECK(c.middle == 0);
  CHECK(c.identity_holds());
}

TEST_CASE("split identity, exact terms") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 400; ++i) {
    const Rat x = oracle::random_rational(rng, 3000);
    const std::uint64_t p = std::uniform_int_distribution<std::uint64_t>(1, 50)(rng);
    if (x + Rat(Dyadic::pow2_neg(p)) >= Rat(1)) continue;
    const KonoSplit s = kono_split(expansion_of_rational(x), p, 80);
    REQUIRE(s.sigma2_factor_exact);
    CHECK(s.sigma3 == Interval(Dyadic(0)));
    // S1 + F * middle reproduces the exact difference
    const Rat assembled = Rat(s.sigma1) + *s.sigma2_factor_exact * Rat(s.middle);
    CHECK(assembled == *s.reference_delta);
    CHECK(s.identity_holds());
    CHECK(s.total.width() <= Dyadic::pow2_neg(78));
  }
}

TEST_CASE("split on gap rules") {
  const auto x = parse_expansion_spec("gaps:linear:3");  // 1/7
  for (std::uint64_t p : {2, 5, 9, 20}) {
    const KonoSplit s = kono_split(x, p);
    const Rat ref = takagi_rational(q(1, 7) + Rat(Dyadic::pow2_neg(p))) - takagi_rational(q(1, 7));
    CHECK(s.total.contains(ref));
    CHECK(s.sigma3.magnitude() <= s.h * Dyadic(2));
  }
}

TEST_CASE("middle sums") {
  const auto third = expansion_of_rational(q(1, 3));
  CHECK(middle_sum(third, 2, 3) == 1);
  CHECK(middle_sum(third, 2, 4) == 0);
  CHECK(middle_sum(parse_expansion_spec("gaps:zeros:kruppel"), 3, 15) == -10);
  CHECK_THROWS_AS(middle_sum(third, 1, 3), std::invalid_argument);
  // direct count: -(p - k0 - 2) whenever there is a carry
  CHECK(middle_sum(parse_expansion_spec("gaps:zeros:kruppel"), 3, 10) == -(10 - 3 - 2));
}

TEST_CASE("sigma2 factor bounds") {
  // 3/8 - 2^-20 has digit 3 = 0 and ones from 4 to 20; both tails are 1 on
  // 5..20 and 0 beyond: factor = -(2^-4 - 2^-20) + 2^-20, the bound at m = 16
  const Rat x = q(3, 8) - Rat(Dyadic::pow2_neg(20));
  const auto f = sigma2_factor(expansion_of_rational(x), 4);
  CHECK(*f.exact == -Rat(Dyadic::pow2_neg(4)) + Rat(Dyadic::pow2_neg(19)));
  CHECK(*f.exact >= -Rat(Dyadic::pow2_neg(4)) * (Rat(1) - Rat(Dyadic::pow2_neg(16))));

  // tail all zeros beyond p: factor = h
  const auto d = expansion_of_rational(q(5, 32));
  const auto fd = sigma2_factor(d, 6);
  CHECK(fd.exact);
  CHECK(*fd.exact == Rat(Dyadic::pow2_neg(6)));

  // eps_{p+1} = 0 gives a nonnegative factor
  std::mt19937_64 rng(31);
  for (int i = 0; i < 500; ++i) {
    const Rat x = oracle::random_rational(rng, 10000);
    const std::uint64_t p = std::uniform_int_distribution<std::uint64_t>(1, 40)(rng);
    const auto ex = expansion_of_rational(x);
    if (x + Rat(Dyadic::pow2_neg(p)) >= Rat(1)) continue;
    const auto f = sigma2_factor(ex, p);
    REQUIRE(f.exact);
    CHECK(f.value.contains(*f.exact));
    const Rat h(Dyadic::pow2_neg(p));
    CHECK(*f.exact <= h);
    if (ex.digit(p + 1) == 0) CHECK(f.exact->sign() >= 0);
    // oracle: 2^-p - tail(x) - tail(x + h), tails from repeated doubling
    const Rat y = x + h;
    const Rat scale(Dyadic::pow2_neg(p));
    auto tail = [&](const Rat& v) {
      Rat t = v;
      for (std::uint64_t k = 0; k < p; ++k) {
        t = t * Rat(2);
        if (t >= Rat(1)) t -= Rat(1);
      }
      return t * scale;
    };
    CHECK(*f.exact == h - tail(x) - tail(y));
  }
}

TEST_CASE("maximizer") {
  const auto four = maximize_f(4);
  CHECK(four.mstar == 2);
  CHECK(maximize_objective(4, 2) == Dyadic(BigInt(3), 1));
  const auto one = maximize_f(1);
  CHECK(one.mstar == 1);
  CHECK(maximize_objective(1, 0) == Dyadic(0));
  CHECK(maximize_objective(1, 1) == Dyadic(0));

  const auto big = maximize_f(std::uint64_t{1} << 20);
  CHECK(big.mstar > 18);
  CHECK(big.mstar <= 21);

  // brute force over all m <= c
  for (std::uint64_t c = 1; c <= 300; ++c) {
    std::uint64_t best = 0;
    for (std::uint64_t m = 1; m <= c + 1; ++m)
      if (maximize_objective(c, m) >= maximize_objective(c, best)) best = m;
    CHECK(maximize_f(c).mstar == best);
  }
}
