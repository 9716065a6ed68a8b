#include "oracles.hpp"

#include "takagi/expansion.hpp"
#include "takagi/spec_parser.hpp"

#include <doctest.h>

using namespace takagi;

namespace {

Rat q(long a, long b) { return Rat(BigInt(a), BigInt(b)); }

std::vector<std::uint8_t> bits(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("rational expansions") {
  const auto third = expansion_of_rational(q(1, 3));
  const auto& r = std::get<BinaryExpansion::RationalPeriodic>(third.backend());
  CHECK(r.preperiod.empty());
  CHECK(r.period == bits({0, 1}));

  const auto half = expansion_of_rational(q(1, 2));
  CHECK(half.is_finite_dyadic());
  CHECK(digit(half, 1) == 1);
  CHECK(digit(half, 2) == 0);
  CHECK(digit(half, 1000) == 0);

  const auto five_sixths = expansion_of_rational(q(5, 6));
  const auto& s = std::get<BinaryExpansion::RationalPeriodic>(five_sixths.backend());
  CHECK(s.preperiod == bits({1}));
  CHECK(s.period == bits({1, 0}));

  CHECK(digit(third, 2) == 1);
  CHECK_THROWS_AS(expansion_of_rational(Rat(1)), ExpansionError);
  CHECK_THROWS_AS(expansion_of_rational(q(-1, 3)), ExpansionError);
}

TEST_CASE("rational digits match repeated doubling") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const Rat x = oracle::random_rational(rng, 5000);
    const auto ex = expansion_of_rational(x);
    const auto ref = oracle::digits(x, 200);
    for (std::uint64_t k = 1; k <= 200; ++k) REQUIRE(ex.digit(k) == ref[k - 1]);
    CHECK(*ex.rational_value() == x);
    CHECK(Rat(ex.truncate(200)) <= x);
    CHECK(x - Rat(ex.truncate(200)) < Rat(Dyadic::pow2_neg(200)));
  }
}

TEST_CASE("gap rule digits") {
  const auto x = BinaryExpansion::of_gaps(builtin_generator("linear", "3"));
  CHECK(digit(x, 3) == 1);
  CHECK(digit(x, 4) == 0);
  CHECK(gaps(x, 4, DigitKind::ones) == std::vector<std::uint64_t>{3, 6, 9, 12});
  CHECK(gaps(x, 4, DigitKind::zeros) == std::vector<std::uint64_t>{1, 2, 4, 5});
  const auto small = BinaryExpansion::of_gaps(builtin_generator("kruppel"), DigitKind::ones, 1000);
  CHECK_THROWS_AS(small.digit(1001), BudgetExceeded);
  CHECK_THROWS_AS(gaps(small, 5, DigitKind::ones), BudgetExceeded);
}

TEST_CASE("digit statistics") {
  const auto third = expansion_of_rational(q(1, 3));
  CHECK(stats(third, 4).deficiency == 0);
  const auto half = expansion_of_rational(q(1, 2));
  for (std::int64_t n = 1; n < 50; ++n) CHECK(stats(half, static_cast<std::uint64_t>(n)).deficiency == n - 2);

  // D_{a_m} = a_m - 2m
  const auto g = builtin_generator("primes");
  const auto x = BinaryExpansion::of_gaps(g);
  for (std::uint64_t m = 1; m <= 40; ++m) {
    const auto a = g->at(m);
    CHECK(stats(x, a).deficiency == static_cast<std::int64_t>(a) - 2 * static_cast<std::int64_t>(m));
  }

  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const Rat r = oracle::random_rational(rng, 3000);
    const auto ex = expansion_of_rational(r);
    const std::uint64_t n = std::uniform_int_distribution<std::uint64_t>(1, 400)(rng);
    const auto ref = oracle::digits(r, n);
    std::uint64_t ones = 0;
    for (int d : ref) ones += static_cast<std::uint64_t>(d);
    const auto st = stats(ex, n);
    CHECK(st.ones == ones);
    CHECK(st.zeros == n - ones);
    CHECK(st.density_estimate == Rat(BigInt(static_cast<unsigned long>(ones)), BigInt(static_cast<unsigned long>(n))));
  }
}

TEST_CASE("gap prefixes") {
  const auto third = expansion_of_rational(q(1, 3));
  CHECK(gaps(third, 3, DigitKind::ones) == std::vector<std::uint64_t>{2, 4, 6});
  CHECK(gaps(third, 3, DigitKind::zeros) == std::vector<std::uint64_t>{1, 3, 5});
  const auto k = parse_expansion_spec("gaps:kruppel");
  CHECK(gaps(k, 3, DigitKind::ones) == std::vector<std::uint64_t>{4, 16, 64});
  CHECK_THROWS_AS(gaps(expansion_of_rational(q(3, 8)), 3, DigitKind::ones), GeneratorExhausted);
}

TEST_CASE("reflection") {
  const auto r = reflect(expansion_of_rational(q(1, 3)));
  CHECK(*r.rational_value() == q(2, 3));
  CHECK(r.digit(1) == 1);
  CHECK(r.digit(2) == 0);
  CHECK(*reflect(expansion_of_rational(q(1, 2))).rational_value() == q(1, 2));
  CHECK_THROWS_AS(reflect(expansion_of_rational(Rat(0))), ExpansionError);

  const auto x = BinaryExpansion::of_gaps(builtin_generator("sqrtdrift"));
  const auto y = reflect(x);
  CHECK(gaps(y, 50, DigitKind::ones) == gaps(x, 50, DigitKind::zeros));
  CHECK(gaps(y, 50, DigitKind::zeros) == gaps(x, 50, DigitKind::ones));

  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const Rat v = oracle::random_rational(rng, 2000);
    if (v.is_zero()) continue;
    CHECK(*reflect(expansion_of_rational(v)).rational_value() == Rat(1) - v);
  }
}

TEST_CASE("adding a power of two") {
  const auto third = expansion_of_rational(q(1, 3));
  const auto s = add_pow2(third, 3);
  CHECK(*s.value.rational_value() == q(11, 24));
  CHECK(s.k0 == 2);
  const std::vector<int> expect{0, 1, 1, 1, 0, 1, 0, 1};
  for (std::uint64_t k = 1; k <= 8; ++k) CHECK(s.value.digit(k) == expect[k - 1]);

  const auto t = add_pow2(third, 1);
  CHECK(*t.value.rational_value() == q(5, 6));
  CHECK(t.k0 == 0);

  const auto u = add_pow2(third, 4);
  CHECK(u.k0 == 2);

  CHECK_THROWS_AS(add_pow2(expansion_of_rational(q(7, 8)), 3), ExpansionError);
  CHECK_THROWS_AS(add_pow2(expansion_of_rational(q(3, 4)), 2), ExpansionError);
  CHECK(add_pow2(expansion_of_rational(q(3, 4)), 3).k0 == 2);

  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const Rat x = oracle::random_rational(rng, 5000);
    const std::uint64_t p = std::uniform_int_distribution<std::uint64_t>(1, 40)(rng);
    const auto ex = expansion_of_rational(x);
    const Rat y = x + Rat(Dyadic::pow2_neg(p));
    if (y >= Rat(1)) {
      CHECK_THROWS_AS(add_pow2(ex, p), ExpansionError);
      continue;
    }
    const auto sum = add_pow2(ex, p);
    CHECK(*sum.value.rational_value() == y);
    // common prefix of length k0, then the first difference
    const auto dx = oracle::digits(x, 120), dy = oracle::digits(y, 120);
    std::uint64_t k0 = 0;
    while (dx[k0] == dy[k0]) ++k0;
    CHECK(sum.k0 == k0);
    if (ex.digit(p) == 0) CHECK(sum.k0 == p - 1);
  }
}

TEST_CASE("adding a power of two to a gap rule") {
  const auto x = parse_expansion_spec("gaps:zeros:kruppel");
  const auto s = add_pow2(x, 15);
  CHECK(s.k0 == 3);
  for (std::uint64_t k = 1; k <= 3; ++k) CHECK(s.value.digit(k) == 1);
  CHECK(s.value.digit(4) == 1);
  for (std::uint64_t k = 5; k <= 15; ++k) CHECK(s.value.digit(k) == 0);
  for (std::uint64_t k = 16; k <= 300; ++k) CHECK(s.value.digit(k) == x.digit(k));
  CHECK(s.value.truncate(300) == x.truncate(300) + Dyadic::pow2_neg(15));
}

TEST_CASE("expansion specs") {
  CHECK(*parse_expansion_spec("dyadic:5/32").rational_value() == q(5, 32));
  CHECK(parse_expansion_spec("dyadic:5/32").is_finite_dyadic());
  CHECK(*parse_expansion_spec("rational:2/6").rational_value() == q(1, 3));
  CHECK(parse_expansion_spec("gaps:linear:3").is_gap_rule());
  CHECK(parse_expansion_spec("gaps:poly:1,2").digit(3) == 1);
  CHECK(parse_expansion_spec("gaps:geo:1.5").digit(2) == 1);
  CHECK(parse_expansion_spec("gaps:zeros:linear:2").digit(1) == 1);
  CHECK(parse_expansion_spec("gaps:zeros:linear:2").digit(2) == 0);

  CHECK_THROWS_AS(parse_expansion_spec("dyadic:1/3"), ParseError);
  CHECK_THROWS_AS(parse_expansion_spec("rational:4/3"), ParseError);
  CHECK_THROWS_AS(parse_expansion_spec("gaps:nosuch"), std::invalid_argument);
  CHECK_THROWS_AS(parse_expansion_spec("gaps:linear:x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_expansion_spec("decimal:0.5"), ParseError);
  try {
    parse_expansion_spec("rational:1/");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() > 0);
  }
}
