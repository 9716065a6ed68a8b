#include "oracles.hpp"

#include "takagi/conditions.hpp"
#include "takagi/spec_parser.hpp"
#include "takagi/takagi.hpp"

#include <doctest.h>

#include <cmath>

using namespace takagi;

namespace {

std::vector<double> c_values(const GapSequence& g, std::uint64_t n) {
  std::vector<double> out;
  for (const auto& s : condition_sequence(g, n)) out.push_back(s.c_n);
  return out;
}

}  // namespace

TEST_CASE("condition sequences") {
  const auto lin = condition_sequence(*builtin_generator("linear", "3"), 60);
  CHECK(lin[0].c_n == doctest::Approx(0.415037).epsilon(1e-6));
  CHECK(lin[4].c_n == doctest::Approx(-3.584963).epsilon(1e-6));
  for (const auto& s : lin) {
    CHECK(s.exact_part == 3 - static_cast<std::int64_t>(s.n));
    CHECK(s.gap == 3);
    CHECK(s.ratio == Rat(BigInt(static_cast<unsigned long>(s.n + 1)), BigInt(static_cast<unsigned long>(s.n))));
  }

  const auto kr = condition_sequence(*builtin_generator("kruppel"), 20);
  for (const auto& s : kr) {
    const double expected = 2.0 * std::ldexp(1.0, static_cast<int>(2 * s.n)) - std::log2(3.0);
    CHECK(s.c_n == doctest::Approx(expected).epsilon(1e-15));
  }

  const auto p2 = condition_sequence(*builtin_generator("pow2plus", "1"), 40);
  for (const auto& s : p2) {
    const double dn = static_cast<double>(s.n);
    CHECK(std::abs(s.c_n - (dn + 1 - std::log2(std::ldexp(1.0, static_cast<int>(s.n)) + 1))) < 1e-12);
  }
}

TEST_CASE("begle-ayres sequences") {
  const auto lin = begle_ayres_sequence(*builtin_generator("linear", "3"), 50);
  for (std::size_t i = 0; i < lin.size(); ++i) CHECK(lin[i] == static_cast<std::int64_t>(i + 1));
  const auto sq = begle_ayres_sequence(*builtin_generator("sqrtdrift"), 400);
  for (std::size_t i = 0; i < sq.size(); ++i) {
    const auto n = static_cast<std::int64_t>(i + 1);
    CHECK(sq[i] == static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(n)))));
  }
  const auto kr = begle_ayres_sequence(*builtin_generator("kruppel"), 20);
  for (std::size_t i = 0; i < kr.size(); ++i) {
    const auto n = static_cast<std::int64_t>(i + 1);
    CHECK(kr[i] == (std::int64_t{1} << (2 * n)) - 2 * n);
  }
  // via an expansion: 1/3 has a_n = 2n, b_n = 2n - 1
  const auto third = expansion_of_rational(Rat(BigInt(1), BigInt(3)));
  for (auto v : begle_ayres_sequence(third, DigitKind::ones, 30)) CHECK(v == 0);
  for (auto v : begle_ayres_sequence(third, DigitKind::zeros, 30)) CHECK(v == -1);
}

TEST_CASE("sufficient condition") {
  const auto primes = sufficient_check(*builtin_generator("primes"), 400);
  CHECK(primes.ratio_limsup_est < 1.1);
  CHECK(primes.epsilon == doctest::Approx(1.0).epsilon(0.05));
  CHECK(primes.satisfied_empirically);

  const auto geo = sufficient_check(*builtin_generator("geo", "1.5"), 60);
  CHECK(geo.ratio_limsup_est == doctest::Approx(1.5).epsilon(1e-3));
  CHECK(geo.satisfied_empirically);

  const auto pow2 = sufficient_check(*builtin_generator("geo", "2"), 60);
  CHECK(pow2.ratio_limsup_est == doctest::Approx(2.0));
  CHECK_FALSE(pow2.satisfied_empirically);
}

TEST_CASE("trend classification") {
  CHECK(classify_trend(c_values(*builtin_generator("linear", "3"), 200), 100).verdict == Trend::diverges_minus);
  CHECK(classify_trend(c_values(*builtin_generator("kruppel"), 20), 10).verdict == Trend::diverges_plus);
  CHECK(classify_trend(c_values(*builtin_generator("pow2plus", "1"), 60), 30).verdict == Trend::bounded);

  // flat with one spike: no slope, range above B
  std::vector<double> spike(100, 0.0);
  spike[80] = 100.0;
  const auto r = classify_trend(spike, 50);
  CHECK(r.verdict == Trend::inconclusive);
  CHECK(r.horizon == 100);
  CHECK(r.last_values.size() == 50);
  CHECK(to_string(Trend::diverges_plus) == "diverges_plus");
}

TEST_CASE("sample-level identities") {
  // c_n + (a_n - 2n) = gap - log2(gap) >= 0
  for (const char* name : {"primes", "normalmix", "sqrtdrift", "logdrift"}) {
    for (const auto& s : condition_sequence(*builtin_generator(name), 500)) {
      const double g = static_cast<double>(s.gap);
      CHECK(s.c_n + static_cast<double>(s.begle_ayres) == doctest::Approx(g - std::log2(g)));
      CHECK(s.c_n + static_cast<double>(s.begle_ayres) >= -1e-12);
    }
  }
  // ratio >= 2 + eps forces c_n >= 2n - 2/eps - 1
  const double eps = 0.1;
  for (const char* params : {"2.1", "2.5", "3"}) {
    for (const auto& s : condition_sequence(*builtin_generator("geo", params), 30)) {
      if (s.ratio < Rat::parse("2.1")) continue;
      CHECK(s.c_n >= 2.0 * static_cast<double>(s.n) - 2.0 / eps - 1.0);
    }
  }
}

TEST_CASE("normalmix returns to the lower track infinitely often") {
  const auto g = builtin_generator("normalmix");
  const auto samples = condition_sequence(*g, 10000);
  std::uint64_t hits = 0, last_hit = 0;
  for (const auto& s : samples) {
    const auto root = static_cast<std::uint64_t>(std::floor(std::sqrt(static_cast<double>(s.n))));
    if (s.a_n > 2 * s.n + root) continue;
    ++hits;
    last_hit = s.n;
    // at such n, c_n >= floor(sqrt n) - (1/2) log2 n - 2
    CHECK(s.c_n >= static_cast<double>(root) - 0.5 * std::log2(static_cast<double>(s.n)) - 2.0);
  }
  CHECK(hits >= 50);
  CHECK(last_hit > 9000);
}

TEST_CASE("kruppel window slopes") {
  CHECK(kruppel_window_slope(1) == Rat(1));
  CHECK(kruppel_window_slope(2) == Rat(-5));
  CHECK(kruppel_window_slope(3) == Rat(-11));
  for (std::uint64_t n = 1; n <= 5; ++n)
    CHECK(kruppel_window_closed_form(n) == 7 - 6 * static_cast<std::int64_t>(n));
  CHECK_THROWS_AS(kruppel_window_slope(5, 1000), BudgetExceeded);
}

TEST_CASE("dyadic interval slopes") {
  const auto third = expansion_of_rational(Rat(BigInt(1), BigInt(3)));
  CHECK(dyadic_interval_slope(third, 4) == 0);
  CHECK_THROWS_AS(dyadic_interval_slope(expansion_of_rational(Rat(BigInt(3), BigInt(8))), 3),
                  std::invalid_argument);

  // Kruppel point: D_m at m = 4^n, positive and growing
  const auto k = parse_expansion_spec("gaps:kruppel");
  BigInt previous = -1;
  for (std::uint64_t n = 1; n <= 5; ++n) {
    const std::uint64_t m = std::uint64_t{1} << (2 * n);
    const BigInt slope = dyadic_interval_slope(k, m);
    CHECK(slope == static_cast<long>(m - 2 * n));
    CHECK(slope > previous);
    previous = slope;
  }

  // oracle: exact secant from the rational evaluator
  std::mt19937_64 rng(37);
  for (int i = 0; i < 100; ++i) {
    const Rat x = oracle::random_rational(rng, 5000);
    const std::uint64_t m = std::uniform_int_distribution<std::uint64_t>(1, 30)(rng);
    const auto ex = expansion_of_rational(x);
    if (!ex.next_position(DigitKind::ones, m)) continue;
    const BigInt scale = BigInt(1) << static_cast<mp_bitcnt_t>(m);
    const BigInt kk = (x * Rat(scale, BigInt(1))).floor();
    const Rat secant = (takagi_rational(Rat(kk + 1, scale)) - takagi_rational(Rat(kk, scale))) * Rat(scale, BigInt(1));
    CHECK(Rat(dyadic_interval_slope(ex, m), BigInt(1)) == secant);
  }
}
