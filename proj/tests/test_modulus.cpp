#include "oracles.hpp"

#include "takagi/modulus.hpp"
#include "takagi/spec_parser.hpp"
#include "takagi/takagi.hpp"

#include <doctest.h>

#include <cmath>

using namespace takagi;

namespace {

Rat q(long a, long b) { return Rat(BigInt(a), BigInt(b)); }

}  // namespace

TEST_CASE("density estimates") {
  const auto third = density_estimate(expansion_of_rational(q(1, 3)), 1000);
  CHECK(third.d1_estimate == q(1, 2));
  CHECK(third.regular_case == DensityCase::a);

  const auto lin = density_estimate(parse_expansion_spec("gaps:linear:3"), 999);
  CHECK(lin.d1_estimate == q(1, 3));
  CHECK(lin.regular_case == DensityCase::a);

  const auto dy = density_estimate(expansion_of_rational(q(5, 32)), 1000);
  CHECK(dy.regular_case == DensityCase::b);
  CHECK_FALSE(dy.note.empty());

  CHECK(density_estimate(parse_expansion_spec("gaps:poly:0,0,1"), 40000).regular_case == DensityCase::b);
  CHECK(density_estimate(parse_expansion_spec("gaps:zeros:poly:0,0,1"), 40000).regular_case == DensityCase::c);
  CHECK(density_estimate(parse_expansion_spec("gaps:kruppel"), 100000).regular_case == DensityCase::irregular);
  CHECK(to_string(DensityCase::irregular) == "irregular");
}

TEST_CASE("exact differences") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 200; ++i) {
    const Rat x = oracle::random_rational(rng, 4000);
    const std::uint64_t j = std::uniform_int_distribution<std::uint64_t>(2, 60)(rng);
    const Dyadic h = (i % 2 ? Dyadic(1) : Dyadic(-1)) * Dyadic::pow2_neg(j);
    const Rat y = x + Rat(h);
    if (y.sign() <= 0 || y >= Rat(1)) continue;
    const Rat d = modulus_delta(x, h);
    CHECK(d == takagi_rational(y) - takagi_rational(x));
    CHECK(difference_quotient(x, h) == d / Rat(h));
    const double expected = (d / Rat(h)).to_double() / static_cast<double>(j);
    CHECK(scaled_quotient(x, h) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(scaled_quotient(x, h, Denominator::abs_h) ==
          doctest::Approx(h.sign() > 0 ? expected : -expected).epsilon(1e-12));
  }
  CHECK_THROWS(scaled_quotient(q(1, 2), Dyadic(0)));
  CHECK_THROWS(scaled_quotient(q(7, 8), Dyadic::pow2_neg(3)));
}

TEST_CASE("scaled quotients at model points") {
  for (std::uint64_t j = 1; j <= 120; ++j) CHECK(scaled_quotient(Rat(0), Dyadic::pow2_neg(j)) == 1.0);
  CHECK(std::abs(scaled_quotient(q(1, 3), Dyadic::pow2_neg(200))) < 0.05);
  CHECK(scaled_quotient(q(1, 7), Dyadic::pow2_neg(300)) == doctest::Approx(1.0 / 3.0).epsilon(0.02));
}

TEST_CASE("plain schedule") {
  ModulusRequest req;
  req.indices = {64, 128, 256};
  req.signs = {1, -1};
  req.denominator = Denominator::abs_h;
  const auto trace = modulus_experiment(expansion_of_rational(q(5, 32)), req);
  REQUIRE(trace.points.size() == 6);
  for (const auto& pt : trace.points) {
    CHECK(pt.delta_exact);
    // both one-sided differences are about |h| log2(1/|h|)
    CHECK(std::abs(pt.ratio - 1.0) <= 14.0 / static_cast<double>(pt.p));
  }
  REQUIRE(trace.predicted_limit);
  CHECK(*trace.predicted_limit == 1.0);

  req.signs = {1};
  const auto seventh = modulus_experiment(expansion_of_rational(q(1, 7)), req);
  REQUIRE(seventh.predicted_limit);
  CHECK(*seventh.predicted_limit == doctest::Approx(1.0 / 3.0));
  CHECK(seventh.points.back().ratio == doctest::Approx(1.0 / 3.0).epsilon(0.05));
}

TEST_CASE("rational envelopes") {
  // |ratio - (d0 - d1)| <= (2|w| + 4) / j for primitive period w
  const std::pair<Rat, double> cases[] = {{q(1, 3), 0.0}, {q(1, 7), 1.0 / 3.0}, {q(7, 15), -0.5}};
  const double period[] = {2, 3, 4};
  for (int i = 0; i < 3; ++i) {
    const auto& [x, limit] = cases[i];
    for (std::uint64_t j : {32, 64, 128, 256, 512}) {
      const double r = scaled_quotient(x, Dyadic::pow2_neg(j));
      CHECK(std::abs(r - limit) <= (2 * period[i] + 4) / static_cast<double>(j));
    }
    REQUIRE(predicted_modulus_limit(expansion_of_rational(x)));
    CHECK(*predicted_modulus_limit(expansion_of_rational(x)) == doctest::Approx(limit));
  }
}

TEST_CASE("enclosed points on gap rules") {
  // gaps:linear:3 is 1/7, so enclosures can be checked against exact values
  ModulusRequest req;
  req.indices = {20, 40};
  req.signs = {1, -1};
  const auto trace = modulus_experiment(parse_expansion_spec("gaps:linear:3"), req);
  for (const auto& pt : trace.points) {
    REQUIRE(pt.delta_enclosure);
    CHECK(pt.delta_enclosure->contains(modulus_delta(q(1, 7), pt.h)));
    CHECK_FALSE(pt.flagged);
  }
}

TEST_CASE("nonconvergence witness") {
  const auto x = parse_expansion_spec("gaps:zeros:kruppel");
  ModulusRequest zeros{Schedule::zeros, {3, 4, 5}};
  const auto z = modulus_experiment(x, zeros);
  double previous = 0.0;
  for (const auto& pt : z.points) {
    CHECK(pt.ratio < previous);
    previous = pt.ratio;
  }
  CHECK(z.points.back().ratio < -0.9);

  ModulusRequest window{Schedule::kono_window, {3, 4, 5}};
  const auto w = modulus_experiment(x, window);
  double separation = 0.0;
  for (std::size_t i = 0; i < w.points.size(); ++i) {
    CHECK(w.points[i].ratio > -0.7);
    separation = std::max(separation, w.points[i].ratio - z.points[i].ratio);
  }
  CHECK(separation >= 0.3);
}
