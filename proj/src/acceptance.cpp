#include "takagi/acceptance.hpp"

#include "takagi/conditions.hpp"
#include "takagi/kono.hpp"
#include "takagi/modulus.hpp"
#include "takagi/spec_parser.hpp"
#include "takagi/takagi.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace takagi {

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void fail(const std::string& what) {
    if (ok) detail << what;
    ok = false;
  }
};

CriterionResult timed(std::string id, std::string description, double time_limit,
                      const std::function<void(Check&)>& body) {
  CriterionResult r{std::move(id), std::move(description), false, "", 0.0};
  Check check;
  const auto start = Clock::now();
  try {
    body(check);
  } catch (const std::exception& e) {
    check.fail(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (time_limit > 0.0 && r.seconds > time_limit) {
    check.fail(" exceeded time limit " + std::to_string(time_limit) + " s");
  }
  r.passed = check.ok;
  r.detail = check.detail.str();
  return r;
}

Rat random_unit_rational(std::mt19937_64& rng, long max_den) {
  std::uniform_int_distribution<long> den_dist(2, max_den);
  const long den = den_dist(rng);
  std::uniform_int_distribution<long> num_dist(0, den - 1);
  return Rat(BigInt(num_dist(rng)), BigInt(den));
}

BigInt pow2(std::uint64_t e) { return BigInt(1) << static_cast<mp_bitcnt_t>(e); }

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  std::mt19937_64 rng(seed);

  out.push_back(timed("exact-formula", "T(k/2^m) dyadic formula equals orbit series, m <= 12", 10.0,
                      [](Check& c) {
                        std::uint64_t cases = 0;
                        for (std::uint64_t m = 0; m <= 12; ++m) {
                          for (unsigned long k = 0; k <= (1UL << m); ++k, ++cases) {
                            const Rat series = takagi_rational(Rat(BigInt(k), pow2(m)));
                            if (Rat(takagi_dyadic(BigInt(k), m)) != series) {
                              c.fail("mismatch at k=" + std::to_string(k) + " m=" + std::to_string(m));
                            }
                          }
                        }
                        c.detail << cases << " cases";
                      }));

  out.push_back(timed("pow2-points", "T(2^-j) = j 2^-j for 1 <= j <= 64", 0.0, [](Check& c) {
    for (std::uint64_t j = 1; j <= 64; ++j) {
      const Dyadic expected(BigInt(static_cast<unsigned long>(j)), j);
      if (takagi_dyadic(BigInt(1), j) != expected ||
          takagi_rational(Rat(BigInt(1), pow2(j))) != Rat(expected)) {
        c.fail("j=" + std::to_string(j));
      }
    }
    c.detail << "64 points";
  }));

  out.push_back(timed("kruppel-identity", "Kruppel window slope equals 7 - 6n, n = 1..5", 30.0,
                      [](Check& c) {
                        for (std::uint64_t n = 1; n <= 5; ++n) {
                          const Rat slope = kruppel_window_slope(n);
                          const auto closed = kruppel_window_closed_form(n);
                          if (slope != Rat(closed) || closed != 7 - 6 * static_cast<std::int64_t>(n)) {
                            c.fail("n=" + std::to_string(n) + " slope=" + slope.str());
                          }
                          c.detail << slope.str() << (n < 5 ? "," : "");
                        }
                      }));

  out.push_back(timed("dyadic-slope", "dyadic-interval slope equals D_m, 300 random cases", 0.0,
                      [&rng](Check& c) {
                        std::uniform_int_distribution<std::uint64_t> m_dist(1, 200);
                        int done = 0;
                        while (done < 300) {
                          const Rat x = random_unit_rational(rng, 1000000);
                          const std::uint64_t m = m_dist(rng);
                          const auto ex = expansion_of_rational(x);
                          if (!ex.next_position(DigitKind::ones, m)) continue;  // x on the grid
                          const BigInt slope = dyadic_interval_slope(ex, m);
                          if (slope != stats(ex, m).deficiency) c.fail("x=" + x.str() + " m=" + std::to_string(m));
                          ++done;
                        }
                        c.detail << done << " cases";
                      }));

  // Kono splits shared by the identity and |S3| criteria.
  std::vector<KonoSplit> splits;
  out.push_back(timed("kono-identity",
                      "T(x+2^-p) - T(x) in S1+S2+S3, width <= 2^-78, 1000 cases (den <= 1e4, p <= 60, K = 80)",
                      0.0, [&](Check& c) {
                        std::uniform_int_distribution<std::uint64_t> p_dist(1, 60);
                        const Dyadic max_width = Dyadic::pow2_neg(78);
                        while (splits.size() < 1000) {
                          const Rat x = random_unit_rational(rng, 10000);
                          const std::uint64_t p = p_dist(rng);
                          const auto ex = expansion_of_rational(x);
                          if (!ex.next_position(DigitKind::zeros, 0) ||
                              *ex.next_position(DigitKind::zeros, 0) > p) {
                            continue;  // all-ones prefix: x + 2^-p >= 1
                          }
                          KonoSplit s = kono_split(ex, p, 80);
                          if (!s.reference_delta || !s.identity_holds()) {
                            c.fail("x=" + x.str() + " p=" + std::to_string(p));
                          }
                          if (s.total.width() > max_width) c.fail("width at x=" + x.str());
                          splits.push_back(std::move(s));
                        }
                        c.detail << splits.size() << " splits";
                      }));

  out.push_back(timed("sigma3-bound", "|S3| <= 2h on every generated split", 0.0, [&](Check& c) {
    if (splits.empty()) c.fail("no splits generated");
    for (const auto& s : splits) {
      if (s.sigma3.magnitude() > s.h * Dyadic(2)) c.fail("p=" + std::to_string(s.p));
    }
    c.detail << splits.size() << " splits";
  }));

  out.push_back(timed("key-inequality",
                      "S2 factor <= h, and >= -h(1-2^-m) when e_{p+m+1} = 0, 1000 cases, m = 0..20", 0.0,
                      [&rng](Check& c) {
                        std::uniform_int_distribution<std::uint64_t> p_dist(1, 60);
                        int done = 0;
                        std::uint64_t lower_checks = 0;
                        while (done < 1000) {
                          const Rat x = random_unit_rational(rng, 10000);
                          const std::uint64_t p = p_dist(rng);
                          const auto ex = expansion_of_rational(x);
                          const auto first_zero = ex.next_position(DigitKind::zeros, 0);
                          if (!first_zero || *first_zero > p) continue;
                          const Sigma2Factor f = sigma2_factor(ex, p);
                          const Dyadic h = Dyadic::pow2_neg(p);
                          if (f.value.hi() > h) c.fail("upper bound at x=" + x.str());
                          for (std::uint64_t m = 0; m <= 20; ++m) {
                            if (ex.digit(p + m + 1) != 0) continue;
                            ++lower_checks;
                            const Dyadic bound = -(h - h * Dyadic::pow2_neg(m));
                            if (f.value.lo() < bound) c.fail("lower bound at x=" + x.str() + " m=" + std::to_string(m));
                          }
                          ++done;
                        }
                        c.detail << done << " cases, " << lower_checks << " lower-bound checks";
                      }));

  out.push_back(timed("maximizer-bracket", "log2 c - 2 < m* <= log2 c + 1 for c = 1..2^16", 10.0,
                      [](Check& c) {
                        for (std::uint64_t cc = 1; cc <= (1U << 16); ++cc) {
                          const std::uint64_t m = maximize_f(cc).mstar;
                          // m <= log2 c + 1  <=>  2^(m-1) <= c ;  log2 c - 2 < m  <=>  c < 2^(m+2)
                          const bool upper = m == 0 || (std::uint64_t{1} << (m - 1)) <= cc;
                          const bool lower = cc < (std::uint64_t{1} << (m + 2));
                          if (!upper || !lower) c.fail("c=" + std::to_string(cc));
                        }
                        c.detail << 65536 << " values of c";
                      }));

  out.push_back(timed("condition-closed-forms",
                      "c_n(3n) and c_n(2^n+n) match closed forms within 1e-12, n <= 60", 0.0, [](Check& c) {
                        const auto lin = condition_sequence(*builtin_generator("linear", "3"), 60);
                        const auto pow = condition_sequence(*builtin_generator("pow2plus", "1"), 60);
                        double worst = 0.0;
                        for (std::uint64_t n = 1; n <= 60; ++n) {
                          const double dn = static_cast<double>(n);
                          const double lin_expected = 3.0 - dn - std::log2(3.0);
                          // n + 1 - log2(2^n + 1) = 1 - log2(1 + 2^-n)
                          const double pow_expected = 1.0 - std::log1p(std::ldexp(1.0, -static_cast<int>(n))) / std::log(2.0);
                          worst = std::max({worst, std::abs(lin[n - 1].c_n - lin_expected),
                                            std::abs(pow[n - 1].c_n - pow_expected)});
                        }
                        if (worst > 1e-12) c.fail("max deviation " + std::to_string(worst));
                        c.detail << "max deviation " << worst;
                      }));

  out.push_back(timed("modulus-envelopes",
                      "|ratio - 1| <= (2m+4)/j at k/2^m (m <= 8); |ratio(1/3)| <= 8/j; |ratio(1/7) - 1/3| <= 10/j",
                      0.0, [](Check& c) {
                        const std::uint64_t js[] = {32, 64, 128, 256};
                        std::uint64_t points = 0;
                        double worst = 0.0;
                        for (std::uint64_t m = 0; m <= 8; ++m) {
                          for (unsigned long k = 0; k < (1UL << m); ++k) {
                            if (m > 0 && k % 2 == 0) continue;  // k/2^m in lowest terms
                            const Rat x(BigInt(k), pow2(m));
                            for (const auto j : js) {
                              for (const int sign : {1, -1}) {
                                const Dyadic h = sign > 0 ? Dyadic::pow2_neg(j) : -Dyadic::pow2_neg(j);
                                const Rat y = x + Rat(h);
                                if (y.sign() <= 0 || y >= Rat(1)) continue;
                                const double r = scaled_quotient(x, h, Denominator::abs_h);
                                const double env = (2.0 * static_cast<double>(m) + 4.0) / static_cast<double>(j);
                                worst = std::max(worst, std::abs(r - 1.0) / env);
                                if (std::abs(r - 1.0) > env) c.fail("x=" + x.str() + " j=" + std::to_string(j));
                                ++points;
                              }
                            }
                          }
                        }
                        for (const auto j : js) {
                          const double dj = static_cast<double>(j);
                          const double r3 = scaled_quotient(Rat(BigInt(1), BigInt(3)), Dyadic::pow2_neg(j));
                          const double r7 = scaled_quotient(Rat(BigInt(1), BigInt(7)), Dyadic::pow2_neg(j));
                          if (std::abs(r3) > 8.0 / dj) c.fail("x=1/3 j=" + std::to_string(j));
                          if (std::abs(r7 - 1.0 / 3.0) > 10.0 / dj) c.fail("x=1/7 j=" + std::to_string(j));
                          points += 2;
                        }
                        c.detail << points << " points, dyadic envelope use " << worst;
                      }));

  out.push_back(timed("nonconvergence-witness",
                      "b_n = 4^n: zeros-schedule ratio at n=6 <= -0.9, kono-window ratio >= -0.7", 0.0,
                      [](Check& c) {
                        const auto x = parse_expansion_spec("gaps:zeros:kruppel");
                        ModulusRequest zeros{Schedule::zeros, {6}};
                        ModulusRequest window{Schedule::kono_window, {6}};
                        const auto z = modulus_experiment(x, zeros).points.at(0);
                        const auto w = modulus_experiment(x, window).points.at(0);
                        if (z.flagged || w.flagged) c.fail("enclosure too wide");
                        if (!(z.ratio <= -0.9)) c.fail("zeros ratio " + std::to_string(z.ratio));
                        if (!(w.ratio >= -0.7)) c.fail("window ratio " + std::to_string(w.ratio));
                        c.detail << "zeros " << z.ratio << " (p=" << z.p << "), window " << w.ratio
                                 << " (p=" << w.p << ")";
                      }));

  out.push_back(timed("normalmix",
                      "normalmix prefix 3,5,7,9,14,15,16,20 and 2n+floor(sqrt n)-1 <= a_n <= 2n+3floor(sqrt n), n <= 1e4",
                      0.0, [](Check& c) {
                        const auto g = builtin_generator("normalmix");
                        const std::vector<std::uint64_t> expected{3, 5, 7, 9, 14, 15, 16, 20};
                        if (g->prefix(8) != expected) c.fail("prefix mismatch");
                        for (std::uint64_t n = 1; n <= 10000; ++n) {
                          const std::uint64_t a = g->at(n);
                          auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
                          while (r * r > n) --r;
                          while ((r + 1) * (r + 1) <= n) ++r;
                          if (a + 1 < 2 * n + r || a > 2 * n + 3 * r) c.fail("n=" + std::to_string(n));
                        }
                        c.detail << "10000 terms";
                      }));

  return out;
}

}  // namespace takagi
