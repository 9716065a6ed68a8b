#include "takagi/modulus.hpp"

#include "takagi/kono.hpp"
#include "takagi/takagi.hpp"
#include "wide_int.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace takagi {

std::string to_string(DensityCase c) {
  switch (c) {
    case DensityCase::a: return "a";
    case DensityCase::b: return "b";
    case DensityCase::c: return "c";
    case DensityCase::irregular: return "irregular";
    case DensityCase::undetermined: return "undetermined";
  }
  return "undetermined";
}

std::string to_string(Schedule s) {
  switch (s) {
    case Schedule::plain: return "plain";
    case Schedule::zeros: return "zeros";
    case Schedule::kono_window: return "kono_window";
  }
  return "plain";
}

namespace {

// Max ratio of consecutive `which`-positions lying in (n/2, n].
std::optional<double> window_ratio(const BinaryExpansion& x, DigitKind which, std::uint64_t n) {
  std::vector<std::uint64_t> pos;
  for (std::uint64_t k = 0; auto next = x.next_position(which, k);) {
    if (*next > n) break;
    pos.push_back(*next);
    k = *next;
  }
  double worst = 0.0;
  bool any = false;
  for (std::size_t i = 1; i < pos.size(); ++i) {
    if (pos[i] <= n / 2) continue;
    worst = std::max(worst, static_cast<double>(pos[i]) / static_cast<double>(pos[i - 1]));
    any = true;
  }
  if (!any) return std::nullopt;
  return worst;
}

}  // namespace

DensityReport density_estimate(const BinaryExpansion& x, std::uint64_t n,
                               DensityThresholds thresholds) {
  if (n == 0) throw std::out_of_range("density_estimate: need n >= 1");
  DensityReport report;
  report.n = n;
  report.d1_estimate = stats(x, n).density_estimate;

  if (const auto* d = std::get_if<BinaryExpansion::FiniteDyadic>(&x.backend())) {
    (void)d;
    report.regular_case = DensityCase::b;
    report.note = "dyadic: finitely many ones, d1 = 0; case (b) holds vacuously";
    return report;
  }
  if (const auto* r = std::get_if<BinaryExpansion::RationalPeriodic>(&x.backend())) {
    const auto ones = std::count(r->period.begin(), r->period.end(), 1);
    const Rat d1(BigInt(static_cast<long>(ones)), BigInt(static_cast<unsigned long>(r->period.size())));
    report.regular_case = DensityCase::a;
    report.note = "periodic: d1 = " + d1.str() + " exactly";
    return report;
  }

  const double d1 = report.d1_estimate.to_double();
  const double half = n >= 2 ? stats(x, n / 2).density_estimate.to_double() : d1;
  if (std::abs(d1 - half) > thresholds.drift) {
    report.regular_case = DensityCase::irregular;
    report.note = "digit density drifts between n/2 and n";
    return report;
  }
  const bool low = d1 <= thresholds.extreme;
  const bool high = d1 >= 1.0 - thresholds.extreme;
  if (!low && !high) {
    report.regular_case = DensityCase::a;
    report.note = "finite-horizon estimate";
    return report;
  }
  const auto ratio = window_ratio(x, low ? DigitKind::ones : DigitKind::zeros, n);
  if (!ratio) {
    report.regular_case = DensityCase::undetermined;
    report.note = "too few sparse digits in the window";
    return report;
  }
  report.window_gap_ratio = *ratio;
  if (*ratio <= thresholds.ratio_regular) {
    report.regular_case = low ? DensityCase::b : DensityCase::c;
    report.note = "finite-horizon estimate";
  } else if (*ratio >= thresholds.ratio_irregular) {
    report.regular_case = DensityCase::irregular;
    report.note = "extreme density with gap ratio bounded away from 1";
  } else {
    report.regular_case = DensityCase::undetermined;
    report.note = "gap ratio between thresholds";
  }
  return report;
}

Rat modulus_delta(const Rat& x, const Dyadic& h) {
  if (h.is_zero()) throw std::domain_error("modulus_delta: h must be nonzero");
  const Rat y = x + Rat(h);
  if (x.sign() < 0 || x > Rat(1) || y.sign() <= 0 || y >= Rat(1)) {
    throw std::domain_error("modulus_delta: need x in [0, 1] and 0 < x + h < 1");
  }
  if (h.sign() > 0) return takagi_rational(y) - takagi_rational(x);
  const Rat xr = Rat(1) - x;
  return takagi_rational(xr + Rat(-h)) - takagi_rational(xr);
}

Rat difference_quotient(const Rat& x, const Dyadic& h) { return modulus_delta(x, h) / Rat(h); }

namespace {

double log2_inverse(const Dyadic& h) {
  // log2(1/|h|) = exp - log2|num|
  const BigInt mag = abs(h.num());
  long e = 0;
  const double mant = mpz_get_d_2exp(&e, mag.get_mpz_t());
  return static_cast<double>(h.exp()) - (std::log2(mant) + static_cast<double>(e));
}

}  // namespace

double scaled_quotient(const Rat& x, const Dyadic& h, Denominator mode) {
  const double lg = log2_inverse(h);
  if (!(lg > 0.0)) throw std::domain_error("scaled_quotient: need |h| < 1");
  double q = difference_quotient(x, h).to_double() / lg;
  if (mode == Denominator::abs_h && h.sign() < 0) q = -q;
  return q;
}

std::optional<double> predicted_modulus_limit(const BinaryExpansion& x, std::uint64_t horizon) {
  if (x.is_finite_dyadic()) return 1.0;
  if (const auto* r = std::get_if<BinaryExpansion::RationalPeriodic>(&x.backend())) {
    const auto ones = std::count(r->period.begin(), r->period.end(), 1);
    return 1.0 - 2.0 * static_cast<double>(ones) / static_cast<double>(r->period.size());
  }
  const DensityReport report = density_estimate(x, std::min(horizon, x.budget()));
  switch (report.regular_case) {
    case DensityCase::a: return 1.0 - 2.0 * report.d1_estimate.to_double();
    case DensityCase::b: return 1.0;
    case DensityCase::c: return -1.0;
    default: return std::nullopt;
  }
}

namespace {

ModulusPoint evaluate_point(const BinaryExpansion& x, std::uint64_t index, std::uint64_t p, int sign,
                            const ModulusRequest& req) {
  ModulusPoint pt;
  pt.index = index;
  pt.p = p;
  pt.sign = sign;
  pt.h = sign > 0 ? Dyadic::pow2_neg(p) : -Dyadic::pow2_neg(p);
  const double lg = static_cast<double>(p);
  const double denom_sign = (req.denominator == Denominator::signed_h) ? sign : 1.0;

  if (const auto xv = x.rational_value()) {
    Rat delta = modulus_delta(*xv, pt.h);
    pt.ratio = (delta * Rat(Dyadic(1).ldexp(static_cast<std::int64_t>(p)))).to_double() /
               (lg * denom_sign);
    pt.delta_exact = std::move(delta);
    return pt;
  }
  const BinaryExpansion base = sign > 0 ? x : reflect(x);
  const Pow2Sum moved = add_pow2(base, p);
  // widen N until the enclosure resolves the difference or the budget (M = 2N) runs out
  Interval delta;
  for (std::uint64_t terms = std::max<std::uint64_t>(2 * p, 64);; terms *= 2) {
    delta = takagi_enclosure(moved.value, terms) - takagi_enclosure(base, terms);
    const double mid_scaled = std::abs(delta.midpoint().ldexp(static_cast<std::int64_t>(p)).to_double());
    const double width_scaled = delta.width().ldexp(static_cast<std::int64_t>(p)).to_double();
    pt.relative_width = mid_scaled > 0.0 ? width_scaled / mid_scaled : INFINITY;
    if (pt.relative_width < req.max_relative_width || 4 * terms > base.budget()) break;
  }
  pt.ratio = delta.midpoint().ldexp(static_cast<std::int64_t>(p)).to_double() / (lg * denom_sign);
  pt.flagged = !(pt.relative_width < req.max_relative_width);
  pt.delta_enclosure = delta;
  return pt;
}

}  // namespace

ModulusTrace modulus_experiment(const BinaryExpansion& x, const ModulusRequest& req) {
  ModulusTrace trace;
  trace.schedule = req.schedule;
  trace.denominator = req.denominator;
  trace.predicted_limit = predicted_modulus_limit(x);

  switch (req.schedule) {
    case Schedule::plain:
      for (const std::uint64_t j : req.indices)
        for (const int s : req.signs) trace.points.push_back(evaluate_point(x, j, j, s, req));
      break;
    case Schedule::zeros: {
      if (req.indices.empty()) break;
      const auto b = gaps(x, *std::max_element(req.indices.begin(), req.indices.end()), DigitKind::zeros);
      for (const std::uint64_t n : req.indices) {
        if (n == 0) throw std::out_of_range("zeros schedule: n starts at 1");
        trace.points.push_back(evaluate_point(x, n, b[n - 1], 1, req));
      }
      break;
    }
    case Schedule::kono_window: {
      if (req.indices.empty()) break;
      const auto b =
          gaps(x, *std::max_element(req.indices.begin(), req.indices.end()) + 1, DigitKind::zeros);
      for (const std::uint64_t n : req.indices) {
        if (n == 0) throw std::out_of_range("kono_window schedule: n starts at 1");
        const std::uint64_t c = b[n] - b[n - 1];
        const std::uint64_t mstar = maximize_f(c).mstar;
        if (mstar >= b[n]) throw std::domain_error("kono_window schedule: window exceeds b_{n+1}");
        trace.points.push_back(evaluate_point(x, n, b[n] - mstar, 1, req));
      }
      break;
    }
  }
  return trace;
}

}  // namespace takagi
