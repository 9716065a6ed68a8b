#include "takagi/conditions.hpp"

#include "takagi/takagi.hpp"
#include "wide_int.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace takagi {

namespace {

std::int64_t narrow(__int128 v, const char* what) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error(std::string(what) + " does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

GapSequencePtr positions_of(const BinaryExpansion& x, DigitKind which, std::uint64_t count) {
  return gap_sequence_from_terms(x.describe(), gaps(x, count, which));
}

}  // namespace

std::vector<ConditionSample> condition_sequence(const GapSequence& g, std::uint64_t count) {
  std::vector<ConditionSample> out;
  out.reserve(count);
  for (std::uint64_t n = 1; n <= count; ++n) {
    ConditionSample s;
    s.n = n;
    s.a_n = g.at(n);
    s.a_next = g.at(n + 1);
    s.gap = s.a_next - s.a_n;
    const auto wide_n = static_cast<__int128>(n);
    s.begle_ayres = narrow(static_cast<__int128>(s.a_n) - 2 * wide_n, "a_n - 2n");
    s.exact_part = narrow(static_cast<__int128>(s.a_next) - 2 * static_cast<__int128>(s.a_n) + 2 * wide_n,
                          "a_{n+1} - 2a_n + 2n");
    s.log_gap = std::log2(static_cast<double>(s.gap));
    s.c_n = static_cast<double>(s.exact_part) - s.log_gap;
    s.ratio = Rat(detail::to_mpz(s.a_next), detail::to_mpz(s.a_n));
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ConditionSample> condition_sequence(const BinaryExpansion& x, DigitKind which,
                                                std::uint64_t count) {
  return condition_sequence(*positions_of(x, which, count + 1), count);
}

std::vector<std::int64_t> begle_ayres_sequence(const GapSequence& g, std::uint64_t count) {
  std::vector<std::int64_t> out;
  out.reserve(count);
  for (std::uint64_t n = 1; n <= count; ++n) {
    out.push_back(narrow(static_cast<__int128>(g.at(n)) - 2 * static_cast<__int128>(n), "a_n - 2n"));
  }
  return out;
}

std::vector<std::int64_t> begle_ayres_sequence(const BinaryExpansion& x, DigitKind which,
                                               std::uint64_t count) {
  return begle_ayres_sequence(*positions_of(x, which, count), count);
}

SufficientReport sufficient_check(const GapSequence& g, std::uint64_t count) {
  if (count < 10) throw std::invalid_argument("sufficient_check: need N >= 10");
  SufficientReport r;
  r.ratio_limsup_est = 0.0;
  r.density_liminf_est = std::numeric_limits<double>::infinity();
  for (std::uint64_t n = count / 2; n <= count; ++n) {
    const double a = static_cast<double>(g.at(n));
    const double next = static_cast<double>(g.at(n + 1));
    r.ratio_limsup_est = std::max(r.ratio_limsup_est, next / a);
    r.density_liminf_est = std::min(r.density_liminf_est, a / static_cast<double>(n));
  }
  r.epsilon = std::min(1.0, 2.0 - r.ratio_limsup_est);
  r.satisfied_empirically = r.epsilon > 0.0 && r.density_liminf_est > 2.0 / r.epsilon;
  return r;
}

std::string to_string(Trend t) {
  switch (t) {
    case Trend::diverges_minus: return "diverges_minus";
    case Trend::diverges_plus: return "diverges_plus";
    case Trend::bounded: return "bounded";
    case Trend::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

TrendReport classify_trend(const std::vector<double>& samples, std::uint64_t window,
                           TrendThresholds thresholds) {
  if (window < 2 || window > samples.size()) {
    throw std::invalid_argument("classify_trend: need 2 <= window <= number of samples");
  }
  TrendReport report;
  report.horizon = samples.size();
  report.last_values.assign(samples.end() - static_cast<std::ptrdiff_t>(window), samples.end());

  const auto& w = report.last_values;
  const double count = static_cast<double>(window);
  const double mean_x = (count - 1.0) / 2.0;
  const double mean_y = std::accumulate(w.begin(), w.end(), 0.0) / count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double dx = static_cast<double>(i) - mean_x;
    sxy += dx * (w[i] - mean_y);
    sxx += dx * dx;
  }
  report.window_slope = sxy / sxx;

  const double last = w.back();
  const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
  const double range = *hi - *lo;
  const double s = report.window_slope;
  if (s < -thresholds.slope && last < -thresholds.bound) {
    report.verdict = Trend::diverges_minus;
  } else if (s > thresholds.slope && last > thresholds.bound) {
    report.verdict = Trend::diverges_plus;
  } else if (range <= thresholds.bound && std::abs(s) <= thresholds.slope) {
    report.verdict = Trend::bounded;
  } else {
    report.verdict = Trend::inconclusive;
  }
  return report;
}

std::int64_t kruppel_window_closed_form(std::uint64_t n) {
  if (n < 1 || n > 29) throw std::out_of_range("kruppel_window_closed_form: need 1 <= n <= 29");
  const auto a_n = static_cast<std::int64_t>(1) << (2 * n);
  const std::int64_t a_next = a_n * 4;
  return 4 * a_n - a_next - 6 * static_cast<std::int64_t>(n) + 7;
}

Rat kruppel_window_slope(std::uint64_t n, std::uint64_t bit_budget) {
  if (n < 1 || n > 29) throw std::out_of_range("kruppel_window_slope: need 1 <= n <= 29");
  const std::uint64_t m = (std::uint64_t{1} << (2 * (n + 1))) - 1;
  if (m > bit_budget) {
    throw BudgetExceeded("kruppel_window_slope: m = " + std::to_string(m) + " exceeds bit budget " +
                         std::to_string(bit_budget));
  }
  const auto x = BinaryExpansion::of_gaps(builtin_generator("kruppel"), DigitKind::ones, bit_budget);
  // x is not dyadic, so k/2^m < x < (k+1)/2^m with k/2^m the m-digit truncation.
  const BigInt k = x.truncate(m).ldexp(static_cast<std::int64_t>(m)).num();
  const Dyadic diff = takagi_dyadic(BigInt(k + 1), m) - takagi_dyadic(BigInt(k - 2), m);
  return Rat(diff.ldexp(static_cast<std::int64_t>(m)));
}

BigInt dyadic_interval_slope(const BinaryExpansion& x, std::uint64_t m) {
  if (m == 0) throw std::out_of_range("dyadic_interval_slope: need m >= 1");
  if (!x.next_position(DigitKind::ones, m)) {
    throw std::invalid_argument("dyadic_interval_slope: x = k/2^" + std::to_string(m) +
                                " lies on the grid");
  }
  const BigInt k = x.truncate(m).ldexp(static_cast<std::int64_t>(m)).num();
  const Dyadic diff = takagi_dyadic(BigInt(k + 1), m) - takagi_dyadic(k, m);
  const Dyadic scaled = diff.ldexp(static_cast<std::int64_t>(m));
  if (scaled.exp() != 0) throw std::logic_error("dyadic_interval_slope: non-integer slope");
  return scaled.num();
}

}  // namespace takagi
