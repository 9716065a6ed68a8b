// takagi-lab: command-line front end for the takagi_lab library.
//
// Every subcommand writes one table, either CSV (header row first) or JSON
// lines. Exact rationals are "num/den" strings; floating-point columns end
// in _approx.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or input error.

#include "takagi/acceptance.hpp"
#include "takagi/conditions.hpp"
#include "takagi/kono.hpp"
#include "takagi/modulus.hpp"
#include "takagi/spec_parser.hpp"
#include "takagi/takagi.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace takagi;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class Table {
public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(json row) { rows_.push_back(std::move(row)); }

  void write(std::ostream& out, const std::string& format) const {
    if (format == "json") {
      for (const auto& row : rows_) out << row.dump() << '\n';
      return;
    }
    for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
    out << '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) out << ',';
        const auto it = row.find(columns_[i]);
        if (it == row.end() || it->is_null()) continue;
        out << csv_cell(*it);
      }
      out << '\n';
    }
  }

private:
  static std::string csv_cell(const json& v) {
    if (!v.is_string()) return v.dump();
    const auto& s = v.get_ref<const std::string&>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + '"';
  }

  std::vector<std::string> columns_;
  std::vector<json> rows_;
};

json interval_json(const Interval& iv) { return json::array({iv.lo().str(), iv.hi().str()}); }

/// "a..b", "a" or comma-separated mixtures of both.
std::vector<std::uint64_t> parse_range(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      const auto dots = item.find("..");
      std::size_t used = 0;
      if (dots == std::string::npos) {
        out.push_back(std::stoull(item, &used));
        if (used != item.size()) throw std::invalid_argument("");
      } else {
        const std::string a = item.substr(0, dots), b = item.substr(dots + 2);
        const auto lo = std::stoull(a, &used);
        if (used != a.size()) throw std::invalid_argument("");
        const auto hi = std::stoull(b, &used);
        if (used != b.size() || hi < lo || hi - lo > 1000000) throw std::invalid_argument("");
        for (auto v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::exception&) {
      throw UsageError("bad range '" + item + "' (expected N, A..B or a comma list)");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::uint64_t default_bit_budget() {
  if (const char* env = std::getenv("TAKAGI_LAB_BIT_BUDGET")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("TAKAGI_LAB_BIT_BUDGET is not a positive integer: '") + env + "'");
  }
  return kDefaultBitBudget;
}

// ------------------------------------------------------------------ eval

int cmd_eval(const std::string& spec, std::uint64_t terms, std::uint64_t budget, const std::string& format) {
  const auto x = parse_expansion_spec(spec, budget);
  Table t({"spec", "provenance", "value", "lo", "hi", "width", "terms", "value_approx"});
  json row{{"spec", spec}};
  if (const auto r = x.rational_value()) {
    const Rat v = takagi_rational(*r);
    row["provenance"] = "exact";
    row["value"] = v.str();
    row["lo"] = v.str();
    row["hi"] = v.str();
    row["width"] = "0";
    row["value_approx"] = v.to_double();
  } else {
    const Interval iv = takagi_enclosure(x, terms);
    row["provenance"] = iv.is_point() ? "exact" : "enclosed";
    row["value"] = iv.is_point() ? json(iv.lo().str()) : json();
    row["lo"] = iv.lo().str();
    row["hi"] = iv.hi().str();
    row["width"] = iv.width().str();
    row["terms"] = terms;
    row["value_approx"] = iv.midpoint().to_double();
  }
  t.add(row);
  t.write(std::cout, format);
  return 0;
}

// -------------------------------------------------------------- classify

// Positions of `which` digits, stopping quietly at the bit budget.
std::vector<std::uint64_t> available_positions(const BinaryExpansion& x, DigitKind which, std::uint64_t count) {
  std::vector<std::uint64_t> out;
  std::uint64_t pos = 0;
  try {
    while (out.size() < count) {
      const auto next = x.next_position(which, pos);
      if (!next) break;
      out.push_back(*next);
      pos = *next;
    }
  } catch (const BudgetExceeded&) {
  } catch (const GeneratorExhausted&) {
  }
  return out;
}

struct ConditionRow {
  std::string name;
  std::string statement;
  TrendReport report;
  Trend wanted;
  std::uint64_t samples = 0;
  std::uint64_t window = 0;
};

int cmd_classify(const std::string& spec, std::uint64_t horizon, std::uint64_t window, std::uint64_t budget,
                 const std::string& format) {
  const auto x = parse_expansion_spec(spec, budget);
  if (x.is_finite_dyadic()) {
    throw UsageError("classify: " + spec + " is dyadic (T'_+ = +inf and T'_- = -inf there)");
  }
  if (horizon < 4) throw UsageError("classify: --N must be at least 4");

  auto run = [&](DigitKind which, bool second_order) {
    const auto pos = available_positions(x, which, horizon + 1);
    const auto seq = gap_sequence_from_terms("prefix", pos);
    std::vector<double> values;
    if (second_order) {
      if (pos.size() >= 2) {
        for (const auto& s : condition_sequence(*seq, pos.size() - 1)) values.push_back(s.c_n);
      }
    } else {
      for (auto v : begle_ayres_sequence(*seq, std::min<std::uint64_t>(pos.size(), horizon)))
        values.push_back(static_cast<double>(v));
    }
    if (values.size() < 3) {
      throw UsageError("classify: only " + std::to_string(values.size()) +
                       " samples available within the bit budget; raise --bit-budget");
    }
    return values;
  };

  std::vector<ConditionRow> rows;
  auto add = [&](std::string name, std::string statement, DigitKind which, bool second, Trend wanted) {
    const auto values = run(which, second);
    const auto w = std::min<std::uint64_t>(window, values.size());
    rows.push_back({std::move(name), std::move(statement), classify_trend(values, w), wanted, values.size(), w});
  };
  add("i", "a_n - 2n -> +inf  <=>  T'_+ = +inf", DigitKind::ones, false, Trend::diverges_plus);
  add("ii", "a_{n+1} - 2a_n + 2n - log2(a_{n+1} - a_n) -> -inf  <=>  T'_- = +inf", DigitKind::ones, true,
      Trend::diverges_minus);
  add("iii", "b_{n+1} - 2b_n + 2n - log2(b_{n+1} - b_n) -> -inf  <=>  T'_+ = -inf", DigitKind::zeros, true,
      Trend::diverges_minus);
  add("iv", "b_n - 2n -> +inf  <=>  T'_- = -inf", DigitKind::zeros, false, Trend::diverges_plus);

  auto status = [](const ConditionRow& r) {
    if (r.report.verdict == r.wanted) return std::string("holds");
    if (r.report.verdict == Trend::inconclusive) return std::string("inconclusive");
    return std::string("fails");
  };

  Table t({"condition", "statement", "horizon", "window", "slope_approx", "last_value_approx", "verdict",
           "status"});
  for (const auto& r : rows) {
    t.add({{"condition", r.name},
           {"statement", r.statement},
           {"horizon", r.samples},
           {"window", r.window},
           {"slope_approx", r.report.window_slope},
           {"last_value_approx", r.report.last_values.empty() ? 0.0 : r.report.last_values.back()},
           {"verdict", to_string(r.report.verdict)},
           {"status", status(r)}});
  }

  auto two_sided = [&](const ConditionRow& right, const ConditionRow& left, const char* sign) {
    const std::string s_right = status(right), s_left = status(left);
    const std::string inf = std::string(sign) + "inf";
    if (s_right == "holds" && s_left == "holds") return "consistent with T'(x) = " + inf;
    if (s_right == "holds") return "one-sided only: T'_+ = " + inf + ", T'_- fails";
    if (s_left == "holds") return "one-sided only: T'_- = " + inf + ", T'_+ fails";
    if (s_right == "inconclusive" || s_left == "inconclusive") return std::string("inconclusive");
    return "no " + inf + " derivative";
  };
  const auto plus = two_sided(rows[0], rows[1], "+");
  const auto minus = two_sided(rows[2], rows[3], "-");
  t.add({{"condition", "T'=+inf"},
         {"statement", "(i) and (ii); equivalently (ii) alone"},
         {"horizon", horizon},
         {"verdict", status(rows[1]) == "holds" ? "holds" : status(rows[1])},
         {"status", plus}});
  t.add({{"condition", "T'=-inf"},
         {"statement", "(iii) and (iv); equivalently (iii) alone"},
         {"horizon", horizon},
         {"verdict", status(rows[2]) == "holds" ? "holds" : status(rows[2])},
         {"status", minus}});
  t.write(std::cout, format);
  std::cerr << "finite-horizon heuristic: trends over the last " << window << " of up to " << horizon
            << " samples\n";
  return 0;
}

// ------------------------------------------------------------------ kono

int cmd_kono(const std::string& spec, std::uint64_t p, std::uint64_t depth, std::uint64_t budget,
             const std::string& format) {
  if (p == 0) throw UsageError("kono: --p must be positive");
  const auto x = parse_expansion_spec(spec, budget);
  const KonoSplit s = kono_split(x, p, depth);
  const std::string check = !s.reference_delta ? "UNCHECKED" : (s.identity_holds() ? "PASS" : "FAIL");
  Table t({"spec", "p", "h", "k0", "sigma1", "sigma2_factor", "middle", "sigma2", "sigma3", "total", "width",
           "reference_delta", "provenance", "identity", "sigma3_le_2h"});
  const bool small_s3 = s.sigma3.magnitude() <= s.h * Dyadic(2);
  json row{{"spec", spec},
           {"p", s.p},
           {"h", s.h.str()},
           {"k0", s.k0},
           {"sigma1", s.sigma1.str()},
           {"sigma2_factor", s.sigma2_factor_exact ? json(s.sigma2_factor_exact->str())
                                                    : interval_json(s.sigma2_factor)},
           {"middle", s.middle},
           {"sigma2", interval_json(s.sigma2)},
           {"sigma3", interval_json(s.sigma3)},
           {"total", interval_json(s.total)},
           {"width", s.total.width().str()},
           {"reference_delta", s.reference_delta ? json(s.reference_delta->str()) : json()},
           {"provenance", s.reference_delta ? "exact" : "enclosed"},
           {"identity", check},
           {"sigma3_le_2h", small_s3 ? "PASS" : "FAIL"}};
  if (format != "json") {
    for (const char* key : {"sigma2_factor", "sigma2", "sigma3", "total"}) {
      if (row[key].is_array()) row[key] = "[" + row[key][0].get<std::string>() + ";" + row[key][1].get<std::string>() + "]";
    }
  }
  t.add(row);
  t.write(std::cout, format);
  return check == "FAIL" || !small_s3 ? 1 : 0;
}

// ---------------------------------------------------------------- secant

int cmd_secant(bool kruppel, const std::vector<std::uint64_t>& ns, const std::string& spec,
               const std::vector<std::uint64_t>& ms, std::uint64_t budget, const std::string& format) {
  bool ok = true;
  if (kruppel) {
    Table t({"n", "m", "slope", "closed_form", "check"});
    for (const auto n : ns) {
      if (n == 0) throw UsageError("secant: n must be positive");
      const Rat slope = kruppel_window_slope(n, budget);
      const auto closed = kruppel_window_closed_form(n);
      const bool match = slope == Rat(closed);
      ok = ok && match;
      const std::uint64_t m = (std::uint64_t{1} << (2 * n + 2)) - 1;
      t.add({{"n", n},
             {"m", m},
             {"slope", slope.str()},
             {"closed_form", std::to_string(closed)},
             {"check", match ? "matches 7-6n" : "MISMATCH"}});
    }
    t.write(std::cout, format);
    return ok ? 0 : 1;
  }
  if (spec.empty()) throw UsageError("secant: give a SPEC with --m, or --kruppel with --n");
  const auto x = parse_expansion_spec(spec, budget);
  Table t({"spec", "m", "slope", "deficiency", "check"});
  for (const auto m : ms) {
    const BigInt slope = dyadic_interval_slope(x, m);
    const auto d = stats(x, m).deficiency;
    const bool match = slope == d;
    ok = ok && match;
    t.add({{"spec", spec},
           {"m", m},
           {"slope", slope.get_str()},
           {"deficiency", std::to_string(d)},
           {"check", match ? "matches D_m" : "MISMATCH"}});
  }
  t.write(std::cout, format);
  return ok ? 0 : 1;
}

// --------------------------------------------------------------- modulus

int cmd_modulus(const std::string& spec, const std::string& schedule, const std::vector<std::uint64_t>& indices,
                const std::string& sign, const std::string& denominator, std::uint64_t budget,
                const std::string& format) {
  const auto x = parse_expansion_spec(spec, budget);
  ModulusRequest req;
  req.schedule = schedule == "zeros" ? Schedule::zeros
                 : schedule == "kono_window" ? Schedule::kono_window
                                             : Schedule::plain;
  req.indices = indices;
  req.signs = sign == "both" ? std::vector<int>{1, -1} : std::vector<int>{sign == "-" ? -1 : 1};
  req.denominator = denominator == "abs" ? Denominator::abs_h : Denominator::signed_h;
  const ModulusTrace trace = modulus_experiment(x, req);

  Table t({"schedule", "index", "p", "sign", "h", "provenance", "delta", "delta_lo", "delta_hi", "width",
           "ratio_approx", "relative_width_approx", "flagged", "predicted_limit_approx"});
  bool flagged = false;
  for (const auto& pt : trace.points) {
    json row{{"schedule", to_string(trace.schedule)},
             {"index", pt.index},
             {"p", pt.p},
             {"sign", pt.sign},
             {"h", pt.h.str()}};
    if (pt.delta_exact) {
      row["provenance"] = "exact";
      row["delta"] = pt.delta_exact->str();
      row["delta_lo"] = pt.delta_exact->str();
      row["delta_hi"] = pt.delta_exact->str();
      row["width"] = "0";
    } else {
      row["provenance"] = "enclosed";
      row["delta"] = json();
      row["delta_lo"] = pt.delta_enclosure->lo().str();
      row["delta_hi"] = pt.delta_enclosure->hi().str();
      row["width"] = pt.delta_enclosure->width().str();
    }
    row["ratio_approx"] = pt.ratio;
    row["relative_width_approx"] = pt.relative_width;
    row["flagged"] = pt.flagged;
    row["predicted_limit_approx"] = trace.predicted_limit ? json(*trace.predicted_limit) : json();
    flagged = flagged || pt.flagged;
    t.add(std::move(row));
  }
  t.write(std::cout, format);
  if (flagged) std::cerr << "warning: some enclosures are wider than the relative-width threshold\n";
  return 0;
}

// -------------------------------------------------------------- selftest

int cmd_selftest(std::uint64_t seed, const std::string& format) {
  Table t({"criterion", "result", "detail", "description"});
  bool ok = true;
  for (const auto& r : run_acceptance(seed)) {
    ok = ok && r.passed;
    std::cerr << r.id << ": " << r.seconds << " s\n";
    t.add({{"criterion", r.id},
           {"result", r.passed ? "PASS" : "FAIL"},
           {"detail", r.detail},
           {"description", r.description}});
  }
  t.write(std::cout, format);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact evaluation and derivative diagnostics for the Takagi function"};
  app.require_subcommand(1);
  app.footer(
      "SPEC: dyadic:K/2^M | rational:P/Q | gaps:[ones:|zeros:]RULE\n"
      "RULE: linear:K | poly:C0,C1,.. | geo:A | kruppel | pow2plus:B | primes | sqrtdrift | logdrift | normalmix\n"
      "Exit codes: 0 success, 1 check failure, 2 usage or input error.");

  std::string format = "csv";
  std::uint64_t budget = 0;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--bit-budget", budget, "Largest digit position materialized (default 2^20 or $TAKAGI_LAB_BIT_BUDGET)");

  std::string spec;
  std::uint64_t terms = 64, horizon = 256, window = 64, p = 0, depth = 0, seed = kAcceptanceSeed;
  std::string j_range = "16..64", n_range, m_range, schedule = "plain", sign = "+", denominator = "signed";
  bool kruppel = false;

  auto* eval = app.add_subcommand("eval", "T(x): exact for dyadic/rational specs, enclosure for gap rules");
  eval->add_option("spec", spec, "Expansion spec")->required();
  eval->add_option("--N", terms, "Series terms for the enclosure")->check(CLI::Range(1, 1 << 24));
  eval->footer("CSV columns: spec,provenance,value,lo,hi,width,terms,value_approx");

  auto* classify = app.add_subcommand("classify", "Finite-horizon trends of the four derivative conditions");
  classify->add_option("spec", spec, "Expansion spec (non-dyadic)")->required();
  classify->add_option("--N", horizon, "Number of samples");
  classify->add_option("--window", window, "Trailing samples used for the trend")->check(CLI::Range(2, 1 << 30));
  classify->footer(
      "CSV columns: condition,statement,horizon,window,slope_approx,last_value_approx,verdict,status\n"
      "Rows i-iv are the one-sided conditions; the last two rows combine them into two-sided verdicts.");

  auto* kono = app.add_subcommand("kono", "Kono split of T(x + 2^-p) - T(x)");
  kono->add_option("spec", spec, "Expansion spec")->required();
  kono->add_option("--p", p, "Step exponent, h = 2^-p")->required();
  kono->add_option("--depth", depth, "Truncation depth K (default max(80, 2p))");
  kono->footer(
      "CSV columns: spec,p,h,k0,sigma1,sigma2_factor,middle,sigma2,sigma3,total,width,reference_delta,"
      "provenance,identity,sigma3_le_2h\nIntervals print as [lo;hi].");

  auto* secant = app.add_subcommand("secant", "Dyadic secant slopes");
  secant->add_option("spec", spec, "Expansion spec (with --m)");
  secant->add_flag("--kruppel", kruppel, "Kruppel window slopes for x = sum 2^-(4^n)");
  secant->add_option("--n", n_range, "n values for --kruppel, e.g. 1..5");
  secant->add_option("--m", m_range, "Dyadic levels m, e.g. 1..40");
  secant->footer("CSV columns (--kruppel): n,m,slope,closed_form,check\nCSV columns (SPEC): spec,m,slope,deficiency,check");

  auto* modulus = app.add_subcommand("modulus", "Scaled difference quotients (T(x+h) - T(x)) / (h log2(1/|h|))");
  modulus->add_option("spec", spec, "Expansion spec")->required();
  modulus->add_option("--schedule", schedule, "Step schedule")->check(CLI::IsMember({"plain", "zeros", "kono_window"}));
  modulus->add_option("--j", j_range, "j values for the plain schedule (h = +-2^-j), e.g. 16..256");
  modulus->add_option("--n", n_range, "n values for the zeros and kono_window schedules");
  modulus->add_option("--sign", sign, "Sign of h for the plain schedule")->check(CLI::IsMember({"+", "-", "both"}));
  modulus->add_option("--denominator", denominator, "h or |h| in the denominator")
      ->check(CLI::IsMember({"signed", "abs"}));
  modulus->footer(
      "CSV columns: schedule,index,p,sign,h,provenance,delta,delta_lo,delta_hi,width,ratio_approx,"
      "relative_width_approx,flagged,predicted_limit_approx");

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_option("--seed", seed, "Seed for the randomized criteria");
  selftest->footer("CSV columns: criterion,result,detail,description\nTimings go to stderr.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (budget == 0) budget = default_bit_budget();
    if (*eval) return cmd_eval(spec, terms, budget, format);
    if (*classify) return cmd_classify(spec, horizon, window, budget, format);
    if (*kono) return cmd_kono(spec, p, depth, budget, format);
    if (*secant) {
      if (kruppel && !spec.empty()) throw UsageError("secant: --kruppel takes no SPEC");
      if (kruppel && n_range.empty()) throw UsageError("secant: --kruppel needs --n");
      if (!kruppel && m_range.empty()) throw UsageError("secant: SPEC needs --m");
      return cmd_secant(kruppel, kruppel ? parse_range(n_range) : std::vector<std::uint64_t>{}, spec,
                        kruppel ? std::vector<std::uint64_t>{} : parse_range(m_range), budget, format);
    }
    if (*modulus) {
      const bool plain = schedule == "plain";
      if (!plain && n_range.empty()) throw UsageError("modulus: --schedule " + schedule + " needs --n");
      return cmd_modulus(spec, schedule, parse_range(plain ? j_range : n_range), sign, denominator, budget,
                         format);
    }
    if (*selftest) return cmd_selftest(seed, format);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << " (raise --bit-budget)\n";
    return 2;
  } catch (const GeneratorExhausted& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
