#include "takagi/gap_sequence.hpp"

#include "takagi/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace takagi {

GapSequence::GapSequence(std::string kind, Rule rule)
    : kind_(std::move(kind)), rule_(std::move(rule)) {}

void GapSequence::extend_locked(std::uint64_t count, std::uint64_t bound) const {
  while (!ended_ && (terms_.size() < count || (terms_.empty() || terms_.back() <= bound))) {
    const std::uint64_t n = terms_.size() + 1;
    const auto next = rule_(n, std::span<const std::uint64_t>(terms_));
    if (!next || *next > kMaxTerm) {
      ended_ = true;
      break;
    }
    if (*next < 1 || (!terms_.empty() && *next <= terms_.back())) {
      std::ostringstream msg;
      msg << "gap sequence '" << kind_ << "' is not strictly increasing at n=" << n << " (value "
          << *next;
      if (!terms_.empty()) msg << ", previous " << terms_.back();
      msg << ")";
      throw std::invalid_argument(msg.str());
    }
    terms_.push_back(*next);
  }
}

std::uint64_t GapSequence::at(std::uint64_t n) const {
  if (n == 0) throw std::out_of_range("GapSequence::at: index is 1-based");
  std::lock_guard lock(mu_);
  if (terms_.size() < n) extend_locked(n, 0);
  if (terms_.size() < n) {
    throw GeneratorExhausted("gap sequence '" + kind_ + "' has no representable term at n=" +
                             std::to_string(n));
  }
  return terms_[n - 1];
}

std::vector<std::uint64_t> GapSequence::prefix(std::size_t count) const {
  if (count > 0) at(count);
  std::lock_guard lock(mu_);
  return {terms_.begin(), terms_.begin() + static_cast<std::ptrdiff_t>(count)};
}

std::uint64_t GapSequence::count_le(std::uint64_t pos) const {
  std::lock_guard lock(mu_);
  extend_locked(0, pos);
  return static_cast<std::uint64_t>(std::upper_bound(terms_.begin(), terms_.end(), pos) -
                                    terms_.begin());
}

bool GapSequence::contains(std::uint64_t pos) const {
  std::lock_guard lock(mu_);
  extend_locked(0, pos);
  return std::binary_search(terms_.begin(), terms_.end(), pos);
}

std::optional<std::uint64_t> GapSequence::next_after(std::uint64_t pos) const {
  std::lock_guard lock(mu_);
  extend_locked(0, pos);
  const auto it = std::upper_bound(terms_.begin(), terms_.end(), pos);
  if (it == terms_.end()) return std::nullopt;
  return *it;
}

GapSequencePtr gap_sequence_from_terms(std::string kind, std::vector<std::uint64_t> terms) {
  return std::make_shared<const GapSequence>(
      std::move(kind),
      [terms = std::move(terms)](std::uint64_t n, std::span<const std::uint64_t>)
          -> std::optional<std::uint64_t> {
        if (n > terms.size()) return std::nullopt;
        return terms[n - 1];
      });
}

// ---------------------------------------------------------------- builtins

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::optional<std::uint64_t> checked(const BigInt& v) {
  if (sgn(v) < 0) return 0;  // rejected as non-positive by the sequence
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 62) return std::nullopt;
  return static_cast<std::uint64_t>(mpz_get_ui(v.get_mpz_t()));
}

[[noreturn]] void bad_params(const std::string& name, const std::string& params,
                             const std::string& why) {
  throw std::invalid_argument("generator '" + name + "': bad parameters '" + params + "': " + why);
}

void require_no_params(const std::string& name, const std::string& params) {
  if (!params.empty()) bad_params(name, params, "takes no parameters");
}

}  // namespace

GapSequencePtr builtin_generator(const std::string& name, const std::string& params) {
  using Prev = std::span<const std::uint64_t>;
  using Out = std::optional<std::uint64_t>;

  if (name == "linear") {
    std::uint64_t k = 0;
    try {
      std::size_t used = 0;
      k = std::stoull(params, &used);
      if (used != params.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      bad_params(name, params, "expected a positive integer");
    }
    // K = 1 would give x = 1, outside [0, 1).
    if (k < 2) bad_params(name, params, "slope must be >= 2");
    return std::make_shared<const GapSequence>("linear:" + params, [k](std::uint64_t n, Prev) -> Out {
      return checked(BigInt(static_cast<unsigned long>(k)) * static_cast<unsigned long>(n));
    });
  }
  if (name == "poly") {
    std::vector<BigInt> coeffs;
    std::stringstream ss(params);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        const Rat c = Rat::parse(item);
        if (!c.is_integer()) throw std::invalid_argument("");
        coeffs.push_back(c.num());
      } catch (const std::exception&) {
        bad_params(name, params, "coefficient '" + item + "' is not an integer");
      }
    }
    if (coeffs.empty()) bad_params(name, params, "no coefficients");
    return std::make_shared<const GapSequence>("poly:" + params, [coeffs](std::uint64_t n, Prev) -> Out {
      BigInt acc = 0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * static_cast<unsigned long>(n) + *it;
      return checked(acc);
    });
  }
  if (name == "geo") {
    Rat alpha;
    try {
      alpha = Rat::parse(params);
    } catch (const std::exception&) {
      bad_params(name, params, "expected a decimal or p/q ratio");
    }
    if (alpha <= Rat(1)) bad_params(name, params, "ratio must exceed 1");
    return std::make_shared<const GapSequence>("geo:" + params, [alpha](std::uint64_t n, Prev) -> Out {
      BigInt num, den;
      mpz_pow_ui(num.get_mpz_t(), alpha.num().get_mpz_t(), n);
      mpz_pow_ui(den.get_mpz_t(), alpha.den().get_mpz_t(), n);
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      return checked(q);
    });
  }
  if (name == "kruppel") {
    require_no_params(name, params);
    return std::make_shared<const GapSequence>("kruppel", [](std::uint64_t n, Prev) -> Out {
      if (2 * n > 62) return std::nullopt;
      return std::uint64_t{1} << (2 * n);
    });
  }
  if (name == "pow2plus") {
    Rat beta;
    try {
      beta = Rat::parse(params);
    } catch (const std::exception&) {
      bad_params(name, params, "expected a decimal or p/q value");
    }
    return std::make_shared<const GapSequence>("pow2plus:" + params, [beta](std::uint64_t n, Prev) -> Out {
      if (n > 61) return std::nullopt;
      BigInt v = BigInt(1) << static_cast<mp_bitcnt_t>(n);
      v += (beta * Rat(BigInt(static_cast<unsigned long>(n)), BigInt(1))).floor();
      return checked(v);
    });
  }
  if (name == "primes") {
    require_no_params(name, params);
    return std::make_shared<const GapSequence>("primes", [](std::uint64_t n, Prev prev) -> Out {
      if (n == 1) return 2;
      for (std::uint64_t c = prev.back() + 1;; ++c) {
        bool prime = true;
        for (const std::uint64_t p : prev) {
          if (p * p > c) break;
          if (c % p == 0) {
            prime = false;
            break;
          }
        }
        if (prime) return c;
      }
    });
  }
  if (name == "sqrtdrift") {
    require_no_params(name, params);
    return std::make_shared<const GapSequence>("sqrtdrift", [](std::uint64_t n, Prev) -> Out {
      return 2 * n + isqrt(n);
    });
  }
  if (name == "logdrift") {
    require_no_params(name, params);
    return std::make_shared<const GapSequence>("logdrift", [](std::uint64_t n, Prev) -> Out {
      return 2 * n + static_cast<std::uint64_t>(std::bit_width(n) - 1) + 2;
    });
  }
  if (name == "normalmix") {
    require_no_params(name, params);
    return std::make_shared<const GapSequence>("normalmix", [](std::uint64_t n, Prev prev) -> Out {
      if (n == 1) return 3;
      const std::uint64_t m = n - 1;  // recursion step from a_m to a_{m+1}
      const std::uint64_t am = prev.back();
      if (am <= 2 * m + isqrt(m)) return 2 * m + 3 * isqrt(m);
      return am + 1;
    });
  }
  throw std::invalid_argument("unknown generator '" + name + "'");
}

}  // namespace takagi
