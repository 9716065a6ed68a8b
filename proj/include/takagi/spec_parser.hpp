#pragma once

// Expansion spec mini-language shared by the CLI and config files:
//
//   spec := "dyadic:" INT "/" INT          value k/2^m (denominator a power of two)
//         | "rational:" INT "/" INT        any p/q with 0 <= p/q < 1
//         | "gaps:" [ "ones:" | "zeros:" ] rule
//   rule := "linear:" INT | "poly:" INT {"," INT} | "geo:" NUMBER | "kruppel"
//         | "pow2plus:" NUMBER | "primes" | "sqrtdrift" | "logdrift" | "normalmix"
//
// A gaps rule lists the 1-positions a_n by default; "zeros:" makes it list
// the 0-positions b_n instead.

#include "takagi/expansion.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>

namespace takagi {

class ParseError : public std::invalid_argument {
public:
  ParseError(std::string token, std::size_t position, const std::string& why);
  const std::string& token() const noexcept { return token_; }
  std::size_t position() const noexcept { return position_; }

private:
  std::string token_;
  std::size_t position_;
};

BinaryExpansion parse_expansion_spec(const std::string& spec,
                                     std::uint64_t bit_budget = kDefaultBitBudget);

}  // namespace takagi
