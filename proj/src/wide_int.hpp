#pragma once

// Fixed-width fast paths for loops over exact integers that usually fit in
// 128 bits (orbits, long division). Internal to the library.

#include <gmpxx.h>

#include <cstdint>

namespace takagi::detail {

using u128 = unsigned __int128;

inline bool fits_bits(const mpz_class& v, std::size_t bits) {
  return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= bits;
}

inline u128 to_u128(const mpz_class& v) {
  u128 r = 0;
  std::size_t count = 0;
  std::uint64_t words[2] = {0, 0};
  mpz_export(words, &count, -1, sizeof(std::uint64_t), 0, 0, v.get_mpz_t());
  r = (static_cast<u128>(words[1]) << 64) | words[0];
  return r;
}

inline mpz_class to_mpz(u128 v) {
  mpz_class r;
  const std::uint64_t words[2] = {static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(v >> 64)};
  mpz_import(r.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
  return r;
}

inline mpz_class to_mpz(std::uint64_t v) {
  mpz_class r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(std::uint64_t), 0, 0, &v);
  return r;
}

template <class Int>
Int from_mpz(const mpz_class& v) {
  if constexpr (std::is_same_v<Int, mpz_class>) {
    return v;
  } else {
    return static_cast<Int>(to_u128(v));
  }
}

template <class Int>
mpz_class as_mpz(const Int& v) {
  if constexpr (std::is_same_v<Int, mpz_class>) {
    return v;
  } else {
    return to_mpz(v);
  }
}
}  // namespace takagi::detail
