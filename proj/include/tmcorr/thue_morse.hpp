#pragma once

// The Thue-Morse sequence t, its bi-infinite extension w, prefix generation,
// and the period-doubling factor sequence.
//
//   t(0) = +1,  t(2k) = t(k),  t(2k+1) = -t(k),  equivalently t(n) = (-1)^{s2(n)}
//   w(n) = t(n) for n >= 0, w(n) = t(-n-1) for n < 0
//   period doubling: a -> ab, b -> aa, with letter weights a = -1, b = +1.

#include "tmcorr/rational.hpp"

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

namespace tmcorr {

// Default cap on generated prefix lengths (elements); overridable via the
// TMCORR_PREFIX_CAP environment variable and by explicit argument.
inline std::uint64_t default_prefix_cap() {
  if (const char* env = std::getenv("TMCORR_PREFIX_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
  }
  return std::uint64_t(1) << 26;
}

// Number of ones in the binary expansion.  Word-sized popcount on the limbs
// so that arguments wider than 64 bits (regular-sequence indices) still work.
inline unsigned s2(const Int& n) {
  if (n < 0) throw ArgsError("s2 requires a non-negative argument");
  unsigned count = 0;
  Int x = n;
  while (x != 0) {
    count += std::popcount(static_cast<std::uint64_t>(x & 0xFFFFFFFFFFFFFFFFULL));
    x >>= 64;
  }
  return count;
}

inline unsigned s2(std::uint64_t n) { return static_cast<unsigned>(std::popcount(n)); }

// t(n) = (-1)^{s2(n)} as +-1.
inline int t_sign(std::uint64_t n) { return (std::popcount(n) & 1U) ? -1 : +1; }

inline int t_sign(const Int& n) { return (s2(n) & 1U) ? -1 : +1; }

// Bi-infinite extension: w(n) = t(n) for n >= 0 and t(-n-1) for n < 0.
inline int w_sign(std::int64_t n) {
  return n >= 0 ? t_sign(static_cast<std::uint64_t>(n))
                : t_sign(static_cast<std::uint64_t>(-(n + 1)));
}

// First 2^m signs of t; equals the m-fold Kronecker power of (1, -1).
inline std::vector<std::int8_t> tm_prefix(unsigned m,
                                          std::uint64_t cap = default_prefix_cap()) {
  if (m >= 63 || (std::uint64_t(1) << m) > cap)
    throw BudgetError("tm_prefix: 2^" + std::to_string(m) + " exceeds the prefix cap");
  std::uint64_t len = std::uint64_t(1) << m;
  std::vector<std::int8_t> out(len);
  out[0] = 1;
  // Doubling step: the second half of each prefix is the negated first half.
  for (std::uint64_t half = 1; half < len; half <<= 1)
    for (std::uint64_t i = 0; i < half; ++i)
      out[half + i] = static_cast<std::int8_t>(-out[i]);
  return out;
}

// Parity bits b_k = s2(k) mod 2 (t_k = (-1)^{b_k}) for k < len, as bytes.
// Bulk form used by the oracle.
inline std::vector<std::uint8_t> tm_parity_prefix(std::uint64_t len,
                                                  std::uint64_t cap = default_prefix_cap()) {
  if (len > cap) throw BudgetError("tm_parity_prefix: length exceeds the prefix cap");
  std::vector<std::uint8_t> out(len);
  if (len == 0) return out;
  out[0] = 0;
  std::uint64_t filled = 1;
  while (filled < len) {
    std::uint64_t take = std::min(filled, len - filled);
    for (std::uint64_t i = 0; i < take; ++i)
      out[filled + i] = static_cast<std::uint8_t>(1 - out[i]);
    filled += take;
  }
  return out;
}

// First `len` weights of the period-doubling fixed point (start letter a),
// a -> ab, b -> aa, rendered as weights a = -1, b = +1.
inline std::vector<std::int8_t> pd_prefix(std::uint64_t len,
                                          std::uint64_t cap = default_prefix_cap()) {
  if (len == 0) throw ArgsError("pd_prefix requires len >= 1");
  if (len > cap) throw BudgetError("pd_prefix: length exceeds the prefix cap");
  // Letters as bits: a = 0, b = 1.  Substituting every letter yields, at even
  // positions, always a; at odd positions, the complement of the source letter.
  std::vector<std::uint8_t> letters{0};
  while (letters.size() < len) {
    std::vector<std::uint8_t> next(letters.size() * 2);
    for (std::size_t i = 0; i < letters.size(); ++i) {
      next[2 * i] = 0;
      next[2 * i + 1] = static_cast<std::uint8_t>(1 - letters[i]);
    }
    letters.swap(next);
  }
  std::vector<std::int8_t> out(len);
  for (std::uint64_t i = 0; i < len; ++i)
    out[i] = static_cast<std::int8_t>(letters[i] ? +1 : -1);
  return out;
}

// Letter bits (a = 0, b = 1) of the period-doubling fixed point; bulk form
// for the oracle (weight product over XOR of bits).
inline std::vector<std::uint8_t> pd_letter_prefix(std::uint64_t len,
                                                  std::uint64_t cap = default_prefix_cap()) {
  if (len == 0) throw ArgsError("pd_letter_prefix requires len >= 1");
  if (len > cap) throw BudgetError("pd_letter_prefix: length exceeds the prefix cap");
  std::vector<std::uint8_t> letters{0};
  while (letters.size() < len) {
    std::vector<std::uint8_t> next(letters.size() * 2);
    for (std::size_t i = 0; i < letters.size(); ++i) {
      next[2 * i] = 0;
      next[2 * i + 1] = static_cast<std::uint8_t>(1 - letters[i]);
    }
    letters.swap(next);
  }
  letters.resize(len);
  return letters;
}

}  // namespace tmcorr
