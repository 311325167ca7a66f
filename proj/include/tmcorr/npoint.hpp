#pragma once

// Exact n-point correlations eta(m1, ..., m_{n-1}) of the balanced
// Thue-Morse system.
//
// Reduction recursion (r_i in {0,1}, r = sum r_i, n = order):
//   eta(2m_1 + r_1, ..., 2m_{n-1} + r_{n-1})
//     = ((-1)^r / 2) * ( eta(m_1, ..., m_{n-1})
//                        + (-1)^n * eta(m_1 + r_1, ..., m_{n-1} + r_{n-1}) )
// which halves the maximum lag each step until all lags lie in {0,1}; those
// corner values are
//   0                 if n is odd,
//   1                 if n is even and r is even,
//   -1/3              if n is even and r is odd,
// equivalently ((-1)^r / (2 + (-1)^{n+r-1})) * eta(0, ..., 0).
//
// Arguments are canonical multisets: insert the implicit base lag 0,
// translate so the minimum is 0, drop one copy of 0, sort ascending.
// Correlation values are invariant under this normalisation (shift
// invariance of the underlying measure plus commutativity of the product).
// Repeated lags are kept and handled by the same recursion.

#include "tmcorr/memo_store.hpp"
#include "tmcorr/pair_correlation.hpp"
#include "tmcorr/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace tmcorr {

inline constexpr unsigned kDefaultOrderCap = 8;

// Canonical form of a raw lag list (signed lags allowed).
inline LagKey canonicalize(const std::vector<std::int64_t>& raw,
                           unsigned order_cap = kDefaultOrderCap) {
  if (raw.empty()) throw ArgsError("canonicalize requires at least one lag");
  if (raw.size() + 1 > order_cap)
    throw ArgsError("correlation order " + std::to_string(raw.size() + 1) +
                    " exceeds the configured cap " + std::to_string(order_cap));
  std::int64_t mn = 0;
  for (std::int64_t v : raw) mn = std::min(mn, v);
  std::vector<std::uint64_t> full;
  full.reserve(raw.size() + 1);
  full.push_back(static_cast<std::uint64_t>(-mn));  // the implicit base lag 0, shifted
  for (std::int64_t v : raw) full.push_back(static_cast<std::uint64_t>(v - mn));
  std::sort(full.begin(), full.end());
  // Minimum is now 0; drop exactly one copy of it.
  return LagKey(full.begin() + 1, full.end());
}

// Corner value for offset bits (entries of `corner` all in {0,1});
// order n = corner.size() + 1.
inline Rat corner_value(const LagKey& corner) {
  unsigned n = static_cast<unsigned>(corner.size()) + 1;
  std::uint64_t r = 0;
  for (std::uint64_t b : corner) {
    if (b > 1) throw ArgsError("corner_value entries must be 0 or 1");
    r += b;
  }
  if (n % 2 == 1) return Rat(0);
  return (r % 2 == 0) ? Rat(1) : Rat(-1, 3);
}

// The same corner value via the closed-form self-consistency solution
// ((-1)^r / (2 + (-1)^{n+r-1})) * eta(0,...,0); used for cross-checks.
inline Rat corner_value_closed_form(const LagKey& corner) {
  unsigned n = static_cast<unsigned>(corner.size()) + 1;
  std::uint64_t r = 0;
  for (std::uint64_t b : corner) r += b;
  Rat seed = (n % 2 == 0) ? Rat(1) : Rat(0);  // eta(0,...,0)
  int num = (r % 2 == 0) ? 1 : -1;
  int den = 2 + (((n + r) % 2 == 0) ? -1 : 1);  // 2 + (-1)^{n+r-1}
  return Rat(num, den) * seed;
}

namespace detail {

// One reduction step on a canonical tuple: returns the two child tuples
// (already canonicalized) and the scalar prefactor data.
struct EtaSplit {
  LagKey child_lo;   // lags halved
  LagKey child_hi;   // lags halved plus their low bits
  int sign;          // (-1)^r
  bool plus;         // true if the (-1)^n factor on child_hi is +1 (n even)
};

inline EtaSplit eta_split(const LagKey& key) {
  EtaSplit out;
  std::vector<std::int64_t> lo, hi;
  lo.reserve(key.size());
  hi.reserve(key.size());
  std::uint64_t r = 0;
  // The implicit base lag 0 contributes bit 0 to both children.
  for (std::uint64_t v : key) {
    std::uint64_t s = v >> 1, b = v & 1ULL;
    r += b;
    lo.push_back(static_cast<std::int64_t>(s));
    hi.push_back(static_cast<std::int64_t>(s + b));
  }
  unsigned n = static_cast<unsigned>(key.size()) + 1;
  out.child_lo = canonicalize(lo);
  out.child_hi = canonicalize(hi);
  out.sign = (r % 2 == 0) ? 1 : -1;
  out.plus = (n % 2 == 0);
  return out;
}

inline bool is_corner(const LagKey& key) {
  for (std::uint64_t v : key)
    if (v > 1) return false;
  return true;
}

}  // namespace detail

// Exact eta of a canonical lag tuple; memoized in `memo`.
// Evaluation uses an explicit work stack (depth is bounded by the bit length
// of the maximal lag, but tuples fan out two children per step).
inline Rat eta_n(const LagKey& canonical, MemoStore& memo = global_memo()) {
  if (canonical.empty()) return Rat(0);  // order 1: the letter mean vanishes
  if (canonical.size() == 1) {
    // Order 2 delegates to the dedicated pair path (same memo, same keys).
    return eta_pair(static_cast<std::int64_t>(canonical[0]), memo);
  }
  if (auto v = memo.get(canonical)) return *v;

  std::vector<LagKey> stack{canonical};
  while (!stack.empty()) {
    const LagKey key = stack.back();
    if (memo.get(key)) {
      stack.pop_back();
      continue;
    }
    if (key.size() == 1) {
      eta_pair(static_cast<std::int64_t>(key[0]), memo);
      stack.pop_back();
      continue;
    }
    if (detail::is_corner(key)) {
      memo.insert(key, corner_value(key));
      stack.pop_back();
      continue;
    }
    auto split = detail::eta_split(key);
    auto lo = memo.get(split.child_lo);
    auto hi = memo.get(split.child_hi);
    if (lo && hi) {
      Rat inner = split.plus ? Rat(*lo + *hi) : Rat(*lo - *hi);
      memo.insert(key, Rat(split.sign) * inner / 2);
      stack.pop_back();
    } else {
      if (!lo) stack.push_back(split.child_lo);
      if (!hi) stack.push_back(split.child_hi);
    }
  }
  return *memo.get(canonical);
}

// Convenience: eta of a raw (possibly unsorted, possibly negative) lag list.
inline Rat eta_n_raw(const std::vector<std::int64_t>& raw_lags,
                     MemoStore& memo = global_memo(),
                     unsigned order_cap = kDefaultOrderCap) {
  return eta_n(canonicalize(raw_lags, order_cap), memo);
}

// True correlation of a multiset of site values (no implicit base site):
// translate by the minimum and drop one copy of it, yielding an order-s
// correlation for s sites.  Empty input denotes the empty product, value 1.
inline Rat eta_of_values(std::vector<std::int64_t> values,
                         MemoStore& memo = global_memo(),
                         unsigned order_cap = kDefaultOrderCap) {
  if (values.empty()) return Rat(1);
  if (values.size() > order_cap)
    throw ArgsError("correlation order exceeds the configured cap");
  std::sort(values.begin(), values.end());
  std::int64_t base = values.front();
  std::vector<std::int64_t> lags(values.begin() + 1, values.end());
  for (auto& v : lags) v -= base;
  if (lags.empty()) return Rat(0);  // single site: the letter mean
  LagKey key(lags.begin(), lags.end());
  return eta_n(key, memo);
}

// Period-doubling pair correlation: eta_pd(m) = eta(1, m, m+1).
inline Rat eta_pd(std::uint64_t m, MemoStore& memo = global_memo()) {
  std::vector<std::int64_t> raw{1, static_cast<std::int64_t>(m),
                                static_cast<std::int64_t>(m) + 1};
  return eta_n(canonicalize(raw), memo);
}

// Seeded evaluation: same recursion, but the corner seed eta(0,...,0) is
// replaced by `seed` (corners scale linearly in the seed).  Non-memoized;
// used to exhibit the one-dimensional solution space of the recursion.
inline Rat eta_n_with_seed(const LagKey& canonical, const Rat& seed) {
  if (canonical.empty()) return Rat(0);
  if (detail::is_corner(canonical)) {
    unsigned n = static_cast<unsigned>(canonical.size()) + 1;
    std::uint64_t r = 0;
    for (std::uint64_t b : canonical) r += b;
    if (n % 2 == 1) return Rat(0);
    Rat base = (r % 2 == 0) ? Rat(1) : Rat(-1, 3);
    return base * seed;
  }
  auto split = detail::eta_split(canonical);
  Rat lo = eta_n_with_seed(split.child_lo, seed);
  Rat hi = eta_n_with_seed(split.child_hi, seed);
  Rat inner = split.plus ? Rat(lo + hi) : Rat(lo - hi);
  return Rat(split.sign) * inner / 2;
}

struct QuadRelations {
  unsigned failed_mask = 0;  // bit c set <=> the residue-c identity failed
  bool ok() const { return failed_mask == 0; }
};

// Verifies the four base-4 diagonal-shift identities: with every lag shifted
// jointly (base position fixed) and s = (-1)^n,
//   eta(4m)   = eta(m)
//   eta(4m+1) = (eta(m+1) - s eta(m)) / 4
//   eta(4m+2) = -(eta(m+1) + s eta(m)) / 2
//   eta(4m+3) = (eta(m) - s eta(m+1)) / 4.
// Returns a bitmask of failed identities (0 = all four hold exactly).
inline QuadRelations quad_relations_check(const std::vector<std::int64_t>& base_lags,
                                          MemoStore& memo = global_memo()) {
  auto shifted = [&](std::int64_t mul, std::int64_t add) {
    std::vector<std::int64_t> lags(base_lags);
    for (auto& v : lags) v = mul * v + add;
    return eta_n(canonicalize(lags), memo);
  };
  unsigned n = static_cast<unsigned>(base_lags.size()) + 1;
  Rat s = (n % 2 == 0) ? Rat(1) : Rat(-1);
  Rat em = shifted(1, 0), em1 = shifted(1, 1);
  QuadRelations res;
  if (shifted(4, 0) != em) res.failed_mask |= 1U;
  if (shifted(4, 1) != (em1 - s * em) / 4) res.failed_mask |= 2U;
  if (shifted(4, 2) != -(em1 + s * em) / 2) res.failed_mask |= 4U;
  if (shifted(4, 3) != (em - s * em1) / 4) res.failed_mask |= 8U;
  return res;
}

}  // namespace tmcorr
