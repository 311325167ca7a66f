#pragma once

// Exact 2-point autocorrelation eta(m) of the balanced Thue-Morse system and
// derived pair quantities.
//
// Defining recursion (with eta(0) = 1 anchoring everything):
//   eta(2m)   = eta(m)
//   eta(2m+1) = -(eta(m) + eta(m+1)) / 2
//   eta(-m)   = eta(m)
// The closed m = 0 subsystem gives eta(1) = -eta(0)/3 = -1/3.
//
// Derived quantities:
//   mu_pm(m)  = (1 +- eta(m)) / 2        (letter-pair frequencies at distance m)
//   nu_aa = nu_bb = mu_plus, nu_ab = nu_ba = mu_minus
//   partial sums: sum_{m<2N} eta(m) = (1 - eta(N)) / 2, always within [0, 2/3].

#include "tmcorr/memo_store.hpp"
#include "tmcorr/rational.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <vector>

namespace tmcorr {

namespace detail {

// Iterative worklist evaluation of eta on a batch of non-negative arguments.
// Avoids call-stack recursion so arguments up to 2^63 are safe.
inline void eta_pair_fill(std::vector<std::uint64_t> pending, MemoStore& memo) {
  // Canonical key of the order-2 correlation at lag m is the one-lag tuple {m}
  // (the empty tuple is the order-1 correlation, which vanishes).
  auto key_of = [](std::uint64_t m) { return LagKey{m}; };
  // Seeds: eta(0) = 1; eta(1) solves eta(1) = -(eta(0) + eta(1))/2.
  if (!memo.get(LagKey{0})) memo.insert(LagKey{0}, Rat(1));
  if (!memo.get(LagKey{1})) memo.insert(LagKey{1}, Rat(-1, 3));

  std::vector<std::uint64_t> stack = std::move(pending);
  while (!stack.empty()) {
    std::uint64_t m = stack.back();
    if (memo.get(key_of(m))) {
      stack.pop_back();
      continue;
    }
    if ((m & 1ULL) == 0) {
      std::uint64_t h = m >> 1;
      if (auto v = memo.get(key_of(h))) {
        memo.insert(key_of(m), *v);
        stack.pop_back();
      } else {
        stack.push_back(h);
      }
    } else {
      std::uint64_t h = m >> 1;
      auto a = memo.get(key_of(h));
      auto b = memo.get(key_of(h + 1));
      if (a && b) {
        memo.insert(key_of(m), Rat(-(*a + *b) / 2));
        stack.pop_back();
      } else {
        if (!a) stack.push_back(h);
        if (!b) stack.push_back(h + 1);
      }
    }
  }
}

}  // namespace detail

// Exact eta(m); negative m folded by the symmetry eta(-m) = eta(m).
inline Rat eta_pair(std::int64_t m, MemoStore& memo = global_memo()) {
  std::uint64_t n = m >= 0 ? static_cast<std::uint64_t>(m)
                           : static_cast<std::uint64_t>(-m);
  LagKey key{n};
  if (auto v = memo.get(key)) return *v;
  detail::eta_pair_fill({n}, memo);
  return *memo.get(key);
}

// Memo-free evaluation via the binary-expansion chain on the window pair
// (eta(x), eta(x+1)); an independent path used for cross-checks and for
// arguments too large to memoize densely.
inline Rat eta_pair_single(std::uint64_t m) {
  Rat v0(1), v1(-1, 3);  // (eta(0), eta(1))
  if (m == 0) return v0;
  int bits = 64 - std::countl_zero(m);
  for (int i = bits - 1; i >= 0; --i) {
    Rat mid = -(v0 + v1) / 2;  // eta(2x+1) from (eta(x), eta(x+1))
    if ((m >> i) & 1ULL) {
      v0 = mid;  // window (2x+1, 2x+2)
    } else {
      v1 = mid;  // window (2x, 2x+1)
    }
  }
  return v0;
}

enum class MuSign { plus, minus };

// mu_pm(m) = (1 +- eta(m)) / 2.
inline Rat mu_pm(MuSign sign, std::uint64_t m, MemoStore& memo = global_memo()) {
  Rat e = eta_pair(static_cast<std::int64_t>(m), memo);
  return sign == MuSign::plus ? Rat((1 + e) / 2) : Rat((1 - e) / 2);
}

// Independent evaluation of mu_pm via the coupled recursion
//   mu_pm(2m) = mu_pm(m),  mu_pm(2m+1) = (mu_mp(m) + mu_mp(m+1)) / 2
// carried on the 4-state window (mu+(x), mu+(x+1), mu-(x), mu-(x+1)).
inline Rat coupled_mu_step(MuSign sign, std::uint64_t m) {
  // Seeds: mu+(0) = 1, mu-(0) = 0; the closed subsystem gives
  // mu+(1) = mu-(1)/2 and mu-(1) = (1 + mu+(1))/2, hence 1/3 and 2/3.
  Rat p0(1), p1(1, 3), q0(0), q1(2, 3);
  if (m == 0) return sign == MuSign::plus ? p0 : q0;
  int bits = 64 - std::countl_zero(m);
  for (int i = bits - 1; i >= 0; --i) {
    Rat podd = (q0 + q1) / 2;  // mu+(2x+1)
    Rat qodd = (p0 + p1) / 2;  // mu-(2x+1)
    if ((m >> i) & 1ULL) {
      p0 = podd; q0 = qodd;    // window (2x+1, 2x+2): second halves stay
    } else {
      p1 = podd; q1 = qodd;    // window (2x, 2x+1): first halves stay
    }
  }
  return sign == MuSign::plus ? p0 : q0;
}

enum class Letter { a, b };

// Relative frequency with which letters (alpha, beta) occur at distance n:
// nu_aa = nu_bb = mu_plus(|n|), nu_ab = nu_ba = mu_minus(|n|).
inline Rat pair_frequency(Letter alpha, Letter beta, std::int64_t n,
                          MemoStore& memo = global_memo()) {
  std::uint64_t m = n >= 0 ? static_cast<std::uint64_t>(n)
                           : static_cast<std::uint64_t>(-n);
  return alpha == beta ? mu_pm(MuSign::plus, m, memo) : mu_pm(MuSign::minus, m, memo);
}

// Exact sum_{m<N} eta(m).  For even N the value equals (1 - eta(N/2))/2 and
// lies in [0, 2/3].
inline Rat eta_partial_sum(std::uint64_t N, MemoStore& memo = global_memo()) {
  if (N == 0) throw ArgsError("eta_partial_sum requires N >= 1");
  Rat total(0);
  for (std::uint64_t m = 0; m < N; ++m)
    total += eta_pair(static_cast<std::int64_t>(m), memo);
  return total;
}

// Scaled-integer window: values eta(m) * 3 * 2^{ceil(log2 N)} for m <= N, as
// int64.  This is the bulk path used by the asymptotics module; the scale is
// returned through `scale_out`.  Valid while 3 * 2^{bits} fits in int64.
inline std::vector<std::int64_t> eta_scaled_window(std::uint64_t N, std::int64_t& scale_out) {
  unsigned bits = 0;
  while ((std::uint64_t(1) << bits) < std::max<std::uint64_t>(N, 1)) ++bits;
  if (bits > 56) throw BudgetError("eta_scaled_window: window too large for int64 scaling");
  std::int64_t scale = std::int64_t(3) << bits;
  scale_out = scale;
  // Doubling DP over (eta(0..2^k)) windows, at fixed final scale.
  std::vector<std::int64_t> cur{scale, -scale / 3};  // eta(0), eta(1)
  std::uint64_t len = 1;                             // window covers 0..len
  while (len < N) {
    std::vector<std::int64_t> next(2 * len + 1);
    for (std::uint64_t i = 0; i <= len; ++i) next[2 * i] = cur[i];
    for (std::uint64_t i = 0; i < len; ++i)
      next[2 * i + 1] = -(cur[i] + cur[i + 1]) / 2;
    cur.swap(next);
    len *= 2;
  }
  cur.resize(N + 1);
  return cur;
}

}  // namespace tmcorr
