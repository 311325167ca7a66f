#pragma once

// Correlations of the sign sequence under a general two-letter weight
// function, reduced exactly to the balanced correlations via the
// mean/half-difference decomposition f = E + h*t:
//
//   eta_f(m_1,...,m_{n-1}) = E^n + sum_{r>=1} h^{2r} E^{n-2r}
//        sum_{|S| = 2r} eta(values of S),
//
// where S ranges over even-size subsets of the n site positions
// {0, m_1, ..., m_{n-1}} and the inner eta is the balanced correlation of
// the chosen values (odd-size subsets contribute odd-order balanced
// correlations, which vanish identically).

#include "tmcorr/memo_store.hpp"
#include "tmcorr/npoint.hpp"
#include "tmcorr/pair_correlation.hpp"
#include "tmcorr/rational.hpp"

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <vector>

namespace tmcorr {

// Weight values on the two letters of the sign sequence.
struct WeightPair {
  Rat f_minus;  // value on letter -1
  Rat f_plus;   // value on letter +1

  Rat mean() const { return (f_plus + f_minus) / 2; }       // E(f)
  Rat half_diff() const { return (f_plus - f_minus) / 2; }  // h_f

  // Affine shift f -> f + c: moves the mean, keeps the half-difference.
  WeightPair shifted(const Rat& c) const { return {f_minus + c, f_plus + c}; }
};

inline const WeightPair& balanced_weights() {
  static const WeightPair w{Rat(-1), Rat(1)};
  return w;
}

// eta_f(m) = h_f^2 eta(m) + E(f)^2.
inline Rat eta_f_pair(const WeightPair& f, std::int64_t m,
                      MemoStore& memo = global_memo()) {
  const Rat h = f.half_diff();
  const Rat e = f.mean();
  return h * h * eta_pair(m, memo) + e * e;
}

// eta_f(m1, m2) = h_f^2 E(f) (eta(m1) + eta(m2) + eta(|m1 - m2|)) + E(f)^3.
inline Rat eta_f_triple(const WeightPair& f, std::int64_t m1, std::int64_t m2,
                        MemoStore& memo = global_memo()) {
  const Rat h = f.half_diff();
  const Rat e = f.mean();
  const Rat sum = eta_pair(m1, memo) + eta_pair(m2, memo) +
                  eta_pair(std::int64_t(std::llabs(m1 - m2)), memo);
  return h * h * e * sum + e * e * e;
}

// Full expansion over site-position subsets.  Empty lag list (order 1)
// returns the letter mean E(f).  `include_odd_subsets` additionally sums the
// identically-zero odd-size terms; it exists so tests can assert their
// vanishing changes nothing.
inline Rat eta_f_general(const WeightPair& f, const std::vector<std::int64_t>& lags,
                         MemoStore& memo = global_memo(),
                         bool include_odd_subsets = false) {
  const unsigned n = static_cast<unsigned>(lags.size()) + 1;
  if (n > 24) throw BudgetError("weighted correlation order exceeds subset budget");
  std::vector<std::int64_t> pos;
  pos.reserve(n);
  pos.push_back(0);
  pos.insert(pos.end(), lags.begin(), lags.end());

  const Rat e = f.mean();
  const Rat h = f.half_diff();
  Rat total = 0;
  std::vector<std::int64_t> vals;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const unsigned r = static_cast<unsigned>(std::popcount(mask));
    if (!include_odd_subsets && (r % 2) != 0) continue;
    vals.clear();
    for (unsigned i = 0; i < n; ++i)
      if ((mask >> i) & 1u) vals.push_back(pos[i]);
    const Rat inner = eta_of_values(vals, memo, n);
    if (inner == 0) continue;
    total += rat_pow(h, r) * rat_pow(e, n - r) * inner;
  }
  return total;
}

}  // namespace tmcorr
