#pragma once

// Independent brute-force estimates of correlations from explicit sequence
// prefixes.  Every estimate is the finite-N Birkhoff average
//
//   (1/N) sum_{k<N} f(t_k) prod_i f(t_{k+m_i}),
//
// kept exact: products of +-1 signs reduce to XORs of shifted parity bit
// planes, counted with popcounts, and a general weight pair decomposes
// pointwise as f = E + h*t, which turns the average into the exact rational
// combination  sum_S E^{n-|S|} h^{|S|} * (balanced average over S).  Division
// by N happens only in the returned value.

#include "tmcorr/rational.hpp"
#include "tmcorr/thue_morse.hpp"
#include "tmcorr/weighted.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace tmcorr {

struct Estimate {
  Real value;                  // the average as a high-precision float
  Rat exact;                   // the same average as an exact rational
  std::uint64_t n_terms = 0;   // number of Birkhoff terms (the prefix length N)
  std::uint64_t max_lag = 0;   // largest lag entering the products
};

namespace detail {

// Bits packed LSB-first into 64-bit words.
inline std::vector<std::uint64_t> pack_bits(const std::vector<std::uint8_t>& bits) {
  std::vector<std::uint64_t> out((bits.size() + 63) / 64 + 1, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) out[i / 64] |= std::uint64_t(1) << (i % 64);
  return out;
}

// acc ^= (packed >> shift) over the first nwords words of acc.
inline void xor_shifted(std::vector<std::uint64_t>& acc,
                        const std::vector<std::uint64_t>& packed,
                        std::uint64_t shift, std::size_t nwords) {
  const std::size_t q = shift / 64;
  const unsigned r = static_cast<unsigned>(shift % 64);
  for (std::size_t i = 0; i < nwords; ++i) {
    std::uint64_t w = packed[i + q] >> r;
    if (r != 0) w |= packed[i + q + 1] << (64 - r);
    acc[i] ^= w;
  }
}

inline std::uint64_t count_ones_prefix(const std::vector<std::uint64_t>& acc,
                                       std::uint64_t nbits) {
  std::uint64_t total = 0;
  const std::size_t full = nbits / 64;
  for (std::size_t i = 0; i < full; ++i) total += std::popcount(acc[i]);
  const unsigned rest = static_cast<unsigned>(nbits % 64);
  if (rest != 0) total += std::popcount(acc[full] & ((std::uint64_t(1) << rest) - 1));
  return total;
}

}  // namespace detail

// A reusable prefix session: the packed parity prefix is built once and
// balanced product averages are cached per odd-multiplicity shift set, so
// sweeps over many lag tuples share all the heavy work.
class BalancedOracle {
 public:
  BalancedOracle(std::uint64_t n_terms, std::uint64_t max_lag,
                 std::uint64_t prefix_cap = default_prefix_cap())
      : n_terms_(n_terms), max_lag_(max_lag) {
    if (n_terms == 0) throw ArgsError("prefix length must be positive");
    if (n_terms + max_lag + 1 > prefix_cap)
      throw BudgetError("requested prefix exceeds the prefix cap");
    packed_ = detail::pack_bits(tm_parity_prefix(n_terms + max_lag + 1, prefix_cap));
    words_ = (n_terms + 63) / 64;
  }

  std::uint64_t n_terms() const { return n_terms_; }
  std::uint64_t max_lag() const { return max_lag_; }

  // Exact (1/N) sum_{k<N} prod_i t_{k+v_i} over the multiset of site
  // positions `values` (even-multiplicity positions cancel via t^2 = 1).
  Rat product_average(std::vector<std::uint64_t> values) {
    std::vector<std::uint64_t> odd;
    std::sort(values.begin(), values.end());
    for (std::size_t i = 0; i < values.size();) {
      std::size_t j = i;
      while (j < values.size() && values[j] == values[i]) ++j;
      if ((j - i) % 2 != 0) odd.push_back(values[i]);
      i = j;
    }
    if (!odd.empty() && odd.back() > max_lag_)
      throw BudgetError("lag exceeds the session's prefix reach");
    if (odd.empty()) return Rat(1);
    auto it = cache_.find(odd);
    if (it != cache_.end()) return it->second;

    std::vector<std::uint64_t> acc(words_, 0);
    for (std::uint64_t v : odd) detail::xor_shifted(acc, packed_, v, words_);
    const std::uint64_t ones = detail::count_ones_prefix(acc, n_terms_);
    // Each 1-bit is a term with product -1: sum = N - 2*ones.
    Rat avg(Int(n_terms_) - 2 * Int(ones), Int(n_terms_));
    cache_.emplace(std::move(odd), avg);
    return avg;
  }

 private:
  std::uint64_t n_terms_;
  std::uint64_t max_lag_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> packed_;
  std::map<std::vector<std::uint64_t>, Rat> cache_;
};

// Finite-N weighted Birkhoff average over site positions {0} union lags.
inline Estimate birkhoff_estimate(const WeightPair& f,
                                  const std::vector<std::uint64_t>& lags,
                                  std::uint64_t n_terms, BalancedOracle* session = nullptr,
                                  std::uint64_t prefix_cap = default_prefix_cap()) {
  const unsigned n = static_cast<unsigned>(lags.size()) + 1;
  if (n > 24) throw BudgetError("weighted estimate order exceeds subset budget");
  std::uint64_t max_lag = 0;
  for (std::uint64_t m : lags) max_lag = std::max(max_lag, m);

  std::optional<BalancedOracle> local;
  if (session == nullptr) {
    local.emplace(n_terms, max_lag, prefix_cap);
    session = &*local;
  } else if (session->n_terms() != n_terms) {
    throw ArgsError("session prefix length does not match the request");
  }

  std::vector<std::uint64_t> pos;
  pos.reserve(n);
  pos.push_back(0);
  pos.insert(pos.end(), lags.begin(), lags.end());

  const Rat e = f.mean();
  const Rat h = f.half_diff();
  Rat total = 0;
  std::vector<std::uint64_t> vals;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const unsigned r = static_cast<unsigned>(std::popcount(mask));
    const Rat coeff = rat_pow(h, r) * rat_pow(e, n - r);
    if (coeff == 0) continue;
    vals.clear();
    for (unsigned i = 0; i < n; ++i)
      if ((mask >> i) & 1u) vals.push_back(pos[i]);
    total += coeff * session->product_average(vals);
  }

  Estimate est;
  est.exact = total;
  est.value = static_cast<Real>(total);
  est.n_terms = n_terms;
  est.max_lag = max_lag;
  return est;
}

// Finite-N autocorrelation of the period-doubling weight sequence
// (letter a -> -1, letter b -> +1).
inline Estimate pd_autocorr_estimate(std::uint64_t m, std::uint64_t n_terms,
                                     std::uint64_t prefix_cap = default_prefix_cap()) {
  if (n_terms == 0) throw ArgsError("prefix length must be positive");
  if (n_terms + m + 1 > prefix_cap)
    throw BudgetError("requested prefix exceeds the prefix cap");
  const auto letters = pd_letter_prefix(n_terms + m + 1, prefix_cap);
  const auto packed = detail::pack_bits(letters);
  const std::size_t words = (n_terms + 63) / 64;
  std::vector<std::uint64_t> acc(words, 0);
  detail::xor_shifted(acc, packed, 0, words);
  detail::xor_shifted(acc, packed, m, words);
  const std::uint64_t ones = detail::count_ones_prefix(acc, n_terms);
  Estimate est;
  est.exact = Rat(Int(n_terms) - 2 * Int(ones), Int(n_terms));
  est.value = static_cast<Real>(est.exact);
  est.n_terms = n_terms;
  est.max_lag = m;
  return est;
}

// Direct term-by-term evaluation of the weighted Birkhoff average, kept as a
// slow reference for cross-checking the subset decomposition on small N.
inline Rat birkhoff_direct_reference(const WeightPair& f,
                                     const std::vector<std::uint64_t>& lags,
                                     std::uint64_t n_terms,
                                     std::uint64_t prefix_cap = default_prefix_cap()) {
  std::uint64_t max_lag = 0;
  for (std::uint64_t m : lags) max_lag = std::max(max_lag, m);
  if (n_terms + max_lag + 1 > prefix_cap)
    throw BudgetError("requested prefix exceeds the prefix cap");
  const auto parity = tm_parity_prefix(n_terms + max_lag + 1, prefix_cap);
  auto weight = [&](std::uint64_t k) { return parity[k] ? f.f_minus : f.f_plus; };
  Rat total = 0;
  for (std::uint64_t k = 0; k < n_terms; ++k) {
    Rat term = weight(k);
    for (std::uint64_t m : lags) term *= weight(k + m);
    total += term;
  }
  return total / Rat(n_terms);
}

}  // namespace tmcorr
