#pragma once

// Exact averages of the pair correlation (power means, absolute means,
// hypercube means of the n-point correlations) and the digit-depth
// coefficient masses that bound the decay exponent of Wiener-type sums.

#include "tmcorr/memo_store.hpp"
#include "tmcorr/npoint.hpp"
#include "tmcorr/pair_correlation.hpp"
#include "tmcorr/rational.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <vector>

namespace tmcorr {

// ---------------------------------------------------------------------------
// Power means of eta and mu over initial windows.
// ---------------------------------------------------------------------------

namespace detail {

// Signed k-th power of an int64 value, accumulated exactly.
inline Int int_pow(std::int64_t x, unsigned k) {
  Int acc(1);
  for (unsigned i = 0; i < k; ++i) acc *= x;
  return acc;
}

}  // namespace detail

// Exact (1/N) sum_{m<N} eta(m)^k.
inline Rat power_mean_eta(unsigned k, std::uint64_t n_window) {
  if (n_window == 0) throw ArgsError("window length must be positive");
  if (k == 0) return Rat(1);
  std::int64_t scale = 0;
  const auto w = eta_scaled_window(n_window, scale);
  Int total(0);
  for (std::uint64_t m = 0; m < n_window; ++m) total += detail::int_pow(w[m], k);
  Rat mean(total, numerator(rat_pow(Rat(scale), k)));
  return mean / Rat(n_window);
}

// Exact (1/N) sum_{m<N} mu_pm(m)^k with mu_pm = (1 +- eta)/2.
inline Rat power_mean_mu(MuSign sign, unsigned k, std::uint64_t n_window) {
  if (n_window == 0) throw ArgsError("window length must be positive");
  if (k == 0) return Rat(1);
  std::int64_t scale = 0;
  const auto w = eta_scaled_window(n_window, scale);
  const std::int64_t s = (sign == MuSign::plus) ? 1 : -1;
  Int total(0);
  for (std::uint64_t m = 0; m < n_window; ++m)
    total += detail::int_pow(scale + s * w[m], k);
  Rat mean(total, numerator(rat_pow(Rat(2) * scale, k)));
  return mean / Rat(n_window);
}

// Exact sum_{m<N} |eta(m)|.
inline Rat abs_sum_eta(std::uint64_t n_window) {
  if (n_window == 0) throw ArgsError("window length must be positive");
  std::int64_t scale = 0;
  const auto w = eta_scaled_window(n_window, scale);
  Int total(0);
  for (std::uint64_t m = 0; m < n_window; ++m) total += std::llabs(w[m]);
  return Rat(total, scale);
}

// N^{-alpha} sum_{m<N} |eta(m)|^beta, in 113-bit-mantissa floating point.
// The beta = 1 sum is accumulated exactly before the single scaling step.
inline Real abs_power_mean_eta(const Rat& beta, std::uint64_t n_window, const Rat& alpha) {
  if (beta <= 0) throw ArgsError("power-mean exponent must be positive");
  if (n_window == 0) throw ArgsError("window length must be positive");
  Real sum(0);
  if (beta == 1) {
    sum = static_cast<Real>(abs_sum_eta(n_window));
  } else {
    std::int64_t scale = 0;
    const auto w = eta_scaled_window(n_window, scale);
    const Real rscale(scale);
    const Real rbeta = static_cast<Real>(beta);
    for (std::uint64_t m = 0; m < n_window; ++m) {
      if (w[m] == 0) continue;
      sum += pow(Real(std::llabs(w[m])) / rscale, rbeta);
    }
  }
  const Real ralpha = static_cast<Real>(alpha);
  return sum * pow(Real(n_window), -ralpha);
}

// ---------------------------------------------------------------------------
// The four base-4 absolute-value estimates, checked exactly on integers.
// ---------------------------------------------------------------------------

// Verifies, for all m <= m_max:
//   |eta(4m)|   =  |eta(m)|
//   |eta(4m+1)| <= (|eta(m)| + |eta(m+1)|) / 4
//   |eta(4m+2)| <= (|eta(m)| + |eta(m+1)|) / 2
//   |eta(4m+3)| <= (|eta(m)| + |eta(m+1)|) / 4
inline bool abs_estimates_check(std::uint64_t m_max) {
  std::int64_t scale = 0;
  const auto w = eta_scaled_window(4 * m_max + 4, scale);
  for (std::uint64_t m = 0; m <= m_max; ++m) {
    const std::int64_t a = std::llabs(w[m]);
    const std::int64_t b = std::llabs(w[m + 1]);
    if (std::llabs(w[4 * m]) != a) return false;
    if (4 * std::llabs(w[4 * m + 1]) > a + b) return false;
    if (2 * std::llabs(w[4 * m + 2]) > a + b) return false;
    if (4 * std::llabs(w[4 * m + 3]) > a + b) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Digit-depth coefficient mass and the exponent bound it certifies.
// ---------------------------------------------------------------------------

struct ExponentReport {
  unsigned j = 0;                  // digit depth
  Rat c_j;                         // exact coefficient mass
  double alpha_j = 0.0;            // log2(c_j) / j
  std::uint64_t residue_count = 0; // 2^j residues enumerated
};

namespace detail {

// Depth-first accumulation of first-row l1 norms over all 2^depth products
// of the integer-scaled recursion matrices 2*M_0 = [[2,0],[-1,-1]] and
// 2*M_1 = [[-1,-1],[0,2]], applied to the row vector left to right.  Row
// entries stay below 3^depth and the grand total below 6^depth, so int64 is
// exact through depth 24.
inline void exponent_dfs(std::int64_t v0, std::int64_t v1, unsigned depth,
                         std::int64_t& total) {
  if (depth == 0) {
    total += std::llabs(v0) + std::llabs(v1);
    return;
  }
  exponent_dfs(2 * v0 - v1, -v1, depth - 1, total);
  exponent_dfs(-v0, -v0 + 2 * v1, depth - 1, total);
}

}  // namespace detail

// c_j = sum over the 2^j digit strings (least-significant digit = leftmost
// factor) of the first-row l1 norm of the depth-j matrix product.
inline ExponentReport exponent_bound(unsigned j, unsigned depth_cap = 24) {
  if (j < 1 || j > depth_cap || depth_cap > 24)
    throw BudgetError("digit depth outside the supported range");
  std::int64_t total = 0;
  detail::exponent_dfs(1, 0, j, total);
  ExponentReport rep;
  rep.j = j;
  rep.c_j = Rat(total, Int(1) << j);
  rep.alpha_j = std::log2(static_cast<double>(total)) / j - 1.0;
  rep.residue_count = std::uint64_t(1) << j;
  return rep;
}

// The conventional reported value at depth j rounds the mass down to the
// half-integer grid before taking logarithms.
inline double exponent_alpha_reported(const ExponentReport& rep) {
  const Rat grid = floor_to_half_grid(rep.c_j);
  const double num = numerator(grid).convert_to<double>();
  const double den = denominator(grid).convert_to<double>();
  return (std::log2(num) - std::log2(den)) / rep.j;
}

// ---------------------------------------------------------------------------
// Hypercube means of the order-n correlations.
// ---------------------------------------------------------------------------

namespace detail {

inline void check_cube_budget(unsigned n, std::uint64_t n_side, std::uint64_t budget) {
  if (n < 2) throw ArgsError("correlation order must be at least 2");
  if (n_side == 0) throw ArgsError("cube side must be positive");
  Int cells(1);
  for (unsigned i = 0; i + 1 < n; ++i) cells *= n_side;
  if (cells > budget) throw BudgetError("hypercube summation exceeds the cell budget");
}

// Enumerates nondecreasing tuples t in [0, N)^len together with the number
// of distinct permutations of each tuple, so symmetric sums over the full
// cube can be taken over sorted representatives only.
template <class F>
inline void for_each_sorted_tuple(unsigned len, std::uint64_t n_side, F&& body) {
  std::vector<std::uint64_t> t(len, 0);
  std::uint64_t fact_len = 1;
  for (unsigned i = 2; i <= len; ++i) fact_len *= i;
  for (;;) {
    std::uint64_t perms = fact_len;
    std::uint64_t run = 1;
    for (unsigned i = 1; i < len; ++i) {
      if (t[i] == t[i - 1]) {
        ++run;
        perms /= run;  // divide out run! incrementally: run grows one step at a time
      } else {
        run = 1;
      }
    }
    body(t, perms);
    unsigned i = len;
    while (i > 0 && t[i - 1] == n_side - 1) --i;
    if (i == 0) break;
    ++t[i - 1];
    for (unsigned k = i; k < len; ++k) t[k] = t[i - 1];
  }
}

}  // namespace detail

// Exact N^{-(n-1)} sum of eta(m_1,...,m_{n-1}) over the cube [0,N)^{n-1}.
inline Rat hypercube_mean(unsigned n, std::uint64_t n_side,
                          MemoStore& memo = global_memo(),
                          std::uint64_t cell_budget = std::uint64_t(1) << 24) {
  detail::check_cube_budget(n, n_side, cell_budget);
  Rat total = 0;
  detail::for_each_sorted_tuple(
      n - 1, n_side, [&](const std::vector<std::uint64_t>& t, std::uint64_t perms) {
        LagKey key(t.begin(), t.end());
        const Rat v = eta_n(key, memo);
        if (v != 0) total += Rat(perms) * v;
      });
  Rat cells = rat_pow(Rat(n_side), n - 1);
  return total / cells;
}

// N^{-alpha(n-1)} sum over the cube of |eta|^beta; exact accumulation when
// beta = 1, 113-bit floating point otherwise.
inline Real abs_hypercube_mean(unsigned n, std::uint64_t n_side, const Rat& alpha,
                               const Rat& beta, MemoStore& memo = global_memo(),
                               std::uint64_t cell_budget = std::uint64_t(1) << 24) {
  if (beta <= 0) throw ArgsError("power-mean exponent must be positive");
  detail::check_cube_budget(n, n_side, cell_budget);
  Rat exact_total = 0;
  Real float_total = 0;
  const bool exact = (beta == 1);
  const Real rbeta = static_cast<Real>(beta);
  detail::for_each_sorted_tuple(
      n - 1, n_side, [&](const std::vector<std::uint64_t>& t, std::uint64_t perms) {
        LagKey key(t.begin(), t.end());
        const Rat v = eta_n(key, memo);
        if (v == 0) return;
        if (exact)
          exact_total += Rat(perms) * rat_abs(v);
        else
          float_total += Real(perms) * pow(static_cast<Real>(rat_abs(v)), rbeta);
      });
  Real sum = exact ? static_cast<Real>(exact_total) : float_total;
  const Real exponent = static_cast<Real>(alpha) * (n - 1);
  return sum * pow(Real(n_side), -exponent);
}

}  // namespace tmcorr
