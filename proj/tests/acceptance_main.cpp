// Acceptance gate: one self-contained check per release criterion, each
// printed as a single [PASS]/[FAIL] line with its runtime and budget.
// Exit status is the number of failed criteria.

#include "tmcorr/tmcorr.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace tmcorr;

struct Outcome {
  bool ok = true;
  std::string detail;  // first failure description, empty when ok

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int g_failures = 0;

void run_criterion(int index, const std::string& label, double budget_seconds,
                   const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (elapsed > budget_seconds)
    out.require(false, "time budget exceeded");
  std::printf("[%s] %2d. %s (%.3fs, limit %.0fs)%s%s\n", out.ok ? "PASS" : "FAIL",
              index, label.c_str(), elapsed, budget_seconds,
              out.detail.empty() ? "" : " -- ", out.detail.c_str());
  std::fflush(stdout);
  if (!out.ok) ++g_failures;
}

std::string rat_str(const Rat& q) { return rat_to_string(q); }

// ---------------------------------------------------------------------------

void criterion1(Outcome& out) {
  const Rat table[9] = {Rat(1),  Rat(-1, 3), Rat(-1, 3), Rat(1, 3), Rat(-1, 3),
                        Rat(0),  Rat(1, 3),  Rat(0),     Rat(-1, 3)};
  for (int m = 0; m <= 8; ++m)
    out.require(eta_pair(m) == table[m],
                "eta(" + std::to_string(m) + ") = " + rat_str(eta_pair(m)));
  for (unsigned l = 1; l <= 20; ++l) {
    const std::int64_t p = std::int64_t(1) << l;
    out.require(eta_pair(p) == Rat(-1, 3), "eta(2^" + std::to_string(l) + ")");
  }
}

void criterion2(Outcome& out) {
  const std::uint64_t n_max = std::uint64_t(1) << 12;
  std::int64_t scale = 0;
  const auto w = eta_scaled_window(2 * n_max, scale);
  std::int64_t cum = w[0] + w[1];  // sum over m < 2 with N = 1
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    if (n > 1) cum += w[2 * n - 2] + w[2 * n - 1];
    // sum_{m<2N} eta(m) == (1 - eta(N)) / 2, exactly
    out.require(2 * cum == scale - w[n], "sum identity at N=" + std::to_string(n));
    out.require(cum >= 0 && 3 * cum <= 2 * scale,
                "sum out of [0, 2/3] at N=" + std::to_string(n));
  }
}

void criterion3(Outcome& out) {
  for (std::int64_t a = 0; a <= 64; ++a)
    for (std::int64_t b = 0; b <= 64; ++b)
      out.require(eta_n_raw({a, b}) == 0,
                  "order-3 at (" + std::to_string(a) + "," + std::to_string(b) + ")");
  std::mt19937_64 rng(12001);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::int64_t> lags(4);
    for (auto& v : lags) v = static_cast<std::int64_t>(rng() % 65);
    out.require(eta_n_raw(lags) == 0, "order-5 trial " + std::to_string(trial));
  }
}

void criterion4(Outcome& out) {
  for (unsigned n = 2; n <= 8; ++n) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << (n - 1)); ++bits) {
      std::vector<std::int64_t> raw(n - 1);
      for (unsigned i = 0; i + 1 < n; ++i) raw[i] = (bits >> i) & 1ULL;
      const LagKey key = canonicalize(raw);
      const Rat direct = corner_value(key);
      const std::string at = "n=" + std::to_string(n) + " bits=" + std::to_string(bits);
      out.require(direct == corner_value_closed_form(key), "closed form at " + at);
      out.require(direct == eta_n_raw(raw), "recursion at " + at);
    }
  }
}

void criterion5(Outcome& out) {
  const RationalMatrix twice_b000{
      {2, 0, 0, 0, 0, 0, 0, 0},   {-1, -1, 0, 0, 0, 0, 0, 0},
      {-1, 0, -1, 0, 0, 0, 0, 0}, {1, 0, 0, 1, 0, 0, 0, 0},
      {-1, 0, 0, 0, -1, 0, 0, 0}, {1, 0, 0, 0, 0, 1, 0, 0},
      {1, 0, 0, 0, 0, 0, 1, 0},   {-1, 0, 0, 0, 0, 0, 0, -1}};
  const RationalMatrix twice_b001{
      {-1, -1, 0, 0, 0, 0, 0, 0}, {0, 2, 0, 0, 0, 0, 0, 0},
      {1, 0, 0, 1, 0, 0, 0, 0},   {0, -1, 0, -1, 0, 0, 0, 0},
      {1, 0, 0, 0, 0, 1, 0, 0},   {0, -1, 0, 0, 0, -1, 0, 0},
      {-1, 0, 0, 0, 0, 0, 0, -1}, {0, 1, 0, 0, 0, 0, 0, 1}};
  const RationalMatrix twice_b010{
      {-1, 0, -1, 0, 0, 0, 0, 0}, {1, 0, 0, 1, 0, 0, 0, 0},
      {0, 0, 2, 0, 0, 0, 0, 0},   {0, 0, -1, -1, 0, 0, 0, 0},
      {1, 0, 0, 0, 0, 0, 1, 0},   {-1, 0, 0, 0, 0, 0, 0, -1},
      {0, 0, -1, 0, 0, 0, -1, 0}, {0, 0, 1, 0, 0, 0, 0, 1}};
  const RationalMatrix twice_b011{
      {1, 0, 0, 1, 0, 0, 0, 0},   {0, -1, 0, -1, 0, 0, 0, 0},
      {0, 0, -1, -1, 0, 0, 0, 0}, {0, 0, 0, 2, 0, 0, 0, 0},
      {-1, 0, 0, 0, 0, 0, 0, -1}, {0, 1, 0, 0, 0, 0, 0, 1},
      {0, 0, 1, 0, 0, 0, 0, 1},   {0, 0, 0, -1, 0, 0, 0, -1}};
  const Rat half(1, 2);
  const RationalMatrix low[4] = {half * twice_b000, half * twice_b001,
                                 half * twice_b010, half * twice_b011};
  for (unsigned g = 0; g < 4; ++g) {
    out.require(b_matrix_kronecker(4, g) == low[g],
                "explicit matrix bits=" + std::to_string(g));
    out.require(b_matrix_kronecker(4, 7 - g) == reversal_conjugate(low[g]),
                "conjugated matrix bits=" + std::to_string(7 - g));
  }
  const RationalMatrix s4 = b_sum(4);
  out.require(s4 * s4 == s4, "sum matrix idempotency");
  for (unsigned n = 2; n <= 5; ++n)
    for (unsigned bits = 0; bits < (1U << (n - 1)); ++bits)
      out.require(b_matrix_kronecker(n, bits) == b_matrix_recursion(n, bits),
                  "product form vs recursion at n=" + std::to_string(n) +
                      " bits=" + std::to_string(bits));
  const RationalMatrix& j = reversal_2x2();
  out.require(reversal_matrix(3) == kron(kron(j, j), j),
              "order reversal as a triple product");
}

void criterion6(Outcome& out) {
  const auto rep2 = exponent_bound(2);
  out.require(rep2.c_j == Rat(3), "depth-2 mass " + rat_str(rep2.c_j));
  const auto rep3 = exponent_bound(3);
  out.require(rep3.c_j == Rat(5), "depth-3 mass " + rat_str(rep3.c_j));
  out.require(std::fabs(rep3.alpha_j - 0.7739760313) <= 1e-9, "depth-3 exponent");
  const auto rep20 = exponent_bound(20);
  const double alpha20 = exponent_alpha_reported(rep20);
  out.require(std::fabs(alpha20 - 0.6526326476) <= 1e-9,
              "depth-20 exponent " + std::to_string(alpha20));
}

void criterion7(Outcome& out) {
  const std::uint64_t n_terms = std::uint64_t(1) << 22;
  BalancedOracle session(n_terms, 32);
  std::mt19937_64 rng(70707);
  // Weights are drawn from [-1, 1] so the absolute tolerance is commensurate
  // with the balanced observable the estimates generalize.
  const auto rand_weight = [&rng]() {
    std::uniform_int_distribution<int> den_dist(1, 9);
    const int den = den_dist(rng);
    std::uniform_int_distribution<int> num(-den, den);
    return Rat(num(rng), den);
  };
  std::vector<WeightPair> weights;
  for (int i = 0; i < 20; ++i) weights.push_back({rand_weight(), rand_weight()});
  const Rat tol(1, 1000);

  std::vector<std::uint64_t> lags;
  std::vector<std::int64_t> slags;
  const auto check_tuple = [&](Outcome& o) {
    slags.assign(lags.begin(), lags.end());
    std::ostringstream at;
    for (std::uint64_t v : lags) at << v << " ";
    {
      const Rat exact = eta_n_raw(slags);
      const auto est = birkhoff_estimate(balanced_weights(), lags, n_terms, &session);
      o.require(rat_abs(est.exact - exact) <= tol, "balanced at lags " + at.str());
    }
    for (const auto& f : weights) {
      const Rat exact = eta_f_general(f, slags);
      const auto est = birkhoff_estimate(f, lags, n_terms, &session);
      o.require(rat_abs(est.exact - exact) <= tol, "weighted at lags " + at.str());
    }
  };

  for (std::uint64_t a = 0; a <= 32; ++a) {
    lags = {a};
    check_tuple(out);
  }
  for (std::uint64_t a = 0; a <= 32; ++a)
    for (std::uint64_t b = a; b <= 32; ++b) {
      lags = {a, b};
      check_tuple(out);
    }
  for (std::uint64_t a = 0; a <= 32; ++a)
    for (std::uint64_t b = a; b <= 32; ++b)
      for (std::uint64_t c = b; c <= 32; ++c) {
        lags = {a, b, c};
        check_tuple(out);
      }
}

void criterion8(Outcome& out) {
  const std::uint64_t n_terms = std::uint64_t(1) << 22;
  const Rat tol(1, 1000);
  for (std::uint64_t m = 0; m <= 32; ++m) {
    const auto est = pd_autocorr_estimate(m, n_terms);
    out.require(rat_abs(est.exact - eta_pd(m)) <= tol,
                "period-doubling lag " + std::to_string(m));
  }
}

void criterion9(Outcome& out) {
  const std::uint64_t small = std::uint64_t(1) << 10;   // 4^5
  const std::uint64_t large = std::uint64_t(1) << 20;   // 4^10
  for (unsigned k = 1; k <= 3; ++k) {
    const Rat a = rat_abs(power_mean_eta(k, large));
    const Rat b = rat_abs(power_mean_eta(k, small));
    out.require(a <= b, "power mean contraction at k=" + std::to_string(k));
  }
  for (unsigned k = 1; k <= 4; ++k) {
    const Rat target(1, std::int64_t(1) << k);
    for (MuSign sign : {MuSign::plus, MuSign::minus})
      out.require(rat_abs(power_mean_mu(sign, k, large) - target) <= Rat(1, 100),
                  "letter-frequency moment k=" + std::to_string(k));
  }
  const Rat c = Rat(8) * rat_abs(hypercube_mean(4, 16));
  for (std::uint64_t half : {8ULL, 16ULL, 32ULL, 64ULL}) {
    const Rat v = rat_abs(hypercube_mean(4, 2 * half));
    out.require(v <= c / Rat(half), "cube mean decay at N=" + std::to_string(half));
  }
}

void criterion10(Outcome& out) {
  std::mt19937_64 rng(10101);
  const auto rand_rat = [&rng]() {
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den(1, 12);
    return Rat(num(rng), den(rng));
  };
  for (int trial = 0; trial < 200; ++trial) {
    const WeightPair f{rand_rat(), rand_rat()};
    const std::int64_t m1 = static_cast<std::int64_t>(rng() % 600);
    const std::int64_t m2 = static_cast<std::int64_t>(rng() % 600);
    out.require(eta_f_general(f, {m1}) == eta_f_pair(f, m1),
                "pair closed form, trial " + std::to_string(trial));
    out.require(eta_f_general(f, {m1, m2}) == eta_f_triple(f, m1, m2),
                "triple closed form, trial " + std::to_string(trial));
    const unsigned count = 1 + static_cast<unsigned>(rng() % 4);
    std::vector<std::int64_t> lags(count);
    std::vector<std::int64_t> values{0};
    for (auto& v : lags) {
      v = static_cast<std::int64_t>(rng() % 600);
      values.push_back(v);
    }
    out.require(eta_f_general(balanced_weights(), lags) == eta_of_values(values),
                "balanced reduction, trial " + std::to_string(trial));
  }
}

void criterion11(Outcome& out) {
  std::vector<std::uint64_t> cuts;
  for (unsigned k = 6; k <= 14; ++k) cuts.push_back(std::uint64_t(1) << k);
  const auto series = regseq_cesaro_series(4, cuts);
  for (std::size_t i = 1; i < series.size(); ++i)
    out.require(rat_abs(series[i]) < rat_abs(series[i - 1]),
                "running average decay at cut index " + std::to_string(i));

  std::mt19937_64 rng(11011);
  for (int trial = 0; trial < 100; ++trial) {
    const unsigned n = 2 + static_cast<unsigned>(trial % 3);  // orders 2, 3, 4
    std::vector<std::uint64_t> base(n - 1);
    std::vector<std::int64_t> raw(n - 1);
    for (unsigned i = 0; i + 1 < n; ++i) {
      base[i] = rng() % 512;
      raw[i] = static_cast<std::int64_t>(base[i]);
    }
    out.require(eta_vector(base).front() == eta_n_raw(raw),
                "joint vector head, trial " + std::to_string(trial));
  }
}

}  // namespace

int main() {
  std::printf("acceptance: exact correlation library release gate\n");
  run_criterion(1, "pair correlation table and dyadic lags", 1, criterion1);
  run_criterion(2, "partial-sum identity and bounds to N=4096", 10, criterion2);
  run_criterion(3, "odd-order correlations vanish", 30, criterion3);
  run_criterion(4, "corner values by table, closed form, recursion", 1, criterion4);
  run_criterion(5, "explicit order-4 matrices and product identities", 5, criterion5);
  run_criterion(6, "digit-depth masses and decay exponents", 60, criterion6);
  run_criterion(7, "brute-force sweep over all lag tuples to 32", 300, criterion7);
  run_criterion(8, "period-doubling estimates track exact values", 60, criterion8);
  run_criterion(9, "power means, letter moments, cube mean decay", 300, criterion9);
  run_criterion(10, "weighted evaluator closed-form equivalences", 10, criterion10);
  run_criterion(11, "running averages decay; joint vector consistency", 120, criterion11);
  if (g_failures == 0)
    std::printf("acceptance: all 11 criteria passed\n");
  else
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return g_failures;
}
