#include "tmcorr/asymptotics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <vector>

namespace tmcorr {
namespace {

TEST(PowerMeans, FirstMomentClosedForm) {
  // (1/N) sum_{m<2K} eta(m) = (1 - eta(K)) / (4K)
  for (std::uint64_t k = 1; k <= 4096; ++k) {
    const Rat mean = power_mean_eta(1, 2 * k);
    ASSERT_EQ(mean, (Rat(1) - eta_pair(static_cast<std::int64_t>(k))) / Rat(4 * k))
        << "K=" << k;
  }
  EXPECT_EQ(power_mean_eta(1, 1 << 10), Rat(1, 1536));
  EXPECT_EQ(power_mean_eta(1, std::uint64_t(1) << 20), Rat(1, 1572864));
}

TEST(PowerMeans, ZeroExponentIsOne) {
  EXPECT_EQ(power_mean_eta(0, 1024), Rat(1));
  EXPECT_EQ(power_mean_mu(MuSign::plus, 0, 1024), Rat(1));
}

TEST(PowerMeans, WindowDecayForLowMoments) {
  for (unsigned k = 1; k <= 3; ++k) {
    const Rat small = rat_abs(power_mean_eta(k, 1 << 10));
    const Rat large = rat_abs(power_mean_eta(k, std::uint64_t(1) << 20));
    ASSERT_LE(large, small) << "k=" << k;
    ASSERT_GT(small, Rat(0)) << "k=" << k;
  }
}

TEST(PowerMeans, MuMomentsApproachCoinTossing) {
  const std::uint64_t n = std::uint64_t(1) << 20;
  for (unsigned k = 1; k <= 4; ++k) {
    const Rat target(1, std::int64_t(1) << k);
    for (MuSign sign : {MuSign::plus, MuSign::minus}) {
      const Rat mean = power_mean_mu(sign, k, n);
      ASSERT_LE(rat_abs(mean - target), Rat(1, 100))
          << "k=" << k << " sign=" << (sign == MuSign::plus ? "+" : "-");
    }
  }
}

TEST(PowerMeans, MuSignsSumToOne) {
  for (std::uint64_t n : {64ULL, 1000ULL, 4096ULL})
    ASSERT_EQ(power_mean_mu(MuSign::plus, 1, n) + power_mean_mu(MuSign::minus, 1, n),
              Rat(1));
}

TEST(AbsoluteMeans, SumMatchesScaledMean) {
  for (std::uint64_t n : {64ULL, 1000ULL, 4096ULL}) {
    const Rat exact_sum = abs_sum_eta(n);
    const Real relaxed = abs_power_mean_eta(Rat(1), n, Rat(0));
    ASSERT_EQ(static_cast<Real>(exact_sum), relaxed);
  }
}

TEST(AbsoluteMeans, FloatingPathMatchesExactSquares) {
  const std::uint64_t n = 4096;
  const Real via_float = abs_power_mean_eta(Rat(2), n, Rat(0));
  const Real via_exact = static_cast<Real>(power_mean_eta(2, n) * Rat(n));
  ASSERT_LT(abs(via_float - via_exact), Real("1e-25"));
}

TEST(AbsoluteMeans, ArgumentValidation) {
  EXPECT_THROW(abs_power_mean_eta(Rat(0), 64, Rat(0)), ArgsError);
  EXPECT_THROW(abs_power_mean_eta(Rat(-1), 64, Rat(0)), ArgsError);
  EXPECT_THROW(power_mean_eta(1, 0), ArgsError);
  EXPECT_THROW(abs_sum_eta(0), ArgsError);
}

TEST(AbsoluteMeans, CauchySchwarzSandwich) {
  for (std::uint64_t n : {64ULL, 512ULL, 4096ULL}) {
    const Rat mean_abs = abs_sum_eta(n) / Rat(n);
    const Rat mean_sq = power_mean_eta(2, n);
    ASSERT_LE(mean_abs * mean_abs, mean_sq) << n;
    ASSERT_LE(mean_sq, mean_abs) << n;  // |eta| <= 1 termwise
  }
}

TEST(AbsoluteMeans, PowerMeanMonotonicity) {
  // ((1/N) sum |eta|^b)^{1+b} <= ((1/N) sum |eta|^{1+b})^b for 0 < b < 1
  const std::uint64_t n = 2048;
  const Real rn(n);
  for (const Rat& beta : {Rat(1, 2), Rat(1, 3), Rat(3, 4), Rat(9, 10)}) {
    const Real mb = abs_power_mean_eta(beta, n, Rat(0)) / rn;
    const Real mb1 = abs_power_mean_eta(beta + 1, n, Rat(0)) / rn;
    const Real b = static_cast<Real>(beta);
    const Real lhs = pow(mb, Real(1) + b);
    const Real rhs = pow(mb1, b);
    ASSERT_LE(lhs, rhs * (Real(1) + Real("1e-30"))) << rat_to_string(beta);
  }
}

TEST(AbsoluteMeans, BaseFourEstimates) {
  EXPECT_TRUE(abs_estimates_check(1 << 12));
}

TEST(AbsoluteMeans, ScaledSumsDecayAlongPowersOfFour) {
  // N^{-alpha} sum_{m<N} |eta(m)|^beta shrinks at every step N = 4^k
  const std::pair<Rat, Rat> cases[] = {
      {Rat(1), Rat(1)}, {Rat(1), Rat(4, 5)}, {Rat(1, 2), Rat(1)}};
  for (const auto& [beta, alpha] : cases) {
    Real prev = abs_power_mean_eta(beta, std::uint64_t(1) << 4, alpha);
    for (unsigned k = 3; k <= 8; ++k) {
      const Real cur = abs_power_mean_eta(beta, std::uint64_t(1) << (2 * k), alpha);
      ASSERT_LT(cur, prev) << "beta=" << rat_to_string(beta)
                           << " alpha=" << rat_to_string(alpha) << " k=" << k;
      prev = cur;
    }
  }
}

TEST(ExponentBound, SmallDepthMasses) {
  const Rat expected[20] = {
      Rat(2),
      Rat(3),
      Rat(5),
      Rat(15, 2),
      Rat(47, 4),
      Rat(18),
      Rat(225, 8),
      Rat(87, 2),
      Rat(4325, 64),
      Rat(6701, 64),
      Rat(20815, 128),
      Rat(64613, 256),
      Rat(401239, 1024),
      Rat(1245197, 2048),
      Rat(966273, 1024),
      Rat(11996673, 8192),
      Rat(9309781, 4096),
      Rat(14448629, 4096),
      Rat(358786413, 65536),
      Rat(1113656481, 131072),
  };
  for (unsigned j = 1; j <= 20; ++j) {
    const auto rep = exponent_bound(j);
    ASSERT_EQ(rep.j, j);
    ASSERT_EQ(rep.c_j, expected[j - 1]) << "j=" << j;
    ASSERT_EQ(rep.residue_count, std::uint64_t(1) << j);
  }
}

TEST(ExponentBound, AlphaAnchors) {
  const auto rep3 = exponent_bound(3);
  EXPECT_EQ(rep3.c_j, Rat(5));
  EXPECT_NEAR(rep3.alpha_j, 0.7739760313, 1e-9);

  const auto rep20 = exponent_bound(20);
  EXPECT_EQ(floor_to_half_grid(rep20.c_j), Rat(16993, 2));
  EXPECT_NEAR(exponent_alpha_reported(rep20), 0.6526326476, 1e-9);
  // the raw mass sits just above its half-grid truncation
  EXPECT_LT(rep20.alpha_j - exponent_alpha_reported(rep20), 1e-5);
  EXPECT_GE(rep20.c_j, Rat(16993, 2));
}

TEST(ExponentBound, MassGrowthStaysSubquadratic) {
  // the mass is increasing in depth but never doubles in a single step,
  // keeping every alpha_j strictly inside (0, 1)
  Rat prev = exponent_bound(1).c_j;
  for (unsigned j = 2; j <= 14; ++j) {
    const auto rep = exponent_bound(j);
    ASSERT_GT(rep.c_j, prev) << j;
    ASSERT_LT(rep.c_j, 2 * prev) << j;
    ASSERT_GT(rep.alpha_j, 0.0) << j;
    ASSERT_LT(rep.alpha_j, 1.0) << j;
    prev = rep.c_j;
  }
}

TEST(ExponentBound, DepthValidation) {
  EXPECT_THROW(exponent_bound(0), BudgetError);
  EXPECT_THROW(exponent_bound(25), BudgetError);
  EXPECT_THROW(exponent_bound(10, 30), BudgetError);
}

TEST(HypercubeMeans, FrozenOrderFourValues) {
  EXPECT_EQ(hypercube_mean(4, 8), Rat(1, 192));
  EXPECT_EQ(hypercube_mean(4, 16), Rat(1, 1536));
  EXPECT_EQ(hypercube_mean(4, 32), Rat(1, 12288));
}

TEST(HypercubeMeans, MatchesPairMeanAtOrderTwo) {
  for (std::uint64_t n : {8ULL, 64ULL, 500ULL})
    ASSERT_EQ(hypercube_mean(2, n), power_mean_eta(1, n)) << n;
}

TEST(HypercubeMeans, OddOrdersVanish) {
  EXPECT_EQ(hypercube_mean(3, 32), Rat(0));
  EXPECT_EQ(hypercube_mean(5, 8), Rat(0));
}

TEST(HypercubeMeans, ReciprocalSideDecay) {
  // |S(2N)| <= C / N with C calibrated at N = 8.
  const Rat c = Rat(8) * rat_abs(hypercube_mean(4, 16));
  for (std::uint64_t half : {8ULL, 16ULL, 32ULL}) {
    const Rat v = rat_abs(hypercube_mean(4, 2 * half));
    ASSERT_LE(v, c / Rat(half)) << half;
  }
}

TEST(HypercubeMeans, AbsoluteVariantConsistency) {
  const std::uint64_t n_side = 64;
  const Real via_cube = abs_hypercube_mean(2, n_side, Rat(0), Rat(1));
  ASSERT_EQ(via_cube, static_cast<Real>(abs_sum_eta(n_side)));
  ASSERT_EQ(abs_hypercube_mean(2, n_side, Rat(4, 5), Rat(1)),
            abs_power_mean_eta(Rat(1), n_side, Rat(4, 5)));
  // beta = 2 on the cube equals the exact square sum at order 2
  const Real sq = abs_hypercube_mean(2, n_side, Rat(0), Rat(2));
  const Real sq_exact = static_cast<Real>(power_mean_eta(2, n_side) * Rat(n_side));
  ASSERT_LT(abs(sq - sq_exact), Real("1e-25"));
}

TEST(HypercubeMeans, ScaledAbsoluteDecayAtOrderFour) {
  for (const Rat& beta : {Rat(1), Rat(1, 2)}) {
    Real prev = abs_hypercube_mean(4, 8, Rat(1), beta);
    for (std::uint64_t side = 16; side <= 128; side *= 2) {
      const Real cur = abs_hypercube_mean(4, side, Rat(1), beta);
      ASSERT_LT(cur, prev) << "beta=" << rat_to_string(beta) << " side=" << side;
      prev = cur;
    }
  }
}

TEST(HypercubeMeans, BudgetAndValidation) {
  EXPECT_THROW(hypercube_mean(5, 4096), BudgetError);
  EXPECT_THROW(hypercube_mean(1, 8), ArgsError);
  EXPECT_THROW(hypercube_mean(4, 0), ArgsError);
}

}  // namespace
}  // namespace tmcorr
