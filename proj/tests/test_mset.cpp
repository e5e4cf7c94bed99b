#include <gtest/gtest.h>

#include <random>

#include "dyadic/mset.hpp"
#include "dyadic/suites.hpp"

using namespace dyadic;

namespace {

std::vector<MSetConfig> configs(int d, int S, int random_count, std::uint64_t seed) {
  std::vector<MSetConfig> out{MSetConfig(d, S)};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < random_count; ++i) {
    MSetConfig cfg(d, S);
    for (int s = 2; s <= S; ++s) cfg.set_permutation(s, StagePermutation::random_product(d, cfg.m(s), rng));
    out.push_back(std::move(cfg));
  }
  return out;
}

}  // namespace

TEST(Stages, Sequence) {
  EXPECT_EQ(stage_sequence(1).values(), std::vector<int>{0});
  EXPECT_EQ(stage_sequence(4).values(), (std::vector<int>{0, 2, 10, 42}));
  const StageSequence seq(4);
  for (int s = 2; s <= 4; ++s) EXPECT_EQ(seq.m(s) / 2, 2 * seq.m(s - 1) + 1);
}

TEST(Stages, BlockDecomposition) {
  const auto one = decompose_block_index(WalshIndex{1, 1});
  ASSERT_TRUE(one);
  EXPECT_EQ(one->s, 1);
  EXPECT_EQ(one->p, (std::vector<BigInt>{0, 0}));
  const auto b = decompose_block_index(WalshIndex{27, 17});
  ASSERT_TRUE(b);
  EXPECT_EQ(b->s, 2);
  EXPECT_EQ(b->p, (std::vector<BigInt>{2, 0}));
  EXPECT_EQ(b->q, (std::vector<BigInt>{3, 1}));
  EXPECT_EQ(block_index(2, b->p, b->q), (WalshIndex{27, 17}));
  EXPECT_FALSE(decompose_block_index(WalshIndex{2, 5}));
  EXPECT_FALSE(decompose_block_index(WalshIndex{2, 2}));  // B_1 is not a stage block
  EXPECT_FALSE(decompose_block_index(WalshIndex{0, 0}));
}

TEST(Stages, Permutations) {
  std::mt19937_64 rng(37);
  const auto pi = StagePermutation::random_product(2, 2, rng);
  for_each_index({BigInt(0), BigInt(0)}, {BigInt(4), BigInt(4)}, [&](const WalshIndex& m) {
    ASSERT_EQ(pi.apply_inverse(pi.apply(m.n)), m.n);
  });
  EXPECT_THROW(StagePermutation::product(2, {{0, 1, 2, 2}, {0, 1, 2, 3}}), std::invalid_argument);
  MSetConfig cfg(2, 2);
  EXPECT_THROW(cfg.set_permutation(2, StagePermutation::random_product(2, 3, rng)), std::invalid_argument);
  EXPECT_THROW(cfg.set_permutation(2, StagePermutation::general(2, 2, std::vector<std::uint64_t>{15, 1, 2, 3, 4, 5, 6,
                                                                                                  7, 8, 9, 10, 11, 12,
                                                                                                  13, 14, 0})),
               std::invalid_argument);
}

TEST(Sets, Membership) {
  const MSetConfig cfg(2, 2);
  EXPECT_TRUE(in_Fs(DyadicPoint::zero(2, 5), 1, cfg));
  int rank5 = 0;
  for_each_cube(2, 5, [&](const DyadicCube& c) { rank5 += cube_in_Fs(c, 2, cfg) ? 1 : 0; });
  EXPECT_EQ(rank5, 512);
  int rank1 = 0;
  for_each_cube(2, 1, [&](const DyadicCube& c) { rank1 += cube_in_F_tilde(c, 1, cfg) ? 1 : 0; });
  EXPECT_EQ(rank1, 2);
  int rank2 = 0;
  for_each_cube(2, 2, [&](const DyadicCube& c) { rank2 += cube_in_F_tilde(c, 1, cfg) ? 1 : 0; });
  EXPECT_EQ(rank2, 8);
  int meets = 0, tilde = 0;
  for_each_cube(2, 5, [&](const DyadicCube& c) {
    meets += cube_meets_F(c, cfg) ? 1 : 0;
    tilde += cube_in_F_tilde(c, 2, cfg) ? 1 : 0;
    if (cube_in_F_tilde(c, 2, cfg)) ASSERT_TRUE(cube_in_F_tilde(c, 1, cfg));
  });
  EXPECT_EQ(meets, 256);
  EXPECT_EQ(tilde, 256);
  EXPECT_TRUE(cube_meets_F(DyadicCube::whole(2), cfg));
  EXPECT_FALSE(cube_meets_F(DyadicCube(1, {BigInt(0), BigInt(1)}), cfg));
  std::mt19937_64 rng(41);
  for (int i = 0; i < 200; ++i) {
    const auto g = DyadicPoint::random(2, 7, rng);
    ASSERT_EQ(in_F_tilde(g, 2, cfg), cube_in_F_tilde(cube_of(g, 5), 2, cfg));
  }
}

TEST(Sets, Measures) {
  EXPECT_EQ(mu_F_tilde(1, MSetConfig(2, 2)), DyadicRational::pow2(-1));
  EXPECT_EQ(mu_F_tilde(2, MSetConfig(2, 2)), DyadicRational::pow2(-2));
  EXPECT_EQ(mu_F_tilde(1, MSetConfig(3, 1)), DyadicRational::pow2(-1));
  for (const auto& cfg : configs(2, 2, 3, 43)) {
    EXPECT_TRUE(checks::stage_measures(cfg, 2).passed);
    EXPECT_TRUE(checks::halving_geometry(cfg, 2).passed);
  }
  EXPECT_TRUE(checks::halving_geometry(MSetConfig(3, 2), 2).passed);
}

TEST(Sets, StageCubeValues) {
  const MSetConfig cfg(2, 2);
  EXPECT_EQ(stage_cube_values(DyadicCube(1, {BigInt(0), BigInt(0)}), cfg), DyadicRational::pow2(-1));
  EXPECT_EQ(stage_cube_values(DyadicCube(1, {BigInt(0), BigInt(1)}), cfg), DyadicRational(0));
  EXPECT_EQ(stage_cube_values(DyadicCube(2, {BigInt(0), BigInt(0)}), cfg), DyadicRational::pow2(-3));
  EXPECT_EQ(stage_scale(2, 2), DyadicRational::pow2(-3));
}

TEST(Coefficients, ClosedFormMatchesBruteForce) {
  for (const auto& cfg : configs(2, 2, 3, 47)) {
    EXPECT_EQ(closed_form_coefficient(WalshIndex{0, 0}, cfg), DyadicRational(1));
    EXPECT_TRUE(closed_form_coefficient(WalshIndex{2, 5}, cfg).is_zero());
    const auto r = checks::closed_form_coefficients(cfg, 2);
    EXPECT_TRUE(r.passed) << r.detail;
    EXPECT_TRUE(checks::off_block_vanishing(cfg, 2).passed);
    EXPECT_TRUE(checks::local_closed_form(cfg, 2).passed);
    EXPECT_TRUE(checks::magnitude_rigidity(cfg, 2).passed);
  }
}

TEST(Coefficients, LocalVanishingAndIntegral) {
  for (const auto& cfg : configs(2, 2, 1, 53)) {
    const auto r = checks::local_vanishing_and_integral(cfg, 2);
    EXPECT_TRUE(r.passed) << r.detail;
  }
}

TEST(Coefficients, LocalFormFactors) {
  const MSetConfig cfg(2, 2);
  // n = (27, 17): p = (2, 0); only the p-cube can carry the coefficient.
  const WalshIndex n{27, 17};
  for_each_cube(2, 2, [&](const DyadicCube& c) {
    const bool at_p = c.index[0] == 2 && c.index[1] == 0;
    if (!at_p) ASSERT_TRUE(closed_form_local_coefficient(n, c, cfg).is_zero());
  });
  const DyadicCube outside(2, {BigInt(0), BigInt(2)});
  ASSERT_FALSE(cube_in_F_tilde(outside, 1, cfg));
  const WalshIndex n_out = block_index(2, {BigInt(0), BigInt(2)}, {BigInt(1), BigInt(1)});
  EXPECT_TRUE(closed_form_local_coefficient(n_out, outside, cfg).is_zero());
  EXPECT_TRUE(closed_form_coefficient(n_out, cfg).is_zero());
}

TEST(Coefficients, Restricted) {
  const MSetConfig cfg(2, 2);
  const Quasimeasure tau = mset_quasimeasure(cfg);
  std::vector<DyadicCube> windows{DyadicCube::whole(2), DyadicCube(1, {BigInt(0), BigInt(0)}),
                                  DyadicCube(2, {BigInt(1), BigInt(3)}), DyadicCube(2, {BigInt(0), BigInt(1)})};
  for (const auto& w : windows) {
    const Quasimeasure part = restrict(tau, w);
    for_each_index({BigInt(16), BigInt(16)}, {BigInt(32), BigInt(32)}, [&](const WalshIndex& n) {
      const DyadicRational closed = closed_form_restricted_coefficient(n, w, cfg);
      ASSERT_EQ(closed, fourier_coefficient(part, n, 5));
      if (w.rank == 0) ASSERT_EQ(closed, closed_form_coefficient(n, cfg));
    });
  }
}

TEST(Coefficients, ThreeDimensional) {
  const MSetConfig cfg(3, 1);
  EXPECT_TRUE(checks::closed_form_coefficients(cfg, 1).passed);
  EXPECT_TRUE(checks::additivity(3, 4, 3).passed);
}
