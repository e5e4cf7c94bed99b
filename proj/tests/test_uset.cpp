#include <gtest/gtest.h>

#include <random>

#include "dyadic/suites.hpp"
#include "dyadic/uset.hpp"

using namespace dyadic;

TEST(USet, IndexSequence) {
  const MSetConfig cfg(2, 2);
  const auto seq = symmetric_index_sequence(cfg, {WalshIndex{1, 1}, WalshIndex{2, 3}});
  EXPECT_EQ(seq.terms[0], (WalshIndex{2, 2}));
  EXPECT_EQ(seq.terms[1], (WalshIndex{24, 28}));
  EXPECT_GE(seq.lowest_bits[1], 2);
  EXPECT_EQ(seq.blocks, (std::vector<int>{1, 4}));
  // Base 7 would push the second stage out of its block.
  EXPECT_THROW(symmetric_index_sequence(cfg, {WalshIndex{0, 0}, WalshIndex{7, 0}}), std::invalid_argument);
}

TEST(USet, Sets) {
  const MSetConfig cfg(2, 2);
  const auto seq = symmetric_index_sequence(cfg, {WalshIndex{0, 0}, WalshIndex{2, 3}});
  EXPECT_TRUE(in_symmetric_Fs(DyadicPoint::zero(2, 5), 1, seq));
  EXPECT_TRUE(in_symmetric_Fs(DyadicPoint::zero(2, 5), 2, seq));
  int one = 0, two = 0, both = 0;
  for_each_cube(2, 5, [&](const DyadicCube& c) {
    const auto g = representative_point(c, 5);
    const bool a = in_symmetric_Fs(g, 1, seq), b = in_symmetric_Fs(g, 2, seq);
    one += a;
    two += b;
    both += a && b;
    ASSERT_EQ(a && b, cube_meets_symmetric_F(c, seq));
  });
  EXPECT_EQ(one, 512);
  EXPECT_EQ(two, 512);
  EXPECT_EQ(both, 256);
}

TEST(USet, Integrals) {
  const MSetConfig cfg(2, 2);
  const auto seq = symmetric_index_sequence(cfg, {WalshIndex{0, 0}, WalshIndex{1, 2}});
  EXPECT_TRUE(u_integral(haar_measure(2), WalshIndex{1, 0}, DyadicCube::whole(2), 3).is_zero());
  const Quasimeasure tau = symmetric_quasimeasure(seq);
  for (int s = 1; s <= 2; ++s) EXPECT_EQ(u_integral(tau, seq.terms[s - 1], DyadicCube::whole(2), 5), DyadicRational(1));
  const auto report = u2_contradiction_demo(cfg, seq, 2);
  EXPECT_TRUE(report.ok) << report.message;
  EXPECT_FALSE(report.records.empty());
  for (const auto& r : report.records)
    if (r.construction == "symmetric") EXPECT_FALSE(r.integral.is_zero());
}

TEST(USet, WitnessOverRandomBases) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto r = checks::uset_witness(MSetConfig(2, 2), 2, seed);
    EXPECT_TRUE(r.passed) << r.detail;
  }
}

TEST(USet, KernelDifference) {
  std::mt19937_64 rng(71);
  std::vector<std::pair<DyadicPoint, DyadicPoint>> pairs;
  for (int i = 0; i < 50; ++i) pairs.emplace_back(DyadicPoint::random(1, 6, rng), DyadicPoint::random(1, 6, rng));
  const auto r = dirichlet_difference_check(BigInt(12), 1, pairs);
  EXPECT_FALSE(r.skipped);
  EXPECT_EQ(r.failures, 0u);
  EXPECT_EQ(r.checked, 50u);
  EXPECT_TRUE(dirichlet_difference_check(BigInt(12), 2, pairs).skipped);
  EXPECT_TRUE(checks::dirichlet_difference(64).passed);
}
