#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "dyadic/convergence.hpp"
#include "dyadic/mset.hpp"
#include "dyadic/quasimeasure.hpp"
#include "dyadic/suites.hpp"

using namespace dyadic;

TEST(Quasimeasure, WholeGroupSetIsHaar) {
  const Quasimeasure whole = tau_from_closed_set([](const DyadicCube&) { return true; }, 2);
  for_each_cube(2, 3, [&](const DyadicCube& c) { ASSERT_EQ(whole(c), measure(c)); });
}

TEST(Quasimeasure, SinglePoint) {
  const Quasimeasure tau = tau_from_closed_set(
      [](const DyadicCube& c) {
        for (const auto& x : c.index)
          if (x != 0) return false;
        return true;
      },
      2);
  for_each_cube(2, 3, [&](const DyadicCube& c) {
    const bool zero = c.index[0] == 0 && c.index[1] == 0;
    ASSERT_EQ(tau(c), DyadicRational(zero ? 1 : 0));
  });
  const Quasimeasure mass = point_mass(DyadicPoint::zero(2, 3));
  for_each_cube(2, 3, [&](const DyadicCube& c) { ASSERT_EQ(mass(c), tau(c)); });
}

TEST(Quasimeasure, FirstStageSet) {
  const MSetConfig cfg(2, 1);
  const Quasimeasure tau = tau_from_closed_set([&](const DyadicCube& c) { return c.rank == 0 || cube_in_F_tilde(c, 1, cfg); }, 2);
  int inside = 0;
  for_each_cube(2, 1, [&](const DyadicCube& c) {
    if (!cube_in_F_tilde(c, 1, cfg)) {
      ASSERT_TRUE(tau(c).is_zero());
      return;
    }
    ++inside;
    ASSERT_EQ(tau(c), DyadicRational::pow2(-1));
    ASSERT_EQ(tau(c), stage_cube_values(c, cfg));
  });
  EXPECT_EQ(inside, 2);
}

TEST(Quasimeasure, RejectsBadPredicates) {
  // Three children of the root meet the set: not a power of two.
  auto three = [](const DyadicCube& c) { return c.rank == 0 || !(c.index[0] == 1 && c.index[1] == 1); };
  const Quasimeasure bad = tau_from_closed_set(three, 2);
  EXPECT_THROW(bad(DyadicCube(1, {BigInt(0), BigInt(0)})), std::domain_error);
  auto holes = [](const DyadicCube& c) { return c.rank <= 1; };
  const Quasimeasure inconsistent = tau_from_closed_set(holes, 1);
  EXPECT_THROW(inconsistent(DyadicCube(2, {BigInt(0)})), std::logic_error);
}

TEST(Quasimeasure, Restrict) {
  const Quasimeasure tau = mset_quasimeasure(MSetConfig(2, 2));
  const Quasimeasure same = restrict(tau, DyadicCube::whole(2));
  for_each_cube(2, 3, [&](const DyadicCube& c) { ASSERT_EQ(same(c), tau(c)); });
  const DyadicCube window(1, {BigInt(0), BigInt(0)});
  const Quasimeasure part = restrict(tau, window);
  for_each_cube(2, 3, [&](const DyadicCube& c) {
    if (cubes_disjoint(c, window)) ASSERT_TRUE(part(c).is_zero());
    else ASSERT_EQ(part(c), tau(c));
  });
  EXPECT_EQ(part(DyadicCube::whole(2)), tau(window));
  EXPECT_FALSE(find_additivity_violation(part, 5));
}

TEST(Quasimeasure, AdditivityOfFamily) {
  EXPECT_TRUE(checks::additivity(2, 6, 1).passed);
  EXPECT_TRUE(checks::additivity(3, 4, 2).passed);
}

TEST(Quasimeasure, Coefficients) {
  const Quasimeasure haar = haar_measure(2);
  EXPECT_EQ(fourier_coefficient(haar, WalshIndex{0, 0}, 3), DyadicRational(1));
  for_each_index({BigInt(0), BigInt(0)}, {BigInt(8), BigInt(8)}, [&](const WalshIndex& n) {
    if (!n.is_zero()) ASSERT_TRUE(fourier_coefficient(haar, n, 3).is_zero());
  });
  const Quasimeasure tau = mset_quasimeasure(MSetConfig(2, 2));
  EXPECT_EQ(local_coefficient(tau, WalshIndex{17, 19}, DyadicCube::whole(2), 5),
            fourier_coefficient(tau, WalshIndex{17, 19}, 5));
  // Local coefficients over a partition add up to the global one.
  DyadicRational sum;
  for_each_cube(2, 2, [&](const DyadicCube& c) { sum += local_coefficient(tau, WalshIndex{21, 30}, c, 5); });
  EXPECT_EQ(sum, fourier_coefficient(tau, WalshIndex{21, 30}, 5));
  EXPECT_THROW(fourier_coefficient(tau, WalshIndex{32, 0}, 5), std::invalid_argument);
}

TEST(Quasimeasure, PartialSums) {
  std::mt19937_64 rng(31);
  const Quasimeasure haar = haar_measure(2);
  const Quasimeasure tau = mset_quasimeasure(MSetConfig(2, 2));
  const CoefficientOracle coeffs = mset_coefficients(MSetConfig(2, 2));
  for (int i = 0; i < 6; ++i) {
    const auto g = DyadicPoint::random(2, 5, rng);
    EXPECT_EQ(partial_sum(tau, WalshIndex{1, 1}, g, 5), tau(DyadicCube::whole(2)));
    for (int a = 1; a <= 32; a += 3)
      for (int b = 1; b <= 32; b += 5) {
        const WalshIndex N{a, b};
        ASSERT_EQ(partial_sum(haar, N, g, 5), DyadicRational(1));
        const DyadicRational fast = partial_sum(tau, N, g, 5);
        ASSERT_EQ(fast, partial_sum_dense(tau, N, g, 5));
        ASSERT_EQ(fast, block_partial_sum(coeffs, N, g));
      }
  }
}

TEST(Quasimeasure, SeriesRoundTrip) {
  CoefficientOracle unit{2, [](const WalshIndex& n) { return DyadicRational(n.is_zero() ? 1 : 0); }, SupportKind::Dense,
                         BigInt(1), {}, "unit"};
  EXPECT_EQ(series_value_on_cube(unit, DyadicCube(2, {BigInt(1), BigInt(3)})), DyadicRational::pow2(-4));
  const MSetConfig cfg(2, 2);
  const Quasimeasure tau = mset_quasimeasure(cfg);
  const CoefficientOracle brute = coefficients_of(tau, 5);
  for_each_cube(2, 5, [&](const DyadicCube& c) {
    ASSERT_EQ(series_value_on_cube(brute, c), tau(c));
    ASSERT_EQ(tau(c), stage_cube_values(c, cfg));
  });
}

TEST(Quasimeasure, Support) {
  EXPECT_EQ(support_cubes(haar_measure(2), 2, 3).size(), 16u);
  const auto g = DyadicPoint::zero(1, 4);
  const auto branch = support_cubes(point_mass(g), 3, 4);
  ASSERT_EQ(branch.size(), 1u);
  EXPECT_EQ(branch[0], cube_of(g, 3));
  const MSetConfig cfg(2, 2);
  const auto cubes = support_cubes(mset_quasimeasure(cfg), 5, 5);
  EXPECT_EQ(cubes.size(), 256u);
  for (const auto& c : cubes) EXPECT_TRUE(cube_in_F_tilde(c, 2, cfg));
}

TEST(Quasimeasure, ConcurrentEvaluation) {
  const Quasimeasure tau = mset_quasimeasure(MSetConfig(2, 2));
  std::vector<std::thread> pool;
  std::vector<DyadicRational> totals(4);
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&, t] {
      for_each_cube(2, 5, [&](const DyadicCube& c) { totals[t] += tau(c); });
    });
  for (auto& th : pool) th.join();
  for (const auto& x : totals) EXPECT_EQ(x, DyadicRational(1));
}
