#include <gtest/gtest.h>

#include <random>

#include "dyadic/group.hpp"

using namespace dyadic;

namespace {

DyadicPoint bits1(std::vector<std::uint8_t> b) { return DyadicPoint(std::vector<std::vector<std::uint8_t>>{std::move(b)}); }

}  // namespace

TEST(Group, XorExamples) {
  EXPECT_EQ(xor_add(bits1({1, 0, 1}), bits1({0, 1, 1})), bits1({1, 1, 0}));
  std::mt19937_64 rng(3);
  const DyadicPoint g = DyadicPoint::random(2, 9, rng);
  EXPECT_EQ(xor_add(g, g), DyadicPoint::zero(2, 9));
  EXPECT_EQ(xor_add(g, DyadicPoint::zero(2, 9)), g);
}

TEST(Group, GroupLaws) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto a = DyadicPoint::random(3, 12, rng), b = DyadicPoint::random(3, 12, rng), c = DyadicPoint::random(3, 12, rng);
    ASSERT_EQ(xor_add(xor_add(a, b), c), xor_add(a, xor_add(b, c)));
    ASSERT_EQ(xor_add(a, b), xor_add(b, a));
  }
  EXPECT_THROW(xor_add(DyadicPoint(2, 3), DyadicPoint(2, 4)), std::invalid_argument);
}

TEST(Group, CubeOf) {
  const DyadicPoint g = bits1({1, 0, 1, 1});
  EXPECT_EQ(cube_of(g, 0), DyadicCube::whole(1));
  EXPECT_EQ(cube_of(g, 2).index[0], 2);
  EXPECT_EQ(cube_of(g, 4).index[0], 11);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const auto h = DyadicPoint::random(2, 8, rng);
    for (int k = 0; k < 8; ++k) {
      ASSERT_TRUE(cube_contains_cube(cube_of(h, k), cube_of(h, k + 1)));
      ASSERT_EQ(cube_of(h, k + 1).parent(), cube_of(h, k));
      ASSERT_TRUE(cube_contains_point(cube_of(h, k), h));
    }
  }
}

TEST(Group, Children) {
  const auto c1 = children(DyadicCube(1, {BigInt(0)}));
  ASSERT_EQ(c1.size(), 2u);
  EXPECT_EQ(c1[0], DyadicCube(2, {BigInt(0)}));
  EXPECT_EQ(c1[1], DyadicCube(2, {BigInt(1)}));
  const auto c2 = children(DyadicCube::whole(2));
  ASSERT_EQ(c2.size(), 4u);
  EXPECT_EQ(c2[1], DyadicCube(1, {BigInt(0), BigInt(1)}));
  EXPECT_EQ(c2[2], DyadicCube(1, {BigInt(1), BigInt(0)}));

  const DyadicCube parent(3, {BigInt(5), BigInt(2)});
  DyadicRational total;
  const auto kids = children(parent);
  for (std::size_t i = 0; i < kids.size(); ++i) {
    total += measure(kids[i]);
    EXPECT_TRUE(cube_contains_cube(parent, kids[i]));
    for (std::size_t j = i + 1; j < kids.size(); ++j) EXPECT_TRUE(cubes_disjoint(kids[i], kids[j]));
  }
  EXPECT_EQ(total, measure(parent));
}

TEST(Group, Measure) {
  EXPECT_EQ(measure(DyadicCube::whole(3)), DyadicRational(1));
  EXPECT_EQ(measure(DyadicCube(3, {BigInt(1), BigInt(7)})), DyadicRational::pow2(-6));
  DyadicRational total;
  for_each_cube(2, 3, [&](const DyadicCube& c) { total += measure(c); });
  EXPECT_EQ(total, DyadicRational(1));
}

TEST(Group, Translate) {
  EXPECT_EQ(translate_cube(DyadicCube(2, {BigInt(1)}), bits1({1, 1})).index[0], 2);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const auto g = DyadicPoint::random(2, 6, rng);
    const DyadicCube c = cube_of(DyadicPoint::random(2, 6, rng), 4);
    ASSERT_EQ(translate_cube(c, DyadicPoint::zero(2, 6)), c);
    ASSERT_EQ(translate_cube(translate_cube(c, g), g), c);
    // g + cube_of(h) is the cube of g + h.
    const auto h = representative_point(c, 6);
    ASSERT_EQ(translate_cube(c, g), cube_of(xor_add(g, h), 4));
  }
}

TEST(Group, Enumeration) {
  std::vector<DyadicCube> seen;
  for_each_subcube(DyadicCube(1, {BigInt(1), BigInt(0)}), 2, [&](const DyadicCube& c) { seen.push_back(c); });
  ASSERT_EQ(seen.size(), 4u);
  EXPECT_EQ(seen.front(), DyadicCube(2, {BigInt(2), BigInt(0)}));
  EXPECT_EQ(seen.back(), DyadicCube(2, {BigInt(3), BigInt(1)}));
  EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
  int count = 0;
  for_each_index({BigInt(1), BigInt(2)}, {BigInt(3), BigInt(5)}, [&](const WalshIndex&) { ++count; });
  EXPECT_EQ(count, 6);
  EXPECT_THROW(DyadicCube(2, {BigInt(4)}), std::invalid_argument);
}
