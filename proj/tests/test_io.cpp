#include <gtest/gtest.h>

#include "dyadic/io.hpp"

using namespace dyadic;
using nlohmann::ordered_json;

TEST(IO, Csv) {
  RecordTable t{{"a", "b"}, {}};
  t.add({1, "x,y"});
  t.add({ordered_json(nullptr), "say \"hi\""});
  EXPECT_EQ(to_csv(t), "a,b\n1,\"x,y\"\n,\"say \"\"hi\"\"\"\n");
  EXPECT_THROW(t.add({1}), std::invalid_argument);
}

TEST(IO, Json) {
  RecordTable t{{"n", "ok"}, {}};
  t.add({bigint_json(BigInt(1) << 70), true});
  const auto doc = ordered_json::parse(to_json({{"seed", 3}}, t));
  EXPECT_EQ(doc["config"]["seed"], 3);
  EXPECT_EQ(doc["records"][0]["n"], "1180591620717411303424");
  EXPECT_EQ(doc["records"][0]["ok"], true);
  EXPECT_EQ(bigint_json(BigInt(-5)), -5);
}

TEST(IO, Labels) {
  EXPECT_EQ(cube_label(DyadicCube(2, {BigInt(3), BigInt(1)})), "2:3,1");
  std::vector<std::vector<std::uint8_t>> bits{{1, 0, 1}};
  EXPECT_EQ(digit_string(DyadicPoint(bits), 0), "101");
}

TEST(IO, Permutations) {
  MSetConfig cfg(2, 2);
  apply_permutation_json(R"({"permutations": [{"stage": 2, "coordinate": 1, "perm": [1, 0, 3, 2]}]})", cfg);
  const StagePermutation* pi = cfg.permutation(2);
  ASSERT_NE(pi, nullptr);
  EXPECT_EQ(pi->apply({BigInt(0), BigInt(2)}), (std::vector<BigInt>{1, 2}));
  EXPECT_TRUE(cfg.all_product_form());

  MSetConfig general(2, 2);
  general.allow_general = true;
  std::string flat = "[";
  for (int i = 0; i < 16; ++i) flat += std::to_string((i + 5) % 16) + (i < 15 ? "," : "]");
  apply_permutation_json(R"([{"stage": 2, "general": true, "perm": )" + flat + "}]", general);
  EXPECT_FALSE(general.all_product_form());

  MSetConfig strict(2, 2);
  EXPECT_THROW(apply_permutation_json("[{\"stage\": 2, \"general\": true, \"perm\": " + flat + "}]", strict),
               std::invalid_argument);
  EXPECT_THROW(apply_permutation_json("not json", strict), std::invalid_argument);
  EXPECT_THROW(apply_permutation_json(R"([{"stage": 3, "coordinate": 1, "perm": [0]}])", strict), std::invalid_argument);
  EXPECT_THROW(apply_permutation_json(R"([{"stage": 2, "coordinate": 1, "perm": [0, 0, 1, 2]}])", strict),
               std::invalid_argument);
  EXPECT_THROW(apply_permutation_file("/nonexistent/perm.json", strict), std::invalid_argument);
}
