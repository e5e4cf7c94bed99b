#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "dyadic/group.hpp"
#include "dyadic/quasimeasure.hpp"

namespace dyadic {

/// m_1 = 0, m_{s+1} = 2(2 m_s + 1). Stages are 1-based.
class StageSequence {
 public:
  explicit StageSequence(int count);

  int count() const { return static_cast<int>(m_.size()); }
  /// m_s for any s >= 1 (extends past count() on demand).
  int m(int s) const;
  const std::vector<int>& values() const { return m_; }

 private:
  std::vector<int> m_;
};

StageSequence stage_sequence(int count);

/// pi_s acting on rank-m_s cube indices: identity, a product of
/// per-coordinate permutations, or (coefficient layer only) a general
/// permutation of flattened multi-indices.
class StagePermutation {
 public:
  enum class Kind { Identity, Product, General };

  static StagePermutation identity(int dimension, int m);
  static StagePermutation product(int m, std::vector<std::vector<std::uint64_t>> per_coordinate);
  static StagePermutation general(int dimension, int m, std::vector<std::uint64_t> flat);
  static StagePermutation random_product(int dimension, int m, std::mt19937_64& rng);

  Kind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  int rank() const { return m_; }

  std::vector<BigInt> apply(const std::vector<BigInt>& index) const;
  std::vector<BigInt> apply_inverse(const std::vector<BigInt>& index) const;
  /// Per-coordinate maps; Product or Identity only.
  std::uint64_t coordinate(int j, std::uint64_t x) const;
  std::uint64_t coordinate_inverse(int j, std::uint64_t x) const;

 private:
  StagePermutation() = default;

  Kind kind_ = Kind::Identity;
  int dimension_ = 0;
  int m_ = 0;
  std::vector<std::vector<std::uint64_t>> forward_;
  std::vector<std::vector<std::uint64_t>> inverse_;
};

/// Dimension, stage cap and permutation family. Stages without an explicit
/// permutation (including all stages past the cap) use the identity.
struct MSetConfig {
  int dimension = 2;
  int stages = 2;
  StageSequence sequence{2};
  bool allow_general = false;

  MSetConfig() = default;
  MSetConfig(int dimension, int stages);

  /// nullptr means the identity.
  const StagePermutation* permutation(int s) const;
  void set_permutation(int s, StagePermutation pi);
  bool all_product_form() const;

  int m(int s) const { return sequence.m(s); }

 private:
  std::vector<std::optional<StagePermutation>> permutations_;
};

struct BlockDecomposition {
  int s = 0;
  std::vector<BigInt> p;
  std::vector<BigInt> q;
};

/// (s, p, q) with n = 2^{2m_s} 1 + 2^{m_s} p + q, or nullopt off the blocks.
std::optional<BlockDecomposition> decompose_block_index(const WalshIndex& n);
WalshIndex block_index(int s, const std::vector<BigInt>& p, const std::vector<BigInt>& q);

/// Product over coordinates of W^(k)_{a^j, b^j}.
int walsh_entry_product(const std::vector<BigInt>& a, const std::vector<BigInt>& b, int k);

bool in_Fs(const DyadicPoint& g, int s, const MSetConfig& cfg);
bool in_F_tilde(const DyadicPoint& g, int s, const MSetConfig& cfg);
/// c inside F_s; needs rank(c) >= 2 m_s + 1.
bool cube_in_Fs(const DyadicCube& c, int s, const MSetConfig& cfg);
/// c inside F~_s; needs rank(c) >= 2 m_s + 1. s = 0 gives true.
bool cube_in_F_tilde(const DyadicCube& c, int s, const MSetConfig& cfg);
/// c meets F (stages past the cap refine with identity permutations).
bool cube_meets_F(const DyadicCube& c, const MSetConfig& cfg);

/// Largest s with 2 m_s + 1 <= rank, 0 if none.
int decided_stage(int rank);

Quasimeasure mset_quasimeasure(const MSetConfig& cfg);

DyadicRational mu_F_tilde(int s, const MSetConfig& cfg);

/// 2^{s-1-d m_s}.
DyadicRational stage_scale(int s, int dimension);

DyadicRational closed_form_coefficient(const WalshIndex& n, const MSetConfig& cfg);
DyadicRational closed_form_local_coefficient(const WalshIndex& n, const DyadicCube& c, const MSetConfig& cfg);
/// Coefficient of tau restricted to a window of rank <= m_s (n in B_{2 m_s}).
DyadicRational closed_form_restricted_coefficient(const WalshIndex& n, const DyadicCube& window,
                                                  const MSetConfig& cfg);
/// tau on cubes of rank m_s or 2 m_s + 1.
DyadicRational stage_cube_values(const DyadicCube& c, const MSetConfig& cfg);

/// Closed-form coefficients, declared on {0} and B_{2 m_s}, s <= S.
CoefficientOracle mset_coefficients(const MSetConfig& cfg);

}  // namespace dyadic
