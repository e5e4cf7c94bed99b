#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "dyadic/rational.hpp"

namespace dyadic {

/// Element of G^d truncated to `depth` binary digits per coordinate.
///
/// Bit t of coordinate j is g^j_t, the coefficient of e_t; the unit-interval
/// picture would read it as the digit of weight 2^{-t-1}.
class DyadicPoint {
 public:
  DyadicPoint(int dimension, int depth);
  /// bits[j][t]; every row must have the same length.
  explicit DyadicPoint(std::vector<std::vector<std::uint8_t>> bits);

  static DyadicPoint zero(int dimension, int depth) { return DyadicPoint(dimension, depth); }
  /// Uniform point drawn from raw engine output (platform independent).
  static DyadicPoint random(int dimension, int depth, std::mt19937_64& rng);

  int dimension() const { return static_cast<int>(bits_.size()); }
  int depth() const { return depth_; }

  int bit(int coordinate, int t) const { return bits_[coordinate][t]; }
  void set_bit(int coordinate, int t, int value);
  std::span<const std::uint8_t> coordinate(int j) const { return bits_[j]; }

  friend bool operator==(const DyadicPoint&, const DyadicPoint&) = default;

 private:
  int depth_;
  std::vector<std::vector<std::uint8_t>> bits_;
};

/// Dyadic cube of rank k: product of the rank-k intervals with indices m^j.
///
/// Index convention: a point g lies in the cube iff g^j_t = bit (k-1-t) of
/// m^j for every t < k, i.e. the first k digits read most-significant first.
struct DyadicCube {
  int rank = 0;
  std::vector<BigInt> index;

  DyadicCube() = default;
  DyadicCube(int rank, std::vector<BigInt> index);

  static DyadicCube whole(int dimension) { return DyadicCube(0, std::vector<BigInt>(dimension)); }

  int dimension() const { return static_cast<int>(index.size()); }
  /// Digit t (t < rank) of coordinate j of every point in the cube.
  int digit(int j, int t) const;
  /// The unique rank-(k-1) cube containing this one.
  DyadicCube parent() const;

  friend bool operator==(const DyadicCube&, const DyadicCube&) = default;
  /// Rank first, then indices lexicographically.
  friend bool operator<(const DyadicCube& a, const DyadicCube& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.index < b.index;
  }
};

/// Multi-index n of the d-dimensional Walsh function W_n.
struct WalshIndex {
  std::vector<BigInt> n;

  WalshIndex() = default;
  explicit WalshIndex(std::vector<BigInt> components);
  WalshIndex(std::initializer_list<long long> components);

  static WalshIndex constant(int dimension, const BigInt& value) {
    return WalshIndex(std::vector<BigInt>(dimension, value));
  }

  int dimension() const { return static_cast<int>(n.size()); }
  const BigInt& operator[](int j) const { return n[j]; }
  BigInt& operator[](int j) { return n[j]; }
  bool is_zero() const;

  friend bool operator==(const WalshIndex&, const WalshIndex&) = default;
  friend bool operator<(const WalshIndex& a, const WalshIndex& b) { return a.n < b.n; }
};

/// Componentwise g XOR h.
DyadicPoint xor_add(const DyadicPoint& a, const DyadicPoint& b);

/// The rank-k cube containing g.
DyadicCube cube_of(const DyadicPoint& g, int k);

/// The 2^d rank-(k+1) cubes 2m + sigma, sigma in lexicographic order
/// (sigma^1 most significant).
std::vector<DyadicCube> children(const DyadicCube& c);

bool cube_contains_point(const DyadicCube& c, const DyadicPoint& g);
/// Cubes are either nested or disjoint.
bool cube_contains_cube(const DyadicCube& outer, const DyadicCube& inner);
bool cubes_disjoint(const DyadicCube& a, const DyadicCube& b);

/// Haar measure 2^{-kd}.
DyadicRational measure(const DyadicCube& c);

/// g + c: the cube whose index is m XOR (first k digits of g).
DyadicCube translate_cube(const DyadicCube& c, const DyadicPoint& g);

/// First k digits of g^j read as a k-bit index (the cube_of convention).
BigInt prefix_index(const DyadicPoint& g, int j, int k);

/// A point of the cube: its digits, followed by zeros up to `depth`.
DyadicPoint representative_point(const DyadicCube& c, int depth);

/// Calls f on every rank-k cube of G^d, indices in lexicographic order.
void for_each_cube(int dimension, int k, const std::function<void(const DyadicCube&)>& f);
/// Calls f on every rank-k subcube of c (k >= rank(c)), lexicographic order.
void for_each_subcube(const DyadicCube& c, int k, const std::function<void(const DyadicCube&)>& f);

/// Calls f on every multi-index lo <= n < hi (componentwise), lexicographic.
void for_each_index(const std::vector<BigInt>& lo, const std::vector<BigInt>& hi,
                    const std::function<void(const WalshIndex&)>& f);

}  // namespace dyadic
