#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "dyadic/group.hpp"

namespace dyadic {

/// +1 / -1 entries; W^(k) has order 2^k.
using SignMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr int kMaxMaterializedRank = 12;

/// W_n on the rank-k interval with index m, d = 1. Requires n < 2^k.
int walsh_entry(const BigInt& n, const BigInt& m, int k);

/// W_n(c) for a cube of rank k; requires n^j < 2^k for every j.
int walsh_on_cube(const WalshIndex& n, const DyadicCube& c);

/// W_n(g); requires every n^j < 2^K.
int walsh_at_point(const WalshIndex& n, const DyadicPoint& g);

/// Product of (-1)^{g^j_{k^j}}.
int rademacher(const std::vector<int>& k, const DyadicPoint& g);

/// The k-th Walsh matrix, entry (n, m) = W_n(Delta^(k)_m).
SignMatrix walsh_matrix(int k);

/// W^(k) converted to an arbitrary Eigen scalar.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> walsh_matrix_as(int k) {
  return walsh_matrix(k).cast<Scalar>();
}

/// d-fold Kronecker power of W^(k): rows and columns are multi-indices
/// flattened lexicographically (first coordinate most significant).
SignMatrix walsh_matrix_nd(int k, int d);

/// Flattened position of a multi-index with components < 2^k.
Eigen::Index flat_index(const std::vector<BigInt>& m, int k);

// Dirichlet kernels. A one-dimensional argument is a digit sequence
// g_0, g_1, ...: either the first `rank` digits of a cube coordinate or all
// `depth` digits of a point coordinate. N must not exceed 2^length.

/// D_N via D_N = sum_j R_{k_1}...R_{k_{j-1}} D_{2^{k_j}}, N = sum 2^{k_j}.
std::int64_t dirichlet_1d(const BigInt& N, std::span<const std::uint8_t> digits);
/// D_N by summing W_0 + ... + W_{N-1}. Guarded to N <= 2^24.
std::int64_t dirichlet_1d_direct(const BigInt& N, std::span<const std::uint8_t> digits);

std::int64_t dirichlet_1d(const BigInt& N, const DyadicCube& c);
std::int64_t dirichlet_1d(const BigInt& N, const DyadicPoint& g);

/// Product of one-dimensional kernels.
std::int64_t dirichlet_dd(const WalshIndex& N, const DyadicCube& c);
std::int64_t dirichlet_dd(const WalshIndex& N, const DyadicPoint& g);
/// Sum of W_n over n < N; guarded to at most 2^20 terms.
std::int64_t dirichlet_dd_direct(const WalshIndex& N, const DyadicCube& c);
std::int64_t dirichlet_dd_direct(const WalshIndex& N, const DyadicPoint& g);

/// Digit sequence of coordinate j of a cube.
std::vector<std::uint8_t> cube_digits(const DyadicCube& c, int j);

}  // namespace dyadic
