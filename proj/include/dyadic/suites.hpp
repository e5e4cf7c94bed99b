#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dyadic/mset.hpp"

namespace dyadic {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

// Self-contained verification routines. Each compares a closed form or a
// fast path against a brute-force evaluation and reports exact agreement.
namespace checks {

/// W^(k) W^(k) = 2^k E and symmetry, k = 0..max_k.
CheckResult walsh_matrix_orthogonality(int max_k);
/// Orthogonality of the d-dimensional Walsh matrix, k = 0..max_k.
CheckResult walsh_nd_orthogonality(int d, int max_k);
/// W_{2^m p}(Delta^(2m)_{2^m a + b}) = W_p(Delta^(m)_b), exhaustive.
CheckResult scaling_identity(const std::vector<int>& ranks, const std::vector<int>& dims);
/// Decomposition vs direct summation: all N <= max_1d (d = 1) and all
/// N <= (max_2d, max_2d) (d = 2), on every cube of the smallest fitting rank.
CheckResult dirichlet_decomposition(int max_1d, int max_2d);
/// Additivity at every cube of rank < below_rank for the standard family
/// of constructed quasimeasures.
CheckResult additivity(int d, int below_rank, std::uint64_t seed);
/// Closed form vs brute force for all n < 2^{2 m_s + 1} 1.
CheckResult closed_form_coefficients(const MSetConfig& cfg, int s);
/// Local closed form vs brute force for blocks up to stage s.
CheckResult local_closed_form(const MSetConfig& cfg, int s);
/// tau^_0 = 1 and off-block coefficients vanish below 2^{2 m_s + 1} 1.
CheckResult off_block_vanishing(const MSetConfig& cfg, int s);
/// Local vanishing below the block and the measure/quasimeasure integral
/// identity on F_s, at stage s.
CheckResult local_vanishing_and_integral(const MSetConfig& cfg, int s);
/// mu F~_s = 2^{-s}.
CheckResult stage_measures(const MSetConfig& cfg, int s_max);
/// Each rank-2m_s cube in F~_{s-1} has 2^{d-1} children in F_s.
CheckResult halving_geometry(const MSetConfig& cfg, int s_max);
/// S_{2^w M}(g) = 0 off the support, for tau_F and restricted tau_F.
CheckResult zero_partial_sums(const MSetConfig& cfg, int points, int max_M, int depth, std::uint64_t seed);
/// max |tau^_n| over each block and the count of indices attaining it.
CheckResult magnitude_rigidity(const MSetConfig& cfg, int s_max);
/// |S_N(g)| <= tail bound at stage 2 for g off F~_2 with w(g) <= m_2.
CheckResult tail_bound_diagnostic(const MSetConfig& cfg, int points, std::uint64_t seed);
/// factorized path vs naive enumeration over B_{2 m_s}, every N.
CheckResult factorized_vs_naive(const MSetConfig& cfg, int s, int points, std::uint64_t seed);
/// Stage-3 point sums through the factorized path, cross-checked against
/// the quasimeasure side, with a time limit per sum.
CheckResult factorized_stage_three(int d, int points, double limit_seconds, std::uint64_t seed);
/// Iterated sums in every coordinate order equal the rectangular sum.
CheckResult iterated_vs_rectangular(const MSetConfig& cfg, int points, std::uint64_t seed);
/// Symmetric-set integrals reproduce tau; M-set integrals stay small.
CheckResult uset_witness(const MSetConfig& cfg, int max_stage, std::uint64_t seed);
/// Kernel-difference identity for N <= max_n, q < lsb(N), d = 1, all points.
CheckResult dirichlet_difference(int max_n);

}  // namespace checks

/// The verify-mode suite for the configuration, sampling points at depth
/// at least K. With d = 1 only the kernel-level checks run.
std::vector<CheckResult> run_verify_suites(const MSetConfig& cfg, int K, std::uint64_t seed);

}  // namespace dyadic
