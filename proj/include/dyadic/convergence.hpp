#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dyadic/mset.hpp"
#include "dyadic/quasimeasure.hpp"

namespace dyadic {

using Rational = boost::multiprecision::cpp_rational;

enum class SumMode { Rectangular, Cubic, Lambda, Iterated };

struct ConvergenceRecord {
  WalshIndex N;
  SumMode mode = SumMode::Rectangular;
  Rational lambda = 1;     // Lambda mode only
  std::vector<int> order;  // Iterated mode only, 1-based coordinates
  DyadicRational value;
  std::optional<int> stage;

  /// "rectangular", "cubic", "lambda(3/2)", "iterated(2,1)".
  std::string mode_tag() const;
};

/// a_0 plus the sum over declared blocks of a_n W_n(g), n < N.
DyadicRational block_partial_sum(const CoefficientOracle& coeffs, const WalshIndex& N, const DyadicPoint& g);

/// Nested one-coordinate sums in the given order (1-based). The outermost
/// coordinate runs below outer_limit; inner sums run over the full support.
DyadicRational iterated_partial_sum(const CoefficientOracle& coeffs, const std::vector<int>& order,
                                    const BigInt& outer_limit, const DyadicPoint& g);

/// max_{j,k} N^j / N^k <= lambda, compared exactly.
bool lambda_admissible(const WalshIndex& N, const Rational& lambda);

struct ZeroSumReport {
  bool precondition = false;
  int witness_rank = -1;  // smallest w' with tau vanishing below cube_of(g, w'), -1 if none <= w
  int rank_used = 0;
  std::vector<std::pair<WalshIndex, DyadicRational>> sums;
  bool all_zero = false;
  std::string message;
};

/// Checks S_{2^w M}(g) = 0 for every M in the range.
ZeroSumReport zero_sum_check(const Quasimeasure& tau, const DyadicPoint& g, int w, const std::vector<WalshIndex>& M_range);

/// Smallest w <= max_rank such that tau vanishes on every rank-scan_rank
/// subcube of cube_of(g, w); nullopt if there is none.
std::optional<int> witness_rank(const Quasimeasure& tau, const DyadicPoint& g, int scan_rank);

/// 2^{d + s - m_s / 2}; s >= 2.
DyadicRational tail_bound(int s, int dimension);

/// Sum of a_n W_n(g) over n in B_{2 m_s} with n < N, in at most 2^d
/// products (no enumeration of block terms). N^j may equal 2^{2 m_s + 1}.
DyadicRational factorized_block_sum(const MSetConfig& cfg, const WalshIndex& N, const DyadicPoint& g);

/// S_N(g) for the closed-form series, block by block through
/// factorized_block_sum.
DyadicRational factorized_partial_sum(const MSetConfig& cfg, const WalshIndex& N, const DyadicPoint& g);

/// In-range stage of the block containing N, if any.
std::optional<int> block_stage_of(const WalshIndex& N);

}  // namespace dyadic
