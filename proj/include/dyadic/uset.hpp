#pragma once

#include <string>
#include <vector>

#include "dyadic/mset.hpp"
#include "dyadic/quasimeasure.hpp"

namespace dyadic {

/// Terms N_i with the block each lies in.
struct IndexSequence {
  std::vector<WalshIndex> terms;
  std::vector<int> blocks;        // k_i with N_i in B_{k_i}
  std::vector<int> lowest_bits;   // min_j lsb(N_i^j)

  int dimension() const { return terms.empty() ? 0 : terms.front().dimension(); }
  int size() const { return static_cast<int>(terms.size()); }
};

/// n_s = 2^{2 m_s} 1 + 2^{m_s} base_s for s = 1..base.size().
/// Requires 0 <= base_s < 2^{m_s + 1} 1 and checks that each n_s sits in a
/// single block, with block exponents strictly increasing and
/// lsb(n_s^j) >= m_s.
IndexSequence symmetric_index_sequence(const MSetConfig& cfg, const std::vector<WalshIndex>& base);

/// W_{n_s}(g) = 1.
bool in_symmetric_Fs(const DyadicPoint& g, int s, const IndexSequence& seq);
/// c meets {g : W_{n_s}(g) = 1 for all s}.
bool cube_meets_symmetric_F(const DyadicCube& c, const IndexSequence& seq);
Quasimeasure symmetric_quasimeasure(const IndexSequence& seq);

/// Integral of W_N over the window against tau, at rank k.
DyadicRational u_integral(const Quasimeasure& tau, const WalshIndex& N, const DyadicCube& window, int k);

/// Smallest rank on which W_N is constant on cubes.
int constancy_rank(const WalshIndex& N);

struct DirichletDifferenceReport {
  bool skipped = false;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string message;
};

/// D_{N+2^q}(x+g) - D_N(x+g) = 2^q W_N(x+g) I(x+g in Delta^(q)_0), d = 1.
DirichletDifferenceReport dirichlet_difference_check(const BigInt& N, int q,
                                                     const std::vector<std::pair<DyadicPoint, DyadicPoint>>& samples);

struct UIntegralRecord {
  std::string construction;  // "symmetric" or "mset"
  int stage = 0;
  DyadicCube cube;
  DyadicRational integral;
  DyadicRational tau_value;  // tau(cube) for the construction
  bool ok = false;
};

struct UContradictionReport {
  bool ok = false;
  std::vector<UIntegralRecord> records;
  std::string message;
};

/// For every cube of rank <= max_window_rank meeting the symmetric F,
/// checks the integral of W_{n_s} against tau equals tau(cube) for s <= max_stage,
/// and lists the M-set integrals for the same indices alongside.
UContradictionReport u2_contradiction_demo(const MSetConfig& cfg, const IndexSequence& seq, int max_stage,
                                           int max_window_rank = 2);

}  // namespace dyadic
