#include "dyadic/uset.hpp"

#include <algorithm>
#include <stdexcept>

namespace dyadic {

IndexSequence symmetric_index_sequence(const MSetConfig& cfg, const std::vector<WalshIndex>& base) {
  if (base.empty()) throw std::invalid_argument("symmetric_index_sequence: empty base family");
  IndexSequence seq;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const int s = static_cast<int>(i) + 1;
    const int m = cfg.m(s);
    if (base[i].dimension() != cfg.dimension) throw std::invalid_argument("base index: dimension mismatch");
    const BigInt bound = BigInt(1) << (m + 1);
    std::vector<BigInt> n(cfg.dimension);
    for (int j = 0; j < cfg.dimension; ++j) {
      if (base[i][j] >= bound) throw std::invalid_argument("base index out of range [0, 2^{m_s+1}) at stage " + std::to_string(s));
      n[j] = (BigInt(1) << (2 * m)) + (base[i][j] << m);
    }
    const auto k = static_cast<int>(highest_set_bit(n[0]));
    int low = static_cast<int>(lowest_set_bit(n[0]));
    for (const auto& c : n) {
      if (highest_set_bit(c) != k) throw std::invalid_argument("n_s components lie in different blocks at stage " + std::to_string(s));
      low = std::min(low, static_cast<int>(lowest_set_bit(c)));
    }
    if (!seq.blocks.empty() && k <= seq.blocks.back()) throw std::invalid_argument("block exponents must increase");
    if (low < m) throw std::invalid_argument("lowest set bit below m_s");
    seq.terms.emplace_back(std::move(n));
    seq.blocks.push_back(k);
    seq.lowest_bits.push_back(low);
  }
  return seq;
}

bool in_symmetric_Fs(const DyadicPoint& g, int s, const IndexSequence& seq) {
  if (s < 1 || s > seq.size()) throw std::invalid_argument("stage out of range for the sequence");
  return walsh_at_point(seq.terms[s - 1], g) == 1;
}

int constancy_rank(const WalshIndex& N) {
  int k = 0;
  for (const auto& c : N.n)
    if (!c.is_zero()) k = std::max(k, static_cast<int>(highest_set_bit(c)) + 1);
  return k;
}

bool cube_meets_symmetric_F(const DyadicCube& c, const IndexSequence& seq) {
  // Distinct stages read disjoint digit ranges, and an undecided stage still
  // has its top digit free, so only the decided stages constrain the cube.
  for (const auto& n : seq.terms)
    if (constancy_rank(n) <= c.rank && walsh_on_cube(n, c) != 1) return false;
  return true;
}

Quasimeasure symmetric_quasimeasure(const IndexSequence& seq) {
  if (seq.size() == 0) throw std::invalid_argument("symmetric_quasimeasure: empty sequence");
  return tau_from_closed_set([seq](const DyadicCube& c) { return cube_meets_symmetric_F(c, seq); }, seq.dimension());
}

DyadicRational u_integral(const Quasimeasure& tau, const WalshIndex& N, const DyadicCube& window, int k) {
  return local_coefficient(tau, N, window, k);
}

DirichletDifferenceReport dirichlet_difference_check(const BigInt& N, int q,
                                                     const std::vector<std::pair<DyadicPoint, DyadicPoint>>& samples) {
  DirichletDifferenceReport report;
  if (N.sign() <= 0 || q < 0) throw std::invalid_argument("dirichlet_difference_check: need N > 0, q >= 0");
  if (lowest_set_bit(N) <= q) {
    report.skipped = true;
    report.message = "lowest set bit of N does not exceed q";
    return report;
  }
  const BigInt step = BigInt(1) << q;
  for (const auto& [x, g] : samples) {
    const DyadicPoint h = xor_add(x, g);
    if (h.dimension() != 1) throw std::invalid_argument("dirichlet_difference_check: one-dimensional points only");
    const std::int64_t lhs = dirichlet_1d_direct(N + step, h.coordinate(0)) - dirichlet_1d_direct(N, h.coordinate(0));
    bool in_zero_cube = true;
    for (int t = 0; t < q; ++t) in_zero_cube = in_zero_cube && h.bit(0, t) == 0;
    const std::int64_t rhs =
        in_zero_cube ? (std::int64_t{1} << q) * walsh_at_point(WalshIndex(std::vector<BigInt>{N}), h) : 0;
    ++report.checked;
    if (lhs != rhs) ++report.failures;
  }
  report.message = report.failures == 0 ? "identity holds" : "identity fails";
  return report;
}

UContradictionReport u2_contradiction_demo(const MSetConfig& cfg, const IndexSequence& seq, int max_stage,
                                           int max_window_rank) {
  if (max_stage < 1 || max_stage > seq.size()) throw std::invalid_argument("max_stage outside the sequence");
  if (seq.dimension() != cfg.dimension) throw std::invalid_argument("sequence dimension does not match d");
  UContradictionReport report;
  const Quasimeasure tau = symmetric_quasimeasure(seq);
  const Quasimeasure tau_m = mset_quasimeasure(cfg);
  report.ok = true;
  bool found = false;
  for (int r = 0; r <= max_window_rank; ++r) {
    for_each_cube(cfg.dimension, r, [&](const DyadicCube& c) {
      const DyadicRational value = tau(c);
      if (value.is_zero()) return;
      found = true;
      for (int s = 1; s <= max_stage; ++s) {
        const WalshIndex& n = seq.terms[s - 1];
        UIntegralRecord sym{"symmetric", s, c, u_integral(tau, n, c, std::max(constancy_rank(n), r)), value, false};
        sym.ok = sym.integral == value;
        report.ok = report.ok && sym.ok;
        report.records.push_back(std::move(sym));

        UIntegralRecord contrast{"mset", s, c, DyadicRational(0), tau_m(c), true};
        const int k = std::max(constancy_rank(n), r);
        contrast.integral = u_integral(tau_m, n, c, k);
        if (decompose_block_index(n)) contrast.ok = contrast.integral.abs() <= stage_scale(s, cfg.dimension);
        report.ok = report.ok && contrast.ok;
        report.records.push_back(std::move(contrast));
      }
    });
  }
  if (!found) {
    report.ok = false;
    report.message = "no cube with nonzero tau: construction failure";
    return report;
  }
  report.message = report.ok ? "integrals reproduce tau on every window" : "mismatch found";
  return report;
}

}  // namespace dyadic
