#include "dyadic/convergence.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>

namespace dyadic {

namespace mp = boost::multiprecision;

namespace {

constexpr std::uint64_t kMaxIteratedTerms = std::uint64_t{1} << 24;

std::uint64_t point_digits(const DyadicPoint& g, int j, int from, int len) {
  std::uint64_t v = 0;
  for (int t = from; t < from + len; ++t) v = (v << 1) | g.bit(j, t);
  return v;
}

void require_blocks(const CoefficientOracle& coeffs) {
  if (coeffs.kind != SupportKind::Blocks) throw std::invalid_argument("coefficient support is not block-structured");
}

int ceil_log2(const BigInt& x) {
  if (x <= 1) return 0;
  return static_cast<int>(highest_set_bit(x - 1)) + 1;
}

}  // namespace

std::string ConvergenceRecord::mode_tag() const {
  switch (mode) {
    case SumMode::Rectangular:
      return "rectangular";
    case SumMode::Cubic:
      return "cubic";
    case SumMode::Lambda: {
      std::string r = mp::numerator(lambda).str();
      if (mp::denominator(lambda) != 1) r += "/" + mp::denominator(lambda).str();
      return "lambda(" + r + ")";
    }
    case SumMode::Iterated: {
      std::string r;
      for (int j : order) r += (r.empty() ? "" : ",") + std::to_string(j);
      return "iterated(" + r + ")";
    }
  }
  return "unknown";
}

DyadicRational block_partial_sum(const CoefficientOracle& coeffs, const WalshIndex& N, const DyadicPoint& g) {
  require_blocks(coeffs);
  return partial_sum_from_coefficients(coeffs, N, g);
}

DyadicRational iterated_partial_sum(const CoefficientOracle& coeffs, const std::vector<int>& order,
                                    const BigInt& outer_limit, const DyadicPoint& g) {
  require_blocks(coeffs);
  const int d = coeffs.dimension;
  if (g.dimension() != d || static_cast<int>(order.size()) != d)
    throw std::invalid_argument("iterated_partial_sum: dimension mismatch");
  std::vector<int> sorted(order);
  std::sort(sorted.begin(), sorted.end());
  for (int j = 0; j < d; ++j)
    if (sorted[j] != j + 1) throw std::invalid_argument("iterated_partial_sum: order must permute 1..d");

  // Values of one coordinate compatible with the coordinates fixed so far:
  // nothing fixed yet, all zero, or all inside block B_k.
  struct Range {
    BigInt lo, hi;
    int block;  // -1 for the zero index
  };
  auto candidates = [&](std::optional<int> state, const BigInt* limit) {
    std::vector<Range> out;
    auto clip = [&](Range r) {
      if (limit && r.hi > *limit) r.hi = *limit;
      if (r.lo < r.hi) out.push_back(r);
    };
    if (!state || *state == -1) clip({0, 1, -1});
    for (int k : coeffs.block_exponents)
      if (!state || *state == k) clip({BigInt(1) << k, BigInt(1) << (k + 1), k});
    return out;
  };

  std::vector<BigInt> n(d);
  std::uint64_t terms = 0;
  std::function<DyadicRational(int, std::optional<int>)> level = [&](int depth, std::optional<int> state) {
    const int j = order[depth] - 1;
    DyadicRational sum;
    for (const Range& r : candidates(state, depth == 0 ? &outer_limit : nullptr)) {
      for (BigInt x = r.lo; x < r.hi; ++x) {
        n[j] = x;
        if (depth + 1 < d) {
          sum += level(depth + 1, r.block);
          continue;
        }
        if (++terms > kMaxIteratedTerms) throw std::invalid_argument("iterated sum exceeds the term cap");
        const WalshIndex idx(n);
        const DyadicRational a = coeffs(idx);
        if (a.is_zero()) continue;
        if (walsh_at_point(idx, g) > 0)
          sum += a;
        else
          sum -= a;
      }
    }
    return sum;
  };
  return level(0, std::nullopt);
}

bool lambda_admissible(const WalshIndex& N, const Rational& lambda) {
  if (N.n.empty()) throw std::invalid_argument("lambda_admissible: empty index");
  BigInt lo = N[0], hi = N[0];
  for (const auto& c : N.n) {
    if (c.sign() <= 0) throw std::invalid_argument("lambda_admissible: N must be positive");
    lo = mp::min(lo, c);
    hi = mp::max(hi, c);
  }
  return Rational(hi, lo) <= lambda;
}

std::optional<int> witness_rank(const Quasimeasure& tau, const DyadicPoint& g, int scan_rank) {
  for (int w = 0; w <= scan_rank && w <= g.depth(); ++w)
    if (vanishes_below(tau, cube_of(g, w), scan_rank)) return w;
  return std::nullopt;
}

ZeroSumReport zero_sum_check(const Quasimeasure& tau, const DyadicPoint& g, int w,
                             const std::vector<WalshIndex>& M_range) {
  if (w < 0) throw std::invalid_argument("zero_sum_check: negative rank");
  ZeroSumReport report;
  int extra = 0;
  for (const auto& M : M_range)
    for (const auto& c : M.n) {
      if (c.sign() <= 0) throw std::invalid_argument("zero_sum_check: M must be positive");
      extra = std::max(extra, ceil_log2(c));
    }
  report.rank_used = w + extra;
  if (report.rank_used > g.depth()) throw std::invalid_argument("zero_sum_check: point depth too small for 2^w M");
  const DyadicCube home = cube_of(g, w);
  report.precondition = vanishes_below(tau, home, report.rank_used);
  for (int v = 0; v <= w; ++v)
    if (vanishes_below(tau, cube_of(g, v), report.rank_used)) {
      report.witness_rank = v;
      break;
    }
  if (!report.precondition) {
    report.message = "g inside support at depth " + std::to_string(w);
    return report;
  }
  report.all_zero = true;
  for (const auto& M : M_range) {
    std::vector<BigInt> N(M.n);
    for (auto& c : N) c <<= w;
    const WalshIndex NN(std::move(N));
    DyadicRational v = partial_sum(tau, NN, g, report.rank_used);
    if (!v.is_zero()) report.all_zero = false;
    report.sums.emplace_back(NN, std::move(v));
  }
  report.message = report.all_zero ? "all partial sums vanish" : "nonzero partial sum found";
  return report;
}

DyadicRational tail_bound(int s, int dimension) {
  if (s < 2) throw std::invalid_argument("tail_bound: defined for s >= 2 only");
  const int m = StageSequence(1).m(s);
  return DyadicRational::pow2(dimension + s - m / 2);
}

std::optional<int> block_stage_of(const WalshIndex& N) {
  const auto b = decompose_block_index(N);
  if (!b) return std::nullopt;
  return b->s;
}

DyadicRational factorized_block_sum(const MSetConfig& cfg, const WalshIndex& N, const DyadicPoint& g) {
  const int d = cfg.dimension;
  if (N.dimension() != d || g.dimension() != d) throw std::invalid_argument("factorized_block_sum: dimension mismatch");

  int s = 0;
  for (int t = 1; t <= cfg.stages && s == 0; ++t) {
    const int m = cfg.m(t);
    const BigInt lo = BigInt(1) << (2 * m), hi = BigInt(1) << (2 * m + 1);
    bool inside = true;
    for (const auto& c : N.n) inside = inside && c >= lo && c <= hi;
    if (inside) s = t;
  }
  if (s == 0) throw std::invalid_argument("factorized_block_sum: N is not in a configured block");
  const StagePermutation* pi = cfg.permutation(s);
  if (pi && pi->kind() == StagePermutation::Kind::General)
    throw std::invalid_argument("factorized_block_sum needs product-form permutations");
  const int m = cfg.m(s);
  if (g.depth() < 2 * m + 1) throw std::invalid_argument("factorized_block_sum: point depth below 2 m_s + 1");
  if (m > 30) throw std::invalid_argument("factorized_block_sum: stage too large");

  const std::uint64_t side = std::uint64_t{1} << m;
  int rad = 1;

  // Per coordinate: the "full rows" option (p < P, every q) and the
  // "partial row" option (p = P, q < Q).
  struct Option {
    bool present = false;
    std::uint64_t u = 0;  // pi^{-1}(p)
    DyadicRational factor;
  };
  std::vector<std::array<Option, 2>> options(d);
  for (int j = 0; j < d; ++j) {
    const BigInt rest = N[j] - (BigInt(1) << (2 * m));
    const auto P = static_cast<std::uint64_t>(rest >> m);
    const auto Q = static_cast<std::uint64_t>(rest & BigInt(side - 1));
    const std::uint64_t r = point_digits(g, j, 0, m);
    const std::uint64_t r2 = point_digits(g, j, m, m);
    if (g.bit(j, 2 * m)) rad = -rad;

    // Full rows: the q-sum is D_{2^m} on Delta_{r + u}, which forces u = r.
    const std::uint64_t p_full = pi ? pi->coordinate(j, r) : r;
    if (p_full < P) {
      options[j][0].present = true;
      options[j][0].u = r;
      options[j][0].factor = DyadicRational::pow2(m) * DyadicRational(walsh_entry(BigInt(p_full), BigInt(r2), m));
    }
    if (Q > 0 && P < side) {
      const std::uint64_t u = pi ? pi->coordinate_inverse(j, P) : P;
      std::vector<std::uint8_t> digits(m);
      for (int t = 0; t < m; ++t) digits[t] = static_cast<std::uint8_t>(((r ^ u) >> (m - 1 - t)) & 1u);
      const std::int64_t kernel = dirichlet_1d(BigInt(Q), digits);
      if (kernel != 0) {
        options[j][1].present = true;
        options[j][1].u = u;
        options[j][1].factor = DyadicRational(kernel) * DyadicRational(walsh_entry(BigInt(P), BigInt(r2), m));
      }
    }
  }

  DyadicRational total;
  std::vector<BigInt> u(d);
  for (unsigned sigma = 0; sigma < (1u << d); ++sigma) {
    DyadicRational term(1);
    bool present = true;
    for (int j = 0; j < d && present; ++j) {
      const Option& o = options[j][(sigma >> j) & 1u];
      present = o.present;
      if (!present) break;
      term *= o.factor;
      u[j] = o.u;
    }
    if (!present) continue;
    if (!cube_in_F_tilde(DyadicCube(m, u), s - 1, cfg)) continue;
    total += term;
  }
  const DyadicRational scale = stage_scale(s, d);
  return rad > 0 ? total * scale : -(total * scale);
}

DyadicRational factorized_partial_sum(const MSetConfig& cfg, const WalshIndex& N, const DyadicPoint& g) {
  const int d = cfg.dimension;
  if (N.dimension() != d) throw std::invalid_argument("factorized_partial_sum: dimension mismatch");
  for (const auto& c : N.n)
    if (c.sign() <= 0) throw std::invalid_argument("factorized_partial_sum: N must be positive");
  DyadicRational sum(1);
  for (int s = 1; s <= cfg.stages; ++s) {
    const int m = cfg.m(s);
    const BigInt lo = BigInt(1) << (2 * m), hi = BigInt(1) << (2 * m + 1);
    std::vector<BigInt> clipped(d);
    bool reaches = true;
    for (int j = 0; j < d; ++j) {
      reaches = reaches && N[j] > lo;
      clipped[j] = mp::min(N[j], hi);
    }
    if (!reaches) break;
    sum += factorized_block_sum(cfg, WalshIndex(std::move(clipped)), g);
  }
  return sum;
}

}  // namespace dyadic
