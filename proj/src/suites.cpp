#include "dyadic/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <numeric>
#include <random>
#include <sstream>

#include "dyadic/convergence.hpp"
#include "dyadic/eigen_support.hpp"
#include "dyadic/io.hpp"
#include "dyadic/quasimeasure.hpp"
#include "dyadic/uset.hpp"
#include "dyadic/walsh.hpp"

namespace dyadic {

namespace {

using Clock = std::chrono::steady_clock;

class Check {
 public:
  explicit Check(std::string name) : start_(Clock::now()) { result_.name = std::move(name); }

  /// Records a failure; only the first few messages are kept.
  void fail(const std::string& what) {
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  void expect(bool ok, const std::string& what) {
    ++checked_;
    if (!ok) fail(what);
  }
  void note(const std::string& s) { extra_ += (extra_.empty() ? "" : "; ") + s; }

  CheckResult done() {
    result_.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    result_.passed = failures_ == 0 && checked_ > 0;
    std::ostringstream os;
    os << checked_ << " checks";
    if (failures_) os << ", " << failures_ << " failed: " << notes_;
    if (!extra_.empty()) os << "; " << extra_;
    if (checked_ == 0) os << " (nothing checked)";
    result_.detail = os.str();
    return result_;
  }

 private:
  CheckResult result_;
  Clock::time_point start_;
  std::size_t checked_ = 0;
  std::size_t failures_ = 0;
  std::string notes_;
  std::string extra_;
};

template <typename F>
CheckResult guarded(const std::string& name, F body) {
  try {
    return body();
  } catch (const std::exception& e) {
    CheckResult r;
    r.name = name;
    r.detail = std::string("exception: ") + e.what();
    return r;
  }
}

std::string label(const WalshIndex& n) {
  std::string s = "(";
  for (int j = 0; j < n.dimension(); ++j) s += (j ? "," : "") + n[j].str();
  return s + ")";
}

std::vector<BigInt> filled(int d, const BigInt& v) { return std::vector<BigInt>(d, v); }

int ceil_log2(int x) {
  int k = 0;
  while ((1 << k) < x) ++k;
  return k;
}

/// Smallest w with cube_of(g, w) missing F.
std::optional<int> predicate_witness(const DyadicPoint& g, const MSetConfig& cfg) {
  for (int w = 0; w <= g.depth(); ++w)
    if (!cube_meets_F(cube_of(g, w), cfg)) return w;
  return std::nullopt;
}

/// S_N(g) for every N in B_{2m} (N^j in [2^{2m}, 2^{2m+1}]), by explicit
/// summation of a_n W_n(g) with running prefix sums. Entry layout: the
/// coordinate offsets N^j - 2^{2m} in [0, 2^{2m}], lexicographic.
std::vector<DyadicRational> naive_block_sums(const CoefficientOracle& coeffs, int m, const DyadicPoint& g) {
  const int d = coeffs.dimension;
  const std::size_t side = std::size_t{1} << (2 * m);
  const BigInt start = BigInt(1) << (2 * m);
  const DyadicRational base = block_partial_sum(coeffs, WalshIndex(filled(d, start)), g);

  // Terms a_n W_n(g) on the grid of offsets, then inclusive prefix sums per axis.
  std::size_t total = 1;
  for (int j = 0; j < d; ++j) total *= side;
  std::vector<DyadicRational> grid(total);
  std::vector<BigInt> n(d);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (int j = d - 1; j >= 0; --j, rest /= side) n[j] = start + BigInt(rest % side);
    const WalshIndex idx(n);
    const DyadicRational a = coeffs(idx);
    if (!a.is_zero()) grid[flat] = walsh_at_point(idx, g) > 0 ? a : -a;
  }
  std::size_t stride = 1;
  for (int j = d - 1; j >= 0; --j, stride *= side)
    for (std::size_t flat = 0; flat < total; ++flat)
      if ((flat / stride) % side != 0) grid[flat] += grid[flat - stride];

  // Shift to offsets in [0, side]: offset 0 in any coordinate means no block terms.
  const std::size_t out_side = side + 1;
  std::size_t out_total = 1;
  for (int j = 0; j < d; ++j) out_total *= out_side;
  std::vector<DyadicRational> out(out_total);
  for (std::size_t flat = 0; flat < out_total; ++flat) {
    std::size_t rest = flat, src = 0, mul = 1;
    bool empty = false;
    for (int j = d - 1; j >= 0; --j, rest /= out_side, mul *= side) {
      const std::size_t off = rest % out_side;
      if (off == 0) empty = true;
      else src += (off - 1) * mul;
    }
    out[flat] = empty ? base : base + grid[src];
  }
  return out;
}

WalshIndex block_grid_index(std::size_t flat, int d, int m) {
  const std::size_t out_side = (std::size_t{1} << (2 * m)) + 1;
  std::vector<BigInt> N(d);
  for (int j = d - 1; j >= 0; --j, flat /= out_side) N[j] = (BigInt(1) << (2 * m)) + BigInt(flat % out_side);
  return WalshIndex(std::move(N));
}

MSetConfig truncated(const MSetConfig& cfg, int s) {
  MSetConfig copy = cfg;
  copy.stages = s;
  return copy;
}

}  // namespace

namespace checks {

CheckResult walsh_matrix_orthogonality(int max_k) {
  const std::string name = "walsh_matrix_orthogonality";
  return guarded(name, [&] {
    Check c(name);
    for (int k = 0; k <= max_k; ++k) {
      const SignMatrix W = walsh_matrix(k);
      const SignMatrix product = W * W;
      const SignMatrix expected = SignMatrix::Identity(W.rows(), W.cols()) * (1 << k);
      c.expect(W == W.transpose(), "W^(" + std::to_string(k) + ") not symmetric");
      c.expect(product == expected, "W^(" + std::to_string(k) + ") squared is not 2^k E");
    }
    return c.done();
  });
}

CheckResult walsh_nd_orthogonality(int d, int max_k) {
  const std::string name = "walsh_nd_orthogonality";
  return guarded(name, [&] {
    Check c(name);
    for (int k = 0; k <= max_k; ++k) {
      const SignMatrix W = walsh_matrix_nd(k, d);
      // The Kronecker layout must agree entry by entry with the product definition.
      bool layout = true;
      for_each_cube(d, k, [&](const DyadicCube& n) {
        for_each_cube(d, k, [&](const DyadicCube& m) {
          if (layout && W(flat_index(n.index, k), flat_index(m.index, k)) != walsh_on_cube(WalshIndex(n.index), m))
            layout = false;
        });
      });
      c.expect(layout, "d-dim matrix entry differs from W_n(Delta_m) at k=" + std::to_string(k));
      const SignMatrix gram = W * W.transpose();
      const SignMatrix expected = SignMatrix::Identity(W.rows(), W.cols()) * (1 << (k * d));
      c.expect(gram == expected, "row orthogonality fails at k=" + std::to_string(k));
    }
    return c.done();
  });
}

CheckResult scaling_identity(const std::vector<int>& ranks, const std::vector<int>& dims) {
  const std::string name = "scaling_identity";
  return guarded(name, [&] {
    Check c(name);
    for (int d : dims)
      for (int m : ranks) {
        std::size_t bad = 0, seen = 0;
        const std::vector<BigInt> zero(d, 0), side(d, BigInt(1) << m);
        for_each_index(zero, side, [&](const WalshIndex& p) {
          std::vector<BigInt> scaled(p.n);
          for (auto& x : scaled) x <<= m;
          const WalshIndex big(scaled);
          for_each_index(zero, side, [&](const WalshIndex& a) {
            for_each_index(zero, side, [&](const WalshIndex& b) {
              std::vector<BigInt> idx(d);
              for (int j = 0; j < d; ++j) idx[j] = (a[j] << m) + b[j];
              ++seen;
              if (walsh_on_cube(big, DyadicCube(2 * m, idx)) != walsh_on_cube(p, DyadicCube(m, b.n))) ++bad;
            });
          });
        });
        c.expect(bad == 0, "d=" + std::to_string(d) + " m=" + std::to_string(m) + ": " + std::to_string(bad) +
                               " of " + std::to_string(seen) + " differ");
      }
    return c.done();
  });
}

CheckResult dirichlet_decomposition(int max_1d, int max_2d) {
  const std::string name = "dirichlet_decomposition";
  return guarded(name, [&] {
    Check c(name);
    const int k1 = ceil_log2(max_1d);
    std::size_t bad = 0;
    for (int N = 1; N <= max_1d; ++N)
      for_each_cube(1, k1, [&](const DyadicCube& cube) {
        if (dirichlet_1d(BigInt(N), cube) != dirichlet_1d_direct(BigInt(N), cube_digits(cube, 0))) ++bad;
      });
    c.expect(bad == 0, std::to_string(bad) + " one-dimensional mismatches");
    const int k2 = ceil_log2(max_2d);
    bad = 0;
    std::vector<DyadicCube> cubes;
    for_each_cube(2, k2, [&](const DyadicCube& cube) { cubes.push_back(cube); });
    for (int a = 1; a <= max_2d; ++a)
      for (int b = 1; b <= max_2d; ++b) {
        const WalshIndex N{a, b};
        for (const auto& cube : cubes)
          if (dirichlet_dd(N, cube) != dirichlet_dd_direct(N, cube)) ++bad;
      }
    c.expect(bad == 0, std::to_string(bad) + " two-dimensional mismatches");
    return c.done();
  });
}

CheckResult additivity(int d, int below_rank, std::uint64_t seed) {
  const std::string name = "quasimeasure_additivity";
  return guarded(name, [&] {
    Check c(name);
    std::mt19937_64 rng(seed);
    MSetConfig cfg(d, 2);
    MSetConfig permuted(d, 2);
    permuted.set_permutation(2, StagePermutation::random_product(d, permuted.m(2), rng));
    const Quasimeasure tau = mset_quasimeasure(cfg);

    std::vector<WalshIndex> base{WalshIndex(filled(d, 0))};
    std::vector<BigInt> b2(d);
    for (int j = 0; j < d; ++j) b2[j] = (j + 1) % 4;
    base.emplace_back(b2);
    const IndexSequence seq = symmetric_index_sequence(cfg, base);

    std::vector<std::pair<std::string, Quasimeasure>> family{
        {"haar", haar_measure(d)},
        {"point_mass", point_mass(DyadicPoint::random(d, below_rank, rng))},
        {"tau_F", tau},
        {"tau_F_permuted", mset_quasimeasure(permuted)},
        {"tau_F_restricted", restrict(tau, DyadicCube(1, filled(d, 0)))},
        {"symmetric", symmetric_quasimeasure(seq)},
        {"series", quasimeasure_from_series(mset_coefficients(cfg))},
    };
    for (const auto& [label_, q] : family) {
      const auto bad = find_additivity_violation(q, below_rank);
      c.expect(!bad, label_ + " fails additivity at " + (bad ? cube_label(*bad) : std::string()));
    }
    return c.done();
  });
}

CheckResult closed_form_coefficients(const MSetConfig& cfg, int s) {
  const std::string name = "closed_form_coefficients";
  return guarded(name, [&] {
    Check c(name);
    const int k = 2 * cfg.m(s) + 1;
    const Quasimeasure tau = mset_quasimeasure(cfg);
    std::size_t in_block = 0;
    for_each_index(filled(cfg.dimension, 0), filled(cfg.dimension, BigInt(1) << k), [&](const WalshIndex& n) {
      const DyadicRational brute = fourier_coefficient(tau, n, k);
      const DyadicRational closed = closed_form_coefficient(n, cfg);
      if (decompose_block_index(n)) ++in_block;
      c.expect(brute == closed, "n=" + label(n) + " closed " + closed.to_fraction_string() + " brute " +
                                    brute.to_fraction_string());
    });
    c.note(std::to_string(in_block) + " block indices");
    return c.done();
  });
}

CheckResult local_closed_form(const MSetConfig& cfg, int s) {
  const std::string name = "local_closed_form";
  return guarded(name, [&] {
    Check c(name);
    const int d = cfg.dimension;
    const Quasimeasure tau = mset_quasimeasure(cfg);
    for (int t = 1; t <= s; ++t) {
      const int m = cfg.m(t);
      const int k = 2 * m + 1;
      const BigInt lo = BigInt(1) << (2 * m);
      for_each_index(filled(d, lo), filled(d, lo << 1), [&](const WalshIndex& n) {
        DyadicRational total;
        for_each_cube(d, m, [&](const DyadicCube& cube) {
          const DyadicRational closed = closed_form_local_coefficient(n, cube, cfg);
          total += closed;
          c.expect(closed == local_coefficient(tau, n, cube, k), "n=" + label(n) + " cube " + cube_label(cube));
        });
        c.expect(total == closed_form_coefficient(n, cfg), "local sum differs from global at n=" + label(n));
      });
    }
    return c.done();
  });
}

CheckResult off_block_vanishing(const MSetConfig& cfg, int s) {
  const std::string name = "off_block_vanishing";
  return guarded(name, [&] {
    Check c(name);
    const int k = 2 * cfg.m(s) + 1;
    const Quasimeasure tau = mset_quasimeasure(cfg);
    for_each_index(filled(cfg.dimension, 0), filled(cfg.dimension, BigInt(1) << k), [&](const WalshIndex& n) {
      if (n.is_zero()) {
        c.expect(fourier_coefficient(tau, n, k) == DyadicRational(1), "tau^_0 != 1");
        return;
      }
      if (decompose_block_index(n)) return;
      c.expect(fourier_coefficient(tau, n, k).is_zero(), "off-block n=" + label(n) + " nonzero");
      c.expect(closed_form_coefficient(n, cfg).is_zero(), "closed form nonzero off-block at n=" + label(n));
    });
    return c.done();
  });
}

CheckResult local_vanishing_and_integral(const MSetConfig& cfg, int s) {
  const std::string name = "local_vanishing_and_integral";
  return guarded(name, [&] {
    Check c(name);
    const int d = cfg.dimension;
    const int m = cfg.m(s);
    const int k = 2 * m + 1;
    const Quasimeasure tau = mset_quasimeasure(cfg);
    std::vector<DyadicCube> cubes;
    for_each_cube(d, m, [&](const DyadicCube& cube) { cubes.push_back(cube); });
    const BigInt small = BigInt(1) << m;
    for_each_index(filled(d, 0), filled(d, BigInt(1) << k), [&](const WalshIndex& n) {
      bool below = true;
      for (const auto& x : n.n) below = below && x < small;
      const bool block = decompose_block_index(n) && decompose_block_index(n)->s == s;
      for (const auto& cube : cubes) {
        const DyadicRational local = local_coefficient(tau, n, cube, k);
        if (!block && !below) c.expect(local.is_zero(), "local coefficient nonzero at n=" + label(n) + " cube " + cube_label(cube));
        if (!cube_in_F_tilde(cube, s - 1, cfg)) continue;
        DyadicRational lhs;
        for_each_subcube(cube, k, [&](const DyadicCube& sub) {
          if (!cube_in_Fs(sub, s, cfg)) return;
          lhs += walsh_on_cube(n, sub) > 0 ? measure(sub) : -measure(sub);
        });
        c.expect(lhs == local.scaled(-s), "integral identity fails at n=" + label(n) + " cube " + cube_label(cube));
      }
    });
    return c.done();
  });
}

CheckResult stage_measures(const MSetConfig& cfg, int s_max) {
  const std::string name = "stage_measures";
  return guarded(name, [&] {
    Check c(name);
    for (int s = 1; s <= s_max; ++s) {
      const DyadicRational mu = mu_F_tilde(s, cfg);
      c.expect(mu == DyadicRational::pow2(-s), "mu F~_" + std::to_string(s) + " = " + mu.to_fraction_string());
    }
    return c.done();
  });
}

CheckResult halving_geometry(const MSetConfig& cfg, int s_max) {
  const std::string name = "halving_geometry";
  return guarded(name, [&] {
    Check c(name);
    const int expected = 1 << (cfg.dimension - 1);
    for (int s = 1; s <= s_max; ++s) {
      const int m = cfg.m(s);
      std::size_t bad = 0, parents = 0;
      for_each_cube(cfg.dimension, 2 * m, [&](const DyadicCube& cube) {
        if (s > 1 && !cube_in_F_tilde(cube, s - 1, cfg)) return;
        ++parents;
        int inside = 0;
        for (const auto& child : children(cube)) inside += cube_in_Fs(child, s, cfg) ? 1 : 0;
        if (inside != expected) ++bad;
      });
      c.expect(bad == 0 && parents > 0, "stage " + std::to_string(s) + ": " + std::to_string(bad) + " of " +
                                            std::to_string(parents) + " cubes do not halve");
    }
    return c.done();
  });
}

CheckResult zero_partial_sums(const MSetConfig& cfg, int points, int max_M, int depth, std::uint64_t seed) {
  const std::string name = "zero_partial_sums";
  return guarded(name, [&] {
    Check c(name);
    const int d = cfg.dimension;
    const int s_off = std::min(cfg.stages, 2);
    std::mt19937_64 rng(seed);
    const Quasimeasure tau = mset_quasimeasure(cfg);
    std::vector<WalshIndex> Ms;
    for_each_index(filled(d, 1), filled(d, max_M + 1), [&](const WalshIndex& M) { Ms.push_back(M); });
    const int extra = ceil_log2(max_M);
    const int scan = 2 * cfg.m(s_off) + 1;

    int found = 0;
    std::map<int, int> witness_histogram;
    for (int attempt = 0; found < points && attempt < 100 * points; ++attempt) {
      const DyadicPoint probe = DyadicPoint::random(d, std::max(depth, scan), rng);
      if (in_F_tilde(probe, s_off, cfg)) continue;
      const auto w = predicate_witness(probe, cfg);
      if (!w) continue;
      // Redraw at a depth that fits 2^w M, keeping the leading digits.
      DyadicPoint g = DyadicPoint::random(d, std::max({depth, scan, *w + extra}), rng);
      for (int j = 0; j < d; ++j)
        for (int t = 0; t < probe.depth(); ++t) g.set_bit(j, t, probe.bit(j, t));
      ++found;
      ++witness_histogram[*w];
      if (static_cast<long>(scan - *w) * d <= 16) {
        const auto brute_w = witness_rank(tau, g, scan);
        c.expect(brute_w && *brute_w == *w, "scan witness differs from predicate witness");
      }
      const ZeroSumReport report = zero_sum_check(tau, g, *w, Ms);
      c.expect(report.precondition && report.all_zero, "tau_F: " + report.message);
    }
    c.expect(found == points, "could not sample enough points off F~");

    // Restricted quasimeasures, g outside the window.
    int restricted = 0;
    for (int attempt = 0; restricted < points && attempt < 100 * points; ++attempt) {
      const DyadicCube window = cube_of(DyadicPoint::random(d, 2, rng), 2);
      if (tau(window).is_zero()) continue;
      const DyadicPoint g = DyadicPoint::random(d, std::max(depth, 2 + extra), rng);
      if (cube_contains_point(window, g)) continue;
      const Quasimeasure part = restrict(tau, window);
      const auto w = witness_rank(part, g, std::max(2, std::min(scan, 2 + 8 / d)));
      c.expect(w && *w <= 2, "restricted witness above window rank");
      if (!w) continue;
      ++restricted;
      const ZeroSumReport report = zero_sum_check(part, g, *w, Ms);
      c.expect(report.precondition && report.all_zero, "restricted: " + report.message);
    }
    std::string hist;
    for (const auto& [w, count] : witness_histogram) hist += (hist.empty() ? "" : " ") + std::to_string(w) + ":" + std::to_string(count);
    c.note("witness ranks " + hist);
    return c.done();
  });
}

CheckResult magnitude_rigidity(const MSetConfig& cfg, int s_max) {
  const std::string name = "magnitude_rigidity";
  return guarded(name, [&] {
    Check c(name);
    const int d = cfg.dimension;
    const Quasimeasure tau = mset_quasimeasure(cfg);
    for (int s = 1; s <= s_max; ++s) {
      const int m = cfg.m(s);
      const int k = 2 * m + 1;
      const BigInt lo = BigInt(1) << (2 * m);
      DyadicRational max;
      std::map<std::vector<BigInt>, DyadicRational> values;
      for_each_index(filled(d, lo), filled(d, lo << 1), [&](const WalshIndex& n) {
        const DyadicRational v = fourier_coefficient(tau, n, k).abs();
        max = std::max(max, v);
        values[n.n] = v;
      });
      c.expect(max == stage_scale(s, d), "stage " + std::to_string(s) + " max " + max.to_fraction_string());
      std::map<std::vector<BigInt>, std::uint64_t> attained;
      for (const auto& [n, v] : values)
        if (v == max) ++attained[decompose_block_index(WalshIndex(n))->p];
      const StagePermutation* pi = cfg.permutation(s);
      const std::uint64_t per_p = std::uint64_t{1} << (d * m);
      for_each_index(filled(d, 0), filled(d, BigInt(1) << m), [&](const WalshIndex& p) {
        const DyadicCube u(m, pi ? pi->apply_inverse(p.n) : p.n);
        const std::uint64_t want = cube_in_F_tilde(u, s - 1, cfg) ? per_p : 0;
        c.expect(attained[p.n] == want, "stage " + std::to_string(s) + " p=" + label(p) + " attains " +
                                            std::to_string(attained[p.n]));
      });
    }
    return c.done();
  });
}

CheckResult tail_bound_diagnostic(const MSetConfig& cfg, int points, std::uint64_t seed) {
  const std::string name = "tail_bound";
  return guarded(name, [&] {
    Check c(name);
    const int d = cfg.dimension;
    const int s = 2;
    const int m = cfg.m(s);
    const MSetConfig two = truncated(cfg, 2);
    const CoefficientOracle coeffs = mset_coefficients(two);
    const DyadicRational bound = tail_bound(s, d);
    std::mt19937_64 rng(seed);
    DyadicRational worst;
    int found = 0;
    for (int attempt = 0; found < points && attempt < 100 * points; ++attempt) {
      const DyadicPoint g = DyadicPoint::random(d, 2 * m + 2, rng);
      if (in_F_tilde(g, s, cfg)) continue;
      const auto w = predicate_witness(g, cfg);
      if (!w || *w > m) continue;
      ++found;
      const auto sums = naive_block_sums(coeffs, m, g);
      // Offsets 0 (N^j = 2^{2m}) through 2^{2m} - 1: the block itself.
      for (std::size_t flat = 0; flat < sums.size(); ++flat) {
        const WalshIndex N = block_grid_index(flat, d, m);
        bool in_block = true;
        for (const auto& x : N.n) in_block = in_block && x < (BigInt(1) << (2 * m + 1));
        if (!in_block) continue;
        worst = std::max(worst, sums[flat].abs());
        c.expect(sums[flat].abs() <= bound, "|S_N| = " + sums[flat].abs().to_fraction_string() + " at N=" + label(N));
      }
    }
    c.expect(found == points, "could not sample enough points with w(g) <= m_2");
    c.note("max |S_N| = " + worst.to_fraction_string() + ", bound " + bound.to_fraction_string());
    return c.done();
  });
}

CheckResult factorized_vs_naive(const MSetConfig& cfg, int s, int points, std::uint64_t seed) {
  const std::string name = "factorized_vs_naive";
  return guarded(name, [&] {
    Check c(name);
    const int d = cfg.dimension;
    const int m = cfg.m(s);
    const MSetConfig cut = truncated(cfg, s);
    const CoefficientOracle coeffs = mset_coefficients(cut);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < points; ++i) {
      const DyadicPoint g = DyadicPoint::random(d, 2 * m + 1, rng);
      const auto sums = naive_block_sums(coeffs, m, g);
      for (std::size_t flat = 0; flat < sums.size(); ++flat) {
        const WalshIndex N = block_grid_index(flat, d, m);
        c.expect(factorized_partial_sum(cut, N, g) == sums[flat], "N=" + label(N));
      }
      // Spot checks against direct enumeration of the partial sum.
      for (int r = 0; r < 8; ++r) {
        const WalshIndex N = block_grid_index(rng() % sums.size(), d, m);
        c.expect(factorized_partial_sum(cut, N, g) == block_partial_sum(coeffs, N, g), "direct N=" + label(N));
      }
      c.expect(factorized_block_sum(cut, WalshIndex(filled(d, BigInt(1) << (2 * m))), g).is_zero(),
               "block start contributes");
    }
    return c.done();
  });
}

CheckResult factorized_stage_three(int d, int points, double limit_seconds, std::uint64_t seed) {
  const std::string name = "factorized_stage_three";
  return guarded(name, [&] {
    Check c(name);
    const MSetConfig cfg(d, 3);
    const int m = cfg.m(3);
    const int k = 2 * m + 1;
    const Quasimeasure tau = mset_quasimeasure(cfg);
    std::mt19937_64 rng(seed);
    double slowest = 0;
    int inside = 0;
    for (int i = 0; i < points; ++i) {
      DyadicPoint g = DyadicPoint::random(d, k, rng);
      // Half the points from F~_3, where the sums are large.
      if (i % 2 == 0)
        for (int t = 0; t < 10000 && !in_F_tilde(g, 3, cfg); ++t) g = DyadicPoint::random(d, k, rng);
      inside += in_F_tilde(g, 3, cfg) ? 1 : 0;

      std::vector<BigInt> n(d);
      for (auto& x : n) x = (BigInt(1) << (2 * m)) + 1 + BigInt(rng() % (std::uint64_t{1} << (2 * m)));
      const auto start = Clock::now();
      const DyadicRational fast = factorized_partial_sum(cfg, WalshIndex(n), g);
      const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
      slowest = std::max(slowest, elapsed);
      c.expect(elapsed < limit_seconds, "stage-3 sum took " + std::to_string(elapsed) + " s");
      (void)fast;

      // N^j multiples of 2^{2m-3}: the kernel side touches only 2^{4d} cubes.
      for (auto& x : n) x = (BigInt(1) << (2 * m)) + (BigInt(1 + rng() % 8) << (2 * m - 3));
      const WalshIndex N(n);
      const DyadicRational via_tau = partial_sum(tau, N, g, k);
      c.expect(factorized_partial_sum(cfg, N, g) == via_tau, "stage-3 mismatch at N=" + label(N));
    }
    std::ostringstream os;
    os << "slowest " << slowest << " s, " << inside << " points in F~_3";
    c.note(os.str());
    return c.done();
  });
}

CheckResult iterated_vs_rectangular(const MSetConfig& cfg, int points, std::uint64_t seed) {
  const std::string name = "iterated_vs_rectangular";
  return guarded(name, [&] {
    Check c(name);
    const int d = cfg.dimension;
    const CoefficientOracle coeffs = mset_coefficients(cfg);
    const BigInt L = BigInt(1) << (2 * cfg.m(cfg.stages) + 1);
    std::mt19937_64 rng(seed);
    std::vector<int> order(d);
    for (int i = 0; i < points; ++i) {
      const DyadicPoint g = DyadicPoint::random(d, 2 * cfg.m(cfg.stages) + 1, rng);
      const DyadicRational rect = block_partial_sum(coeffs, WalshIndex(filled(d, L)), g);
      std::iota(order.begin(), order.end(), 1);
      do {
        c.expect(iterated_partial_sum(coeffs, order, L, g) == rect, "full truncation, order differs");
        const BigInt outer = 1 + BigInt(rng() % static_cast<std::uint64_t>(L));
        std::vector<BigInt> N = filled(d, L);
        N[order[0] - 1] = outer;
        c.expect(iterated_partial_sum(coeffs, order, outer, g) == block_partial_sum(coeffs, WalshIndex(N), g),
                 "outer truncation " + outer.str() + " differs");
      } while (std::next_permutation(order.begin(), order.end()));
    }
    return c.done();
  });
}

CheckResult uset_witness(const MSetConfig& cfg, int max_stage, std::uint64_t seed) {
  const std::string name = "uset_witness";
  return guarded(name, [&] {
    Check c(name);
    const int d = cfg.dimension;
    std::mt19937_64 rng(seed);
    std::vector<WalshIndex> base;
    for (int s = 1; s <= max_stage; ++s) {
      std::vector<BigInt> b(d);
      for (auto& x : b) x = BigInt(rng() % (std::uint64_t{1} << cfg.m(s)));
      base.emplace_back(b);
    }
    const IndexSequence seq = symmetric_index_sequence(cfg, base);
    for (int s = 1; s <= max_stage; ++s) {
      c.expect(seq.lowest_bits[s - 1] >= cfg.m(s), "property P fails at stage " + std::to_string(s));
      c.expect(lambda_admissible(seq.terms[s - 1], 2), "lambda ratio above 2 at stage " + std::to_string(s));
    }
    const Quasimeasure tau = symmetric_quasimeasure(seq);
    for (int r = 0; r <= 2; ++r)
      for_each_cube(d, r, [&](const DyadicCube& cube) {
        c.expect(tau(cube).is_zero() != cube_meets_symmetric_F(cube, seq), "tau support differs from F at " + cube_label(cube));
      });
    const UContradictionReport report = u2_contradiction_demo(cfg, seq, max_stage, 2);
    for (const auto& rec : report.records)
      c.expect(rec.ok, rec.construction + " stage " + std::to_string(rec.stage) + " cube " + cube_label(rec.cube));
    c.expect(report.ok, report.message);
    return c.done();
  });
}

CheckResult dirichlet_difference(int max_n) {
  const std::string name = "dirichlet_difference";
  return guarded(name, [&] {
    Check c(name);
    const int depth = ceil_log2(max_n) + 1;
    std::vector<std::pair<DyadicPoint, DyadicPoint>> samples;
    const DyadicPoint zero(1, depth);
    for_each_cube(1, depth, [&](const DyadicCube& cube) { samples.emplace_back(representative_point(cube, depth), zero); });
    std::mt19937_64 rng(max_n);
    for (int i = 0; i < 50; ++i) samples.emplace_back(DyadicPoint::random(1, depth, rng), DyadicPoint::random(1, depth, rng));
    std::size_t skipped = 0;
    for (int N = 1; N <= max_n; ++N)
      for (int q = 0; q <= depth; ++q) {
        const auto report = dirichlet_difference_check(BigInt(N), q, samples);
        if (report.skipped) {
          ++skipped;
          continue;
        }
        c.expect(report.failures == 0, "N=" + std::to_string(N) + " q=" + std::to_string(q));
      }
    c.note(std::to_string(skipped) + " (N, q) pairs outside the hypothesis skipped");
    return c.done();
  });
}

}  // namespace checks

std::vector<CheckResult> run_verify_suites(const MSetConfig& cfg, int K, std::uint64_t seed) {
  const int d = cfg.dimension;
  const int S = cfg.stages;
  std::vector<std::function<CheckResult()>> jobs;
  jobs.push_back([] { return checks::walsh_matrix_orthogonality(8); });
  jobs.push_back([d] { return checks::walsh_nd_orthogonality(std::max(d, 1), std::min(4, 12 / std::max(d, 1))); });
  jobs.push_back([] { return checks::scaling_identity({1, 2, 3}, {1, 2}); });
  jobs.push_back([] { return checks::dirichlet_decomposition(256, 16); });
  jobs.push_back([] { return checks::dirichlet_difference(64); });
  if (d >= 2) {
    // Brute-force stage cap: rank-(2 m_s + 1) enumeration over at most 2^10 cubes.
    int sb = 1;
    while (sb < S && d * (2 * cfg.m(sb + 1) + 1) <= 10) ++sb;
    int sm = 1;
    while (sm < S && d * (2 * cfg.m(sm + 1) + 1) <= 20) ++sm;
    const MSetConfig brute = [&] {
      MSetConfig c = cfg;
      c.stages = sb;
      return c;
    }();
    jobs.push_back([d, seed] { return checks::additivity(d, std::max(2, 12 / d), seed); });
    jobs.push_back([brute, sb] { return checks::closed_form_coefficients(brute, sb); });
    jobs.push_back([brute, sb] { return checks::local_closed_form(brute, sb); });
    jobs.push_back([brute, sb] { return checks::off_block_vanishing(brute, sb); });
    jobs.push_back([brute, sb] { return checks::local_vanishing_and_integral(brute, sb); });
    jobs.push_back([cfg, sm] { return checks::stage_measures(cfg, sm); });
    jobs.push_back([cfg, sm] { return checks::halving_geometry(cfg, sm); });
    jobs.push_back([brute, K, seed] { return checks::zero_partial_sums(brute, 20, 4, K, seed + 1); });
    jobs.push_back([brute, sb] { return checks::magnitude_rigidity(brute, sb); });
    const bool product = cfg.all_product_form();
    if (S >= 2 && d <= 3) jobs.push_back([cfg, seed] { return checks::tail_bound_diagnostic(cfg, 20, seed + 2); });
    if (product && d * 2 * cfg.m(std::min(S, 2)) <= 12)
      jobs.push_back([cfg, S, seed] { return checks::factorized_vs_naive(cfg, std::min(S, 2), 4, seed + 3); });
    if (product && S >= 3) jobs.push_back([d, seed] { return checks::factorized_stage_three(d, 4, 1.0, seed + 4); });
    jobs.push_back([brute, seed] { return checks::iterated_vs_rectangular(brute, 3, seed + 5); });
    jobs.push_back([brute, sb, seed] { return checks::uset_witness(brute, std::min(sb, 2), seed + 6); });
  }
  std::vector<std::future<CheckResult>> running;
  for (auto& job : jobs) running.push_back(std::async(std::launch::async, job));
  std::vector<CheckResult> results;
  for (auto& f : running) results.push_back(f.get());
  return results;
}

}  // namespace dyadic
