#include "dyadic/quasimeasure.hpp"

#include <mutex>
#include <stdexcept>

namespace dyadic {

namespace mp = boost::multiprecision;

namespace {

void require_dimension(int a, int b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

void require_rank(const Quasimeasure& tau, int k) {
  if (k < 0) throw std::invalid_argument("rank must be nonnegative");
  if (tau.max_rank() && k > *tau.max_rank()) throw std::invalid_argument("rank exceeds the quasimeasure's max rank");
}

void require_below(const WalshIndex& n, int k) {
  const BigInt bound = BigInt(1) << k;
  for (const auto& c : n.n)
    if (c >= bound) throw std::invalid_argument("Walsh index not below 2^k at this rank");
}

// Cubes enumerated per brute-force pass.
constexpr int kMaxEnumerationBits = 24;

void require_enumerable(int bits) {
  if (bits > kMaxEnumerationBits) throw std::invalid_argument("enumeration of 2^" + std::to_string(bits) + " cubes refused");
}

}  // namespace

Quasimeasure::Quasimeasure(int dimension, Rule rule, std::optional<int> max_rank)
    : state_(std::make_shared<State>()) {
  if (dimension < 1) throw std::invalid_argument("quasimeasure dimension must be positive");
  state_->dimension = dimension;
  state_->rule = std::move(rule);
  state_->max_rank = max_rank;
}

DyadicRational Quasimeasure::operator()(const DyadicCube& c) const {
  require_dimension(c.dimension(), state_->dimension, "quasimeasure");
  require_rank(*this, c.rank);
  {
    std::shared_lock lock(state_->mutex);
    if (auto it = state_->cache.find(c); it != state_->cache.end()) return it->second;
  }
  // Evaluate unlocked: rules recurse into the cache.
  const Eval self = [this](const DyadicCube& other) { return (*this)(other); };
  DyadicRational v = state_->rule(c, self);
  std::unique_lock lock(state_->mutex);
  return state_->cache.emplace(c, std::move(v)).first->second;
}

std::size_t Quasimeasure::cache_size() const {
  std::shared_lock lock(state_->mutex);
  return state_->cache.size();
}

void CoefficientOracle::for_each_support_index(const std::vector<BigInt>& bound,
                                               const std::function<void(const WalshIndex&)>& f,
                                               std::uint64_t cap) const {
  if (static_cast<int>(bound.size()) != dimension) throw std::invalid_argument("support bound: dimension mismatch");
  for (const auto& b : bound)
    if (b.sign() <= 0) return;
  const std::vector<BigInt> zero(dimension, 0);
  BigInt visits = 0;
  auto budget = [&](const std::vector<BigInt>& lo, const std::vector<BigInt>& hi) {
    BigInt count = 1;
    for (int j = 0; j < dimension; ++j) count *= (hi[j] > lo[j] ? hi[j] - lo[j] : BigInt(0));
    visits += count;
    if (visits > cap) throw std::invalid_argument("coefficient support too large to enumerate below this bound");
  };
  if (kind == SupportKind::Dense) {
    std::vector<BigInt> hi(bound);
    for (auto& h : hi) {
      if (dense_bound.sign() <= 0) throw std::invalid_argument("dense coefficient support has no declared bound");
      h = mp::min(h, dense_bound);
    }
    budget(zero, hi);
    for_each_index(zero, hi, f);
    return;
  }
  f(WalshIndex(zero));
  for (int k : block_exponents) {
    std::vector<BigInt> lo(dimension, BigInt(1) << k), hi(dimension);
    bool empty = false;
    for (int j = 0; j < dimension; ++j) {
      hi[j] = mp::min(bound[j], BigInt(1) << (k + 1));
      if (hi[j] <= lo[j]) empty = true;
    }
    if (empty) continue;
    budget(lo, hi);
    for_each_index(lo, hi, f);
  }
}

Quasimeasure tau_from_closed_set(std::function<bool(const DyadicCube&)> meets, int dimension) {
  if (!meets(DyadicCube::whole(dimension))) throw std::invalid_argument("tau_F: the set must meet the whole group");
  auto rule = [meets = std::move(meets)](const DyadicCube& c, const Quasimeasure::Eval& self) -> DyadicRational {
    if (c.rank == 0) return DyadicRational(1);
    const DyadicCube parent = c.parent();
    const bool here = meets(c);
    const bool above = meets(parent);
    if (here && !above) throw std::logic_error("tau_F: predicate is not monotone (child meets F, parent does not)");
    if (!above) return DyadicRational(0);
    int count = 0;
    for (const auto& sibling : children(parent)) count += meets(sibling) ? 1 : 0;
    if (count == 0) throw std::logic_error("tau_F: predicate is inconsistent (parent meets F, no child does)");
    if (!here) return DyadicRational(0);
    if (count & (count - 1)) throw std::domain_error("tau_F: number of children meeting F is not a power of two");
    return self(parent).scaled(-static_cast<std::int64_t>(__builtin_ctz(static_cast<unsigned>(count))));
  };
  return Quasimeasure(dimension, std::move(rule));
}

Quasimeasure haar_measure(int dimension) {
  return Quasimeasure(dimension, [](const DyadicCube& c, const Quasimeasure::Eval&) { return measure(c); });
}

Quasimeasure point_mass(const DyadicPoint& g) {
  return Quasimeasure(
      g.dimension(),
      [g](const DyadicCube& c, const Quasimeasure::Eval&) { return DyadicRational(cube_contains_point(c, g) ? 1 : 0); },
      g.depth());
}

Quasimeasure restrict(const Quasimeasure& tau, const DyadicCube& window) {
  require_dimension(tau.dimension(), window.dimension(), "restrict");
  return Quasimeasure(
      tau.dimension(),
      [tau, window](const DyadicCube& c, const Quasimeasure::Eval&) {
        if (cube_contains_cube(window, c)) return tau(c);
        if (cube_contains_cube(c, window)) return tau(window);
        return DyadicRational(0);
      },
      tau.max_rank());
}

Quasimeasure quasimeasure_from_series(const CoefficientOracle& coeffs) {
  return Quasimeasure(coeffs.dimension, [coeffs](const DyadicCube& c, const Quasimeasure::Eval&) {
    return series_value_on_cube(coeffs, c);
  });
}

std::vector<DyadicRational> cube_values(const Quasimeasure& tau, int k) {
  require_rank(tau, k);
  require_enumerable(k * tau.dimension());
  std::vector<DyadicRational> out;
  out.reserve(std::size_t{1} << (k * tau.dimension()));
  for_each_cube(tau.dimension(), k, [&](const DyadicCube& c) { out.push_back(tau(c)); });
  return out;
}

DyadicRational local_coefficient(const Quasimeasure& tau, const WalshIndex& n, const DyadicCube& c, int k) {
  require_dimension(n.dimension(), tau.dimension(), "local_coefficient");
  require_dimension(c.dimension(), tau.dimension(), "local_coefficient");
  require_rank(tau, k);
  if (k < c.rank) throw std::invalid_argument("local_coefficient: rank below window rank");
  require_below(n, k);
  require_enumerable((k - c.rank) * tau.dimension());
  DyadicRational sum;
  for_each_subcube(c, k, [&](const DyadicCube& sub) {
    const DyadicRational v = tau(sub);
    if (v.is_zero()) return;
    if (walsh_on_cube(n, sub) > 0)
      sum += v;
    else
      sum -= v;
  });
  return sum;
}

DyadicRational fourier_coefficient(const Quasimeasure& tau, const WalshIndex& n, int k) {
  return local_coefficient(tau, n, DyadicCube::whole(tau.dimension()), k);
}

namespace {

void require_partial_sum_args(const Quasimeasure& tau, const WalshIndex& N, const DyadicPoint& g, int k) {
  require_dimension(N.dimension(), tau.dimension(), "partial_sum");
  require_dimension(g.dimension(), tau.dimension(), "partial_sum");
  require_rank(tau, k);
  if (k > g.depth()) throw std::invalid_argument("partial_sum: rank exceeds point depth");
  const BigInt bound = BigInt(1) << k;
  for (const auto& c : N.n)
    if (c.sign() <= 0 || c > bound) throw std::invalid_argument("partial_sum: need 0 < N <= 2^k 1");
}

}  // namespace

DyadicRational partial_sum(const Quasimeasure& tau, const WalshIndex& N, const DyadicPoint& g, int k) {
  require_partial_sum_args(tau, N, g, k);
  const int d = tau.dimension();
  // D_N vanishes off Delta^{(lsb N)}_0, so the cube index has k - lsb(N^j)
  // free low bits per coordinate.
  std::vector<BigInt> lo(d, 0), hi(d);
  int bits = 0;
  for (int j = 0; j < d; ++j) {
    const auto free_bits = static_cast<int>(k - lowest_set_bit(N[j]));
    bits += free_bits;
    hi[j] = BigInt(1) << free_bits;
  }
  require_enumerable(bits);
  DyadicRational sum;
  for_each_index(lo, hi, [&](const WalshIndex& m) {
    const DyadicCube c(k, m.n);
    const std::int64_t kernel = dirichlet_dd(N, c);
    if (kernel == 0) return;
    const DyadicRational v = tau(translate_cube(c, g));
    if (!v.is_zero()) sum += v * DyadicRational(kernel);
  });
  return sum;
}

DyadicRational partial_sum_dense(const Quasimeasure& tau, const WalshIndex& N, const DyadicPoint& g, int k) {
  require_partial_sum_args(tau, N, g, k);
  require_enumerable(k * tau.dimension());
  DyadicRational sum;
  for_each_cube(tau.dimension(), k, [&](const DyadicCube& c) {
    const DyadicRational v = tau(c);
    if (v.is_zero()) return;
    const std::int64_t kernel = dirichlet_dd(N, translate_cube(c, g));
    if (kernel != 0) sum += v * DyadicRational(kernel);
  });
  return sum;
}

DyadicRational partial_sum_from_coefficients(const CoefficientOracle& coeffs, const WalshIndex& N,
                                             const DyadicPoint& g) {
  require_dimension(coeffs.dimension, N.dimension(), "partial_sum_from_coefficients");
  require_dimension(coeffs.dimension, g.dimension(), "partial_sum_from_coefficients");
  DyadicRational sum;
  coeffs.for_each_support_index(N.n, [&](const WalshIndex& n) {
    const DyadicRational a = coeffs(n);
    if (a.is_zero()) return;
    if (walsh_at_point(n, g) > 0)
      sum += a;
    else
      sum -= a;
  });
  return sum;
}

CoefficientOracle coefficients_of(const Quasimeasure& tau, int k) {
  CoefficientOracle coeffs;
  coeffs.dimension = tau.dimension();
  coeffs.kind = SupportKind::Dense;
  coeffs.dense_bound = BigInt(1) << k;
  // Each coefficient costs a full rank-k sweep, so remember them.
  struct Memo {
    std::shared_mutex mutex;
    std::map<WalshIndex, DyadicRational> values;
  };
  auto memo = std::make_shared<Memo>();
  coeffs.rule = [tau, k, memo](const WalshIndex& n) {
    {
      std::shared_lock lock(memo->mutex);
      if (auto it = memo->values.find(n); it != memo->values.end()) return it->second;
    }
    const DyadicRational v = fourier_coefficient(tau, n, k);
    std::unique_lock lock(memo->mutex);
    return memo->values.emplace(n, v).first->second;
  };
  coeffs.description = "brute-force coefficients at rank " + std::to_string(k);
  return coeffs;
}

DyadicRational series_value_on_cube(const CoefficientOracle& coeffs, const DyadicCube& c) {
  require_dimension(coeffs.dimension, c.dimension(), "series_value_on_cube");
  DyadicRational sum;
  coeffs.for_each_support_index(std::vector<BigInt>(c.dimension(), BigInt(1) << c.rank), [&](const WalshIndex& n) {
    const DyadicRational a = coeffs(n);
    if (a.is_zero()) return;
    if (walsh_on_cube(n, c) > 0)
      sum += a;
    else
      sum -= a;
  });
  return sum * measure(c);
}

bool vanishes_below(const Quasimeasure& tau, const DyadicCube& c, int scan_rank) {
  require_rank(tau, scan_rank);
  require_enumerable((scan_rank - c.rank) * tau.dimension());
  bool zero = true;
  // A nonzero cube has a nonzero child by additivity, so scanning the
  // deepest rank alone is enough.
  for_each_subcube(c, scan_rank, [&](const DyadicCube& sub) {
    if (zero && !tau(sub).is_zero()) zero = false;
  });
  return zero;
}

std::vector<DyadicCube> support_cubes(const Quasimeasure& tau, int probe_rank, int scan_rank) {
  if (probe_rank < 0 || probe_rank > scan_rank) throw std::invalid_argument("support_cubes: need probe_rank <= scan_rank");
  require_rank(tau, scan_rank);
  require_enumerable(scan_rank * tau.dimension());
  std::vector<DyadicCube> out;
  for_each_cube(tau.dimension(), probe_rank, [&](const DyadicCube& c) {
    if (!vanishes_below(tau, c, scan_rank)) out.push_back(c);
  });
  return out;
}

std::optional<DyadicCube> find_additivity_violation(const Quasimeasure& tau, int max_rank) {
  require_rank(tau, max_rank);
  require_enumerable(max_rank * tau.dimension());
  std::optional<DyadicCube> bad;
  for (int k = 0; k < max_rank && !bad; ++k) {
    for_each_cube(tau.dimension(), k, [&](const DyadicCube& c) {
      if (bad) return;
      DyadicRational sum;
      for (const auto& child : children(c)) sum += tau(child);
      if (sum != tau(c)) bad = c;
    });
  }
  return bad;
}

}  // namespace dyadic
