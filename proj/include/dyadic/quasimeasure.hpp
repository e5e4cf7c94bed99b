#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "dyadic/group.hpp"
#include "dyadic/walsh.hpp"

namespace dyadic {

/// Finitely additive set function on dyadic cubes, evaluated lazily.
///
/// Copies share one memo cache; evaluation is safe from several threads.
class Quasimeasure {
 public:
  using Eval = std::function<DyadicRational(const DyadicCube&)>;
  /// A rule may call `self` to evaluate other cubes through the cache.
  using Rule = std::function<DyadicRational(const DyadicCube& c, const Eval& self)>;

  Quasimeasure(int dimension, Rule rule, std::optional<int> max_rank = std::nullopt);

  DyadicRational operator()(const DyadicCube& c) const;
  DyadicRational value(const DyadicCube& c) const { return (*this)(c); }

  int dimension() const { return state_->dimension; }
  std::optional<int> max_rank() const { return state_->max_rank; }
  std::size_t cache_size() const;

 private:
  struct State {
    int dimension;
    Rule rule;
    std::optional<int> max_rank;
    mutable std::shared_mutex mutex;
    mutable std::map<DyadicCube, DyadicRational> cache;
  };
  std::shared_ptr<State> state_;
};

enum class SupportKind { Dense, Blocks };

/// Coefficients a_n of a Walsh series with a declared support.
///
/// Dense: every n < dense_bound * 1 may be nonzero. Blocks: only n = 0 and
/// the blocks B_k (2^k <= n^j < 2^{k+1} for all j) with k in block_exponents.
struct CoefficientOracle {
  int dimension = 0;
  std::function<DyadicRational(const WalshIndex&)> rule;
  SupportKind kind = SupportKind::Dense;
  BigInt dense_bound = 0;
  std::vector<int> block_exponents;
  std::string description;

  DyadicRational operator()(const WalshIndex& n) const { return rule(n); }
  /// Calls f on every declared-support index with n < bound (componentwise).
  /// Throws if more than `cap` indices would be visited.
  void for_each_support_index(const std::vector<BigInt>& bound, const std::function<void(const WalshIndex&)>& f,
                              std::uint64_t cap = std::uint64_t{1} << 24) const;
};

/// Construction tau_F from the predicate "cube meets F".
Quasimeasure tau_from_closed_set(std::function<bool(const DyadicCube&)> meets, int dimension);

Quasimeasure haar_measure(int dimension);
/// Unit mass at g (cubes of rank up to the depth of g).
Quasimeasure point_mass(const DyadicPoint& g);
/// tau restricted to a window: Delta -> tau(window ∩ Delta).
Quasimeasure restrict(const Quasimeasure& tau, const DyadicCube& window);
/// The quasimeasure generated by a series, cube by cube.
Quasimeasure quasimeasure_from_series(const CoefficientOracle& coeffs);

/// Values of tau on all rank-k cubes, lexicographic order.
std::vector<DyadicRational> cube_values(const Quasimeasure& tau, int k);

DyadicRational fourier_coefficient(const Quasimeasure& tau, const WalshIndex& n, int k);
/// Integral of W_n over c against tau, computed at rank k.
DyadicRational local_coefficient(const Quasimeasure& tau, const WalshIndex& n, const DyadicCube& c, int k);

/// S_N(g) from sum_m tau(g + Delta_m) D_N(Delta_m), visiting only cubes
/// where the kernel can be nonzero.
DyadicRational partial_sum(const Quasimeasure& tau, const WalshIndex& N, const DyadicPoint& g, int k);
/// S_N(g) from sum_m tau(Delta_m) D_N(g + Delta_m) over all rank-k cubes.
DyadicRational partial_sum_dense(const Quasimeasure& tau, const WalshIndex& N, const DyadicPoint& g, int k);
/// S_N(g) = sum_{n<N} a_n W_n(g) over the declared support.
DyadicRational partial_sum_from_coefficients(const CoefficientOracle& coeffs, const WalshIndex& N, const DyadicPoint& g);

/// Coefficients of tau, computed by brute force at rank k.
CoefficientOracle coefficients_of(const Quasimeasure& tau, int k);

/// 2^{-kd} sum_{n < 2^k 1} a_n W_n(c), k = rank(c).
DyadicRational series_value_on_cube(const CoefficientOracle& coeffs, const DyadicCube& c);

/// Rank-probe_rank cubes with a nonzero rank-scan_rank subcube.
std::vector<DyadicCube> support_cubes(const Quasimeasure& tau, int probe_rank, int scan_rank);

/// True iff tau vanishes on every rank-scan_rank subcube of c.
bool vanishes_below(const Quasimeasure& tau, const DyadicCube& c, int scan_rank);

/// First cube of rank < max_rank (exhaustive) where additivity fails.
std::optional<DyadicCube> find_additivity_violation(const Quasimeasure& tau, int max_rank);

}  // namespace dyadic
