#include "dyadic/mset.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace dyadic {

namespace mp = boost::multiprecision;

namespace {

// m_15 already exceeds 2^28; nothing here goes near that.
constexpr int kMaxStage = 14;

// Permutation arrays are materialized up to this many bits of domain.
constexpr int kMaxPermutationBits = 20;

std::vector<std::uint64_t> invert(const std::vector<std::uint64_t>& forward, std::uint64_t size) {
  if (forward.size() != size) throw std::invalid_argument("permutation has length " + std::to_string(forward.size()) +
                                                          ", expected " + std::to_string(size));
  std::vector<std::uint64_t> inverse(size, size);
  for (std::uint64_t x = 0; x < size; ++x) {
    const std::uint64_t y = forward[x];
    if (y >= size || inverse[y] != size) throw std::invalid_argument("permutation array is not a bijection");
    inverse[y] = x;
  }
  return inverse;
}

// Bits [from, from + len) of coordinate j of g, read most significant first.
std::uint64_t point_digits(const DyadicPoint& g, int j, int from, int len) {
  std::uint64_t v = 0;
  for (int t = from; t < from + len; ++t) v = (v << 1) | g.bit(j, t);
  return v;
}

int stage_sign(const std::vector<BigInt>& address, const std::vector<BigInt>& graph, int s, const MSetConfig& cfg) {
  const int m = cfg.m(s);
  const StagePermutation* pi = cfg.permutation(s);
  return walsh_entry_product(pi ? pi->apply(address) : address, graph, m);
}

void require_dimension(int a, int b) {
  if (a != b) throw std::invalid_argument("dimension does not match the configuration");
}

BlockDecomposition require_block(const WalshIndex& n, const MSetConfig& cfg) {
  auto block = decompose_block_index(n);
  if (!block) throw std::invalid_argument("index does not lie in a block B_{2 m_s}");
  if (block->s > cfg.stages) throw std::domain_error("block stage exceeds the configured stage count");
  return *block;
}

}  // namespace

StageSequence::StageSequence(int count) {
  if (count < 1) throw std::invalid_argument("stage count must be at least 1");
  if (count > kMaxStage) throw std::invalid_argument("stage count too large");
  m_.push_back(0);
  while (static_cast<int>(m_.size()) < count) m_.push_back(2 * (2 * m_.back() + 1));
}

int StageSequence::m(int s) const {
  if (s < 1 || s > kMaxStage) throw std::invalid_argument("stage out of range");
  if (s <= count()) return m_[s - 1];
  int v = m_.back();
  for (int t = count(); t < s; ++t) v = 2 * (2 * v + 1);
  return v;
}

StageSequence stage_sequence(int count) { return StageSequence(count); }

StagePermutation StagePermutation::identity(int dimension, int m) {
  StagePermutation p;
  p.kind_ = Kind::Identity;
  p.dimension_ = dimension;
  p.m_ = m;
  return p;
}

StagePermutation StagePermutation::product(int m, std::vector<std::vector<std::uint64_t>> per_coordinate) {
  if (per_coordinate.empty()) throw std::invalid_argument("product permutation needs at least one coordinate");
  if (m < 0 || m > kMaxPermutationBits) throw std::invalid_argument("permutation rank out of range");
  StagePermutation p;
  p.kind_ = Kind::Product;
  p.dimension_ = static_cast<int>(per_coordinate.size());
  p.m_ = m;
  for (auto& f : per_coordinate) p.inverse_.push_back(invert(f, std::uint64_t{1} << m));
  p.forward_ = std::move(per_coordinate);
  return p;
}

StagePermutation StagePermutation::general(int dimension, int m, std::vector<std::uint64_t> flat) {
  if (dimension < 1) throw std::invalid_argument("permutation dimension must be positive");
  if (m < 0 || m * dimension > kMaxPermutationBits) throw std::invalid_argument("permutation domain too large");
  StagePermutation p;
  p.kind_ = Kind::General;
  p.dimension_ = dimension;
  p.m_ = m;
  p.inverse_.push_back(invert(flat, std::uint64_t{1} << (m * dimension)));
  p.forward_.push_back(std::move(flat));
  return p;
}

StagePermutation StagePermutation::random_product(int dimension, int m, std::mt19937_64& rng) {
  if (m < 0 || m > kMaxPermutationBits) throw std::invalid_argument("permutation rank out of range");
  std::vector<std::vector<std::uint64_t>> arrays(dimension);
  for (auto& a : arrays) {
    a.resize(std::size_t{1} << m);
    std::iota(a.begin(), a.end(), std::uint64_t{0});
    for (std::size_t i = a.size(); i > 1; --i) std::swap(a[i - 1], a[rng() % i]);
  }
  return product(m, std::move(arrays));
}

std::vector<BigInt> StagePermutation::apply(const std::vector<BigInt>& index) const {
  if (static_cast<int>(index.size()) != dimension_) throw std::invalid_argument("permutation: dimension mismatch");
  if (kind_ == Kind::Identity) return index;
  std::vector<BigInt> out(index.size());
  if (kind_ == Kind::Product) {
    for (int j = 0; j < dimension_; ++j) out[j] = forward_[j].at(static_cast<std::uint64_t>(index[j]));
    return out;
  }
  std::uint64_t flat = 0;
  for (const auto& c : index) flat = (flat << m_) | static_cast<std::uint64_t>(c);
  std::uint64_t image = forward_[0].at(flat);
  const std::uint64_t mask = (std::uint64_t{1} << m_) - 1;
  for (int j = dimension_ - 1; j >= 0; --j, image >>= m_) out[j] = image & mask;
  return out;
}

std::vector<BigInt> StagePermutation::apply_inverse(const std::vector<BigInt>& index) const {
  if (static_cast<int>(index.size()) != dimension_) throw std::invalid_argument("permutation: dimension mismatch");
  if (kind_ == Kind::Identity) return index;
  std::vector<BigInt> out(index.size());
  if (kind_ == Kind::Product) {
    for (int j = 0; j < dimension_; ++j) out[j] = inverse_[j].at(static_cast<std::uint64_t>(index[j]));
    return out;
  }
  std::uint64_t flat = 0;
  for (const auto& c : index) flat = (flat << m_) | static_cast<std::uint64_t>(c);
  std::uint64_t image = inverse_[0].at(flat);
  const std::uint64_t mask = (std::uint64_t{1} << m_) - 1;
  for (int j = dimension_ - 1; j >= 0; --j, image >>= m_) out[j] = image & mask;
  return out;
}

std::uint64_t StagePermutation::coordinate(int j, std::uint64_t x) const {
  if (kind_ == Kind::General) throw std::logic_error("general permutation has no coordinate maps");
  return kind_ == Kind::Identity ? x : forward_[j].at(x);
}

std::uint64_t StagePermutation::coordinate_inverse(int j, std::uint64_t x) const {
  if (kind_ == Kind::General) throw std::logic_error("general permutation has no coordinate maps");
  return kind_ == Kind::Identity ? x : inverse_[j].at(x);
}

MSetConfig::MSetConfig(int dimension_, int stages_)
    : dimension(dimension_), stages(stages_), sequence(stages_), permutations_(stages_) {
  if (dimension < 1) throw std::invalid_argument("dimension must be positive");
}

const StagePermutation* MSetConfig::permutation(int s) const {
  if (s < 1 || s > static_cast<int>(permutations_.size()) || !permutations_[s - 1]) return nullptr;
  const auto& pi = *permutations_[s - 1];
  return pi.kind() == StagePermutation::Kind::Identity ? nullptr : &pi;
}

void MSetConfig::set_permutation(int s, StagePermutation pi) {
  if (s < 1 || s > stages) throw std::invalid_argument("permutation stage outside 1..S");
  if (pi.dimension() != dimension) throw std::invalid_argument("permutation dimension does not match d");
  if (pi.rank() != m(s)) throw std::invalid_argument("permutation at stage " + std::to_string(s) + " must act on 2^m_s values");
  if (pi.kind() == StagePermutation::Kind::General && !allow_general)
    throw std::invalid_argument("general (non-product) permutations need allow_general");
  if (static_cast<int>(permutations_.size()) < stages) permutations_.resize(stages);
  permutations_[s - 1] = std::move(pi);
}

bool MSetConfig::all_product_form() const {
  for (const auto& pi : permutations_)
    if (pi && pi->kind() == StagePermutation::Kind::General) return false;
  return true;
}

std::optional<BlockDecomposition> decompose_block_index(const WalshIndex& n) {
  if (n.is_zero()) return std::nullopt;
  std::int64_t k = -1;
  for (const auto& c : n.n) {
    if (c.is_zero()) return std::nullopt;
    const auto top = highest_set_bit(c);
    if (k >= 0 && top != k) return std::nullopt;
    k = top;
  }
  int s = 1;
  while (s < kMaxStage && 2 * StageSequence(1).m(s) < k) ++s;
  const int m = StageSequence(1).m(s);
  if (2 * m != k) return std::nullopt;
  BlockDecomposition b;
  b.s = s;
  const BigInt mask = (BigInt(1) << m) - 1;
  for (const auto& c : n.n) {
    const BigInt rest = c - (BigInt(1) << (2 * m));
    b.p.push_back(rest >> m);
    b.q.push_back(rest & mask);
  }
  return b;
}

WalshIndex block_index(int s, const std::vector<BigInt>& p, const std::vector<BigInt>& q) {
  if (p.size() != q.size() || p.empty()) throw std::invalid_argument("block_index: p and q must share a dimension");
  const int m = StageSequence(1).m(s);
  const BigInt bound = BigInt(1) << m;
  std::vector<BigInt> n(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j].sign() < 0 || p[j] >= bound || q[j].sign() < 0 || q[j] >= bound)
      throw std::invalid_argument("block_index: p, q must lie in [0, 2^m_s)");
    n[j] = (BigInt(1) << (2 * m)) + (p[j] << m) + q[j];
  }
  return WalshIndex(std::move(n));
}

int walsh_entry_product(const std::vector<BigInt>& a, const std::vector<BigInt>& b, int k) {
  if (a.size() != b.size()) throw std::invalid_argument("walsh_entry_product: dimension mismatch");
  int sign = 1;
  for (std::size_t j = 0; j < a.size(); ++j) sign *= walsh_entry(a[j], b[j], k);
  return sign;
}

bool in_Fs(const DyadicPoint& g, int s, const MSetConfig& cfg) {
  require_dimension(g.dimension(), cfg.dimension);
  const int m = cfg.m(s);
  if (g.depth() < 2 * m + 1) throw std::invalid_argument("in_Fs: point depth below 2 m_s + 1");
  const int d = g.dimension();
  std::vector<BigInt> address(d), graph(d);
  int rad = 1;
  for (int j = 0; j < d; ++j) {
    address[j] = point_digits(g, j, 0, m);
    graph[j] = point_digits(g, j, m, m);
    if (g.bit(j, 2 * m)) rad = -rad;
  }
  return rad == stage_sign(address, graph, s, cfg);
}

bool in_F_tilde(const DyadicPoint& g, int s, const MSetConfig& cfg) {
  for (int t = 1; t <= s; ++t)
    if (!in_Fs(g, t, cfg)) return false;
  return true;
}

bool cube_in_Fs(const DyadicCube& c, int s, const MSetConfig& cfg) {
  require_dimension(c.dimension(), cfg.dimension);
  const int m = cfg.m(s);
  if (c.rank < 2 * m + 1) throw std::invalid_argument("cube rank below 2 m_s + 1: F_s membership is not constant on it");
  const int d = c.dimension();
  const BigInt mask = (BigInt(1) << m) - 1;
  std::vector<BigInt> address(d), graph(d);
  int rad = 1;
  for (int j = 0; j < d; ++j) {
    address[j] = c.index[j] >> (c.rank - m);
    graph[j] = (c.index[j] >> (c.rank - 2 * m)) & mask;
    if (c.digit(j, 2 * m)) rad = -rad;
  }
  return rad == stage_sign(address, graph, s, cfg);
}

bool cube_in_F_tilde(const DyadicCube& c, int s, const MSetConfig& cfg) {
  for (int t = 1; t <= s; ++t)
    if (!cube_in_Fs(c, t, cfg)) return false;
  return true;
}

int decided_stage(int rank) {
  const StageSequence seq(1);
  int s = 0;
  while (s < kMaxStage && 2 * seq.m(s + 1) + 1 <= rank) ++s;
  return s;
}

bool cube_meets_F(const DyadicCube& c, const MSetConfig& cfg) {
  // Each later stage s only fixes digit 2 m_s, which the cube leaves free,
  // so once the decided stages hold the cube meets F.
  return cube_in_F_tilde(c, decided_stage(c.rank), cfg);
}

Quasimeasure mset_quasimeasure(const MSetConfig& cfg) {
  return tau_from_closed_set([cfg](const DyadicCube& c) { return cube_meets_F(c, cfg); }, cfg.dimension);
}

DyadicRational mu_F_tilde(int s, const MSetConfig& cfg) {
  const int rank = 2 * cfg.m(s) + 1;
  if (static_cast<long>(rank) * cfg.dimension > 24)
    throw std::invalid_argument("mu_F_tilde: enumeration of rank-(2 m_s + 1) cubes infeasible");
  std::uint64_t inside = 0;
  for_each_cube(cfg.dimension, rank, [&](const DyadicCube& c) { inside += cube_in_F_tilde(c, s, cfg) ? 1 : 0; });
  return DyadicRational(BigInt(inside), -static_cast<std::int64_t>(rank) * cfg.dimension);
}

DyadicRational stage_scale(int s, int dimension) {
  return DyadicRational::pow2(s - 1 - static_cast<std::int64_t>(dimension) * StageSequence(1).m(s));
}

DyadicRational closed_form_coefficient(const WalshIndex& n, const MSetConfig& cfg) {
  require_dimension(n.dimension(), cfg.dimension);
  if (n.is_zero()) return DyadicRational(1);
  const auto block = decompose_block_index(n);
  if (!block) return DyadicRational(0);
  if (block->s > cfg.stages) throw std::domain_error("block stage exceeds the configured stage count");
  const int s = block->s;
  const int m = cfg.m(s);
  const StagePermutation* pi = cfg.permutation(s);
  const std::vector<BigInt> u = pi ? pi->apply_inverse(block->p) : block->p;
  if (!cube_in_F_tilde(DyadicCube(m, u), s - 1, cfg)) return DyadicRational(0);
  const DyadicRational scale = stage_scale(s, cfg.dimension);
  return walsh_entry_product(block->q, u, m) > 0 ? scale : -scale;
}

DyadicRational closed_form_local_coefficient(const WalshIndex& n, const DyadicCube& c, const MSetConfig& cfg) {
  require_dimension(n.dimension(), cfg.dimension);
  require_dimension(c.dimension(), cfg.dimension);
  const BlockDecomposition block = require_block(n, cfg);
  const int s = block.s;
  const int m = cfg.m(s);
  if (c.rank != m) throw std::invalid_argument("local closed form needs a cube of rank m_s for the block's stage");
  const StagePermutation* pi = cfg.permutation(s);
  if ((pi ? pi->apply(c.index) : c.index) != block.p) return DyadicRational(0);
  if (!cube_in_F_tilde(c, s - 1, cfg)) return DyadicRational(0);
  const DyadicRational scale = stage_scale(s, cfg.dimension);
  return walsh_entry_product(block.q, c.index, m) > 0 ? scale : -scale;
}

DyadicRational closed_form_restricted_coefficient(const WalshIndex& n, const DyadicCube& window,
                                                  const MSetConfig& cfg) {
  require_dimension(n.dimension(), cfg.dimension);
  require_dimension(window.dimension(), cfg.dimension);
  const BlockDecomposition block = require_block(n, cfg);
  const int m = cfg.m(block.s);
  if (window.rank > m) throw std::invalid_argument("restricted closed form needs window rank <= m_s");
  const StagePermutation* pi = cfg.permutation(block.s);
  const DyadicCube u(m, pi ? pi->apply_inverse(block.p) : block.p);
  if (!cube_contains_cube(window, u)) return DyadicRational(0);
  return closed_form_coefficient(n, cfg);
}

DyadicRational stage_cube_values(const DyadicCube& c, const MSetConfig& cfg) {
  require_dimension(c.dimension(), cfg.dimension);
  const std::int64_t d = cfg.dimension;
  for (int s = 1; s <= cfg.stages; ++s) {
    const int m = cfg.m(s);
    if (c.rank == m)
      return cube_in_F_tilde(c, s - 1, cfg) ? DyadicRational::pow2(s - 1 - d * m) : DyadicRational(0);
    if (c.rank == 2 * m + 1)
      return cube_in_F_tilde(c, s, cfg) ? DyadicRational::pow2(s - d * (2 * m + 1)) : DyadicRational(0);
  }
  throw std::invalid_argument("cube rank is not m_s or 2 m_s + 1 for a configured stage");
}

CoefficientOracle mset_coefficients(const MSetConfig& cfg) {
  CoefficientOracle coeffs;
  coeffs.dimension = cfg.dimension;
  coeffs.kind = SupportKind::Blocks;
  for (int s = 1; s <= cfg.stages; ++s) coeffs.block_exponents.push_back(2 * cfg.m(s));
  coeffs.rule = [cfg](const WalshIndex& n) { return closed_form_coefficient(n, cfg); };
  coeffs.description = "closed-form M-set coefficients, blocks B_{2 m_s} for s <= " + std::to_string(cfg.stages);
  return coeffs;
}

}  // namespace dyadic
