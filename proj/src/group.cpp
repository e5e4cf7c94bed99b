#include "dyadic/group.hpp"

#include <stdexcept>
#include <string>

namespace dyadic {

namespace mp = boost::multiprecision;

DyadicPoint::DyadicPoint(int dimension, int depth) : depth_(depth) {
  if (dimension < 1) throw std::invalid_argument("point dimension must be positive");
  if (depth < 1) throw std::invalid_argument("point depth must be positive");
  bits_.assign(dimension, std::vector<std::uint8_t>(depth, 0));
}

DyadicPoint::DyadicPoint(std::vector<std::vector<std::uint8_t>> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw std::invalid_argument("point dimension must be positive");
  depth_ = static_cast<int>(bits_.front().size());
  if (depth_ < 1) throw std::invalid_argument("point depth must be positive");
  for (const auto& row : bits_) {
    if (static_cast<int>(row.size()) != depth_)
      throw std::invalid_argument("all coordinates must share one depth");
    for (auto b : row)
      if (b > 1) throw std::invalid_argument("point bits must be 0 or 1");
  }
}

DyadicPoint DyadicPoint::random(int dimension, int depth, std::mt19937_64& rng) {
  DyadicPoint g(dimension, depth);
  for (int j = 0; j < dimension; ++j) {
    std::uint64_t word = 0;
    for (int t = 0; t < depth; ++t) {
      if (t % 64 == 0) word = rng();
      g.bits_[j][t] = static_cast<std::uint8_t>(word & 1u);
      word >>= 1;
    }
  }
  return g;
}

void DyadicPoint::set_bit(int coordinate, int t, int value) {
  if (value != 0 && value != 1) throw std::invalid_argument("bit value must be 0 or 1");
  bits_.at(coordinate).at(t) = static_cast<std::uint8_t>(value);
}

DyadicCube::DyadicCube(int rank_, std::vector<BigInt> index_) : rank(rank_), index(std::move(index_)) {
  if (rank < 0) throw std::invalid_argument("cube rank must be nonnegative");
  if (index.empty()) throw std::invalid_argument("cube dimension must be positive");
  const BigInt bound = BigInt(1) << rank;
  for (const auto& m : index)
    if (m.sign() < 0 || m >= bound)
      throw std::invalid_argument("cube index out of range for rank " + std::to_string(rank));
}

int DyadicCube::digit(int j, int t) const {
  return mp::bit_test(index[j], static_cast<unsigned>(rank - 1 - t)) ? 1 : 0;
}

DyadicCube DyadicCube::parent() const {
  if (rank == 0) throw std::domain_error("the whole group has no parent cube");
  DyadicCube p = *this;
  p.rank -= 1;
  for (auto& m : p.index) m >>= 1;
  return p;
}

WalshIndex::WalshIndex(std::vector<BigInt> components) : n(std::move(components)) {
  if (n.empty()) throw std::invalid_argument("Walsh index dimension must be positive");
  for (const auto& c : n)
    if (c.sign() < 0) throw std::invalid_argument("Walsh index components must be nonnegative");
}

WalshIndex::WalshIndex(std::initializer_list<long long> components) {
  for (auto c : components) n.emplace_back(c);
  *this = WalshIndex(std::move(n));
}

bool WalshIndex::is_zero() const {
  for (const auto& c : n)
    if (!c.is_zero()) return false;
  return true;
}

DyadicPoint xor_add(const DyadicPoint& a, const DyadicPoint& b) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("xor_add: dimension mismatch");
  if (a.depth() != b.depth()) throw std::invalid_argument("xor_add: depth mismatch");
  DyadicPoint r(a.dimension(), a.depth());
  for (int j = 0; j < a.dimension(); ++j)
    for (int t = 0; t < a.depth(); ++t) r.set_bit(j, t, a.bit(j, t) ^ b.bit(j, t));
  return r;
}

BigInt prefix_index(const DyadicPoint& g, int j, int k) {
  if (k > g.depth()) throw std::invalid_argument("rank exceeds point depth");
  BigInt m = 0;
  for (int t = 0; t < k; ++t)
    if (g.bit(j, t)) mp::bit_set(m, static_cast<unsigned>(k - 1 - t));
  return m;
}

DyadicCube cube_of(const DyadicPoint& g, int k) {
  if (k < 0) throw std::invalid_argument("rank must be nonnegative");
  if (k > g.depth()) throw std::invalid_argument("cube_of: rank exceeds point depth");
  std::vector<BigInt> index;
  index.reserve(g.dimension());
  for (int j = 0; j < g.dimension(); ++j) index.push_back(prefix_index(g, j, k));
  return DyadicCube(k, std::move(index));
}

std::vector<DyadicCube> children(const DyadicCube& c) {
  const int d = c.dimension();
  std::vector<DyadicCube> out;
  out.reserve(std::size_t{1} << d);
  for (unsigned sigma = 0; sigma < (1u << d); ++sigma) {
    std::vector<BigInt> index(d);
    for (int j = 0; j < d; ++j) {
      index[j] = c.index[j] << 1;
      if ((sigma >> (d - 1 - j)) & 1u) index[j] += 1;
    }
    out.emplace_back(c.rank + 1, std::move(index));
  }
  return out;
}

bool cube_contains_point(const DyadicCube& c, const DyadicPoint& g) {
  if (c.dimension() != g.dimension()) throw std::invalid_argument("dimension mismatch");
  if (c.rank > g.depth()) throw std::invalid_argument("cube rank exceeds point depth");
  for (int j = 0; j < c.dimension(); ++j)
    for (int t = 0; t < c.rank; ++t)
      if (g.bit(j, t) != c.digit(j, t)) return false;
  return true;
}

bool cube_contains_cube(const DyadicCube& outer, const DyadicCube& inner) {
  if (outer.dimension() != inner.dimension()) throw std::invalid_argument("dimension mismatch");
  if (outer.rank > inner.rank) return false;
  const auto shift = static_cast<unsigned>(inner.rank - outer.rank);
  for (int j = 0; j < outer.dimension(); ++j)
    if ((inner.index[j] >> shift) != outer.index[j]) return false;
  return true;
}

bool cubes_disjoint(const DyadicCube& a, const DyadicCube& b) {
  return !cube_contains_cube(a, b) && !cube_contains_cube(b, a);
}

DyadicRational measure(const DyadicCube& c) {
  return DyadicRational::pow2(-static_cast<std::int64_t>(c.rank) * c.dimension());
}

DyadicCube translate_cube(const DyadicCube& c, const DyadicPoint& g) {
  if (c.dimension() != g.dimension()) throw std::invalid_argument("dimension mismatch");
  std::vector<BigInt> index(c.index);
  for (int j = 0; j < c.dimension(); ++j) index[j] ^= prefix_index(g, j, c.rank);
  return DyadicCube(c.rank, std::move(index));
}

DyadicPoint representative_point(const DyadicCube& c, int depth) {
  if (depth < c.rank) throw std::invalid_argument("depth below cube rank");
  DyadicPoint g(c.dimension(), depth);
  for (int j = 0; j < c.dimension(); ++j)
    for (int t = 0; t < c.rank; ++t) g.set_bit(j, t, c.digit(j, t));
  return g;
}

void for_each_index(const std::vector<BigInt>& lo, const std::vector<BigInt>& hi,
                    const std::function<void(const WalshIndex&)>& f) {
  const std::size_t d = lo.size();
  if (hi.size() != d || d == 0) throw std::invalid_argument("for_each_index: bad bounds");
  for (std::size_t j = 0; j < d; ++j)
    if (lo[j] >= hi[j]) return;
  WalshIndex n(lo);
  while (true) {
    f(n);
    std::size_t j = d;
    while (j > 0) {
      --j;
      n[j] += 1;
      if (n[j] < hi[j]) break;
      n[j] = lo[j];
      if (j == 0) return;
    }
  }
}

void for_each_subcube(const DyadicCube& c, int k, const std::function<void(const DyadicCube&)>& f) {
  if (k < c.rank) throw std::invalid_argument("subcube rank below cube rank");
  const int d = c.dimension();
  const auto shift = static_cast<unsigned>(k - c.rank);
  std::vector<BigInt> lo(d), hi(d);
  for (int j = 0; j < d; ++j) {
    lo[j] = c.index[j] << shift;
    hi[j] = (c.index[j] + 1) << shift;
  }
  for_each_index(lo, hi, [&](const WalshIndex& m) { f(DyadicCube(k, m.n)); });
}

void for_each_cube(int dimension, int k, const std::function<void(const DyadicCube&)>& f) {
  for_each_subcube(DyadicCube::whole(dimension), k, f);
}

}  // namespace dyadic
