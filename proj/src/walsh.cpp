#include "dyadic/walsh.hpp"

#include <stdexcept>

namespace dyadic {

namespace mp = boost::multiprecision;

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Dirichlet kernel value overflows int64");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Dirichlet kernel value overflows int64");
  return r;
}

void require_fits(const BigInt& N, std::size_t length) {
  if (N.sign() <= 0) throw std::invalid_argument("Dirichlet kernel index must be positive");
  if (N > (BigInt(1) << length)) throw std::invalid_argument("Dirichlet kernel index exceeds 2^rank");
}

int walsh_1d_digits(const BigInt& n, std::span<const std::uint8_t> g) {
  if (n.is_zero()) return 1;
  if (static_cast<std::size_t>(mp::msb(n)) >= g.size())
    throw std::invalid_argument("Walsh index needs more digits than available");
  int parity = 0;
  for (std::size_t t = 0; t < g.size(); ++t)
    if (g[t] && mp::bit_test(n, static_cast<unsigned>(t))) parity ^= 1;
  return parity ? -1 : 1;
}

}  // namespace

int walsh_entry(const BigInt& n, const BigInt& m, int k) {
  if (n.sign() < 0 || m.sign() < 0) throw std::invalid_argument("negative Walsh entry index");
  const BigInt bound = BigInt(1) << k;
  if (n >= bound) throw std::invalid_argument("Walsh function is not constant on cubes of this rank");
  if (m >= bound) throw std::invalid_argument("cube index out of range");
  if (k <= 63) {
    const auto nn = static_cast<std::uint64_t>(n);
    const auto mm = static_cast<std::uint64_t>(m);
    // Digit t of the cube is bit k-1-t of m: reverse m's k bits.
    std::uint64_t rev = 0;
    for (int t = 0; t < k; ++t)
      if ((mm >> (k - 1 - t)) & 1u) rev |= std::uint64_t{1} << t;
    return (__builtin_popcountll(nn & rev) & 1) ? -1 : 1;
  }
  int parity = 0;
  for (int t = 0; t < k; ++t)
    if (mp::bit_test(n, t) && mp::bit_test(m, static_cast<unsigned>(k - 1 - t))) parity ^= 1;
  return parity ? -1 : 1;
}

int walsh_on_cube(const WalshIndex& n, const DyadicCube& c) {
  if (n.dimension() != c.dimension()) throw std::invalid_argument("walsh_on_cube: dimension mismatch");
  int sign = 1;
  for (int j = 0; j < c.dimension(); ++j) sign *= walsh_entry(n[j], c.index[j], c.rank);
  return sign;
}

int walsh_at_point(const WalshIndex& n, const DyadicPoint& g) {
  if (n.dimension() != g.dimension()) throw std::invalid_argument("walsh_at_point: dimension mismatch");
  int sign = 1;
  for (int j = 0; j < g.dimension(); ++j) sign *= walsh_1d_digits(n[j], g.coordinate(j));
  return sign;
}

int rademacher(const std::vector<int>& k, const DyadicPoint& g) {
  if (static_cast<int>(k.size()) != g.dimension()) throw std::invalid_argument("rademacher: dimension mismatch");
  int sign = 1;
  for (int j = 0; j < g.dimension(); ++j) {
    if (k[j] < 0) throw std::invalid_argument("rademacher: negative index");
    if (k[j] >= g.depth()) throw std::invalid_argument("rademacher: insufficient depth");
    if (g.bit(j, k[j])) sign = -sign;
  }
  return sign;
}

SignMatrix walsh_matrix(int k) {
  if (k < 0 || k > kMaxMaterializedRank) throw std::invalid_argument("walsh_matrix: rank outside [0, 12]");
  const Eigen::Index order = Eigen::Index{1} << k;
  SignMatrix W(order, order);
  for (Eigen::Index n = 0; n < order; ++n)
    for (Eigen::Index m = 0; m < order; ++m) W(n, m) = walsh_entry(BigInt(n), BigInt(m), k);
  return W;
}

SignMatrix walsh_matrix_nd(int k, int d) {
  if (d < 1) throw std::invalid_argument("walsh_matrix_nd: dimension must be positive");
  if (static_cast<long>(k) * d > kMaxMaterializedRank) throw std::invalid_argument("walsh_matrix_nd: too large");
  const SignMatrix W = walsh_matrix(k);
  SignMatrix out = SignMatrix::Ones(1, 1);
  for (int j = 0; j < d; ++j) {
    SignMatrix next(out.rows() * W.rows(), out.cols() * W.cols());
    for (Eigen::Index a = 0; a < out.rows(); ++a)
      for (Eigen::Index b = 0; b < out.cols(); ++b)
        next.block(a * W.rows(), b * W.cols(), W.rows(), W.cols()) = out(a, b) * W;
    out = std::move(next);
  }
  return out;
}

Eigen::Index flat_index(const std::vector<BigInt>& m, int k) {
  Eigen::Index flat = 0;
  for (const auto& c : m) flat = (flat << k) + static_cast<Eigen::Index>(c);
  return flat;
}

std::int64_t dirichlet_1d(const BigInt& N, std::span<const std::uint8_t> digits) {
  require_fits(N, digits.size());
  if (mp::msb(N) >= 62) throw std::overflow_error("Dirichlet kernel index too large for int64 values");
  // First nonzero digit: D_{2^k} is nonzero iff digits 0..k-1 vanish.
  std::size_t zeros = 0;
  while (zeros < digits.size() && digits[zeros] == 0) ++zeros;
  const auto n = static_cast<std::uint64_t>(N);
  std::int64_t value = 0;
  int sign = 1;
  for (int k = 63; k >= 0; --k) {
    if (!((n >> k) & 1u)) continue;
    if (static_cast<std::size_t>(k) <= zeros) value += sign * (std::int64_t{1} << k);
    // R_k only matters for later (smaller) terms, which exist only if k < length.
    if (static_cast<std::size_t>(k) < digits.size() && digits[k]) sign = -sign;
  }
  return value;
}

std::int64_t dirichlet_1d_direct(const BigInt& N, std::span<const std::uint8_t> digits) {
  require_fits(N, digits.size());
  if (N > (BigInt(1) << 24)) throw std::invalid_argument("direct Dirichlet summation capped at N <= 2^24");
  const auto bound = static_cast<std::uint64_t>(N);
  std::uint64_t mask = 0;
  for (std::size_t t = 0; t < digits.size() && t < 64; ++t)
    if (digits[t]) mask |= std::uint64_t{1} << t;
  std::int64_t value = 0;
  for (std::uint64_t n = 0; n < bound; ++n) value += (__builtin_popcountll(n & mask) & 1) ? -1 : 1;
  return value;
}

std::vector<std::uint8_t> cube_digits(const DyadicCube& c, int j) {
  std::vector<std::uint8_t> digits(c.rank);
  for (int t = 0; t < c.rank; ++t) digits[t] = static_cast<std::uint8_t>(c.digit(j, t));
  return digits;
}

std::int64_t dirichlet_1d(const BigInt& N, const DyadicCube& c) {
  if (c.dimension() != 1) throw std::invalid_argument("dirichlet_1d: cube must be one-dimensional");
  return dirichlet_1d(N, cube_digits(c, 0));
}

std::int64_t dirichlet_1d(const BigInt& N, const DyadicPoint& g) {
  if (g.dimension() != 1) throw std::invalid_argument("dirichlet_1d: point must be one-dimensional");
  return dirichlet_1d(N, g.coordinate(0));
}

std::int64_t dirichlet_dd(const WalshIndex& N, const DyadicCube& c) {
  if (N.dimension() != c.dimension()) throw std::invalid_argument("dirichlet_dd: dimension mismatch");
  std::int64_t value = 1;
  for (int j = 0; j < c.dimension() && value != 0; ++j) value = checked_mul(value, dirichlet_1d(N[j], cube_digits(c, j)));
  return value;
}

std::int64_t dirichlet_dd(const WalshIndex& N, const DyadicPoint& g) {
  if (N.dimension() != g.dimension()) throw std::invalid_argument("dirichlet_dd: dimension mismatch");
  std::int64_t value = 1;
  for (int j = 0; j < g.dimension() && value != 0; ++j) value = checked_mul(value, dirichlet_1d(N[j], g.coordinate(j)));
  return value;
}

namespace {

template <typename Arg, typename Walsh>
std::int64_t dd_direct(const WalshIndex& N, const Arg& arg, Walsh walsh) {
  BigInt terms = 1;
  for (const auto& c : N.n) {
    if (c.sign() <= 0) throw std::invalid_argument("Dirichlet kernel index must be positive");
    terms *= c;
  }
  if (terms > (BigInt(1) << 20)) throw std::invalid_argument("direct Dirichlet summation capped at 2^20 terms");
  std::int64_t value = 0;
  for_each_index(std::vector<BigInt>(N.dimension(), 0), N.n,
                 [&](const WalshIndex& n) { value = checked_add(value, walsh(n, arg)); });
  return value;
}

}  // namespace

std::int64_t dirichlet_dd_direct(const WalshIndex& N, const DyadicCube& c) {
  if (N.dimension() != c.dimension()) throw std::invalid_argument("dirichlet_dd_direct: dimension mismatch");
  for (const auto& x : N.n) require_fits(x, c.rank);
  return dd_direct(N, c, [](const WalshIndex& n, const DyadicCube& cube) { return walsh_on_cube(n, cube); });
}

std::int64_t dirichlet_dd_direct(const WalshIndex& N, const DyadicPoint& g) {
  if (N.dimension() != g.dimension()) throw std::invalid_argument("dirichlet_dd_direct: dimension mismatch");
  for (const auto& x : N.n) require_fits(x, g.depth());
  return dd_direct(N, g, [](const WalshIndex& n, const DyadicPoint& p) { return walsh_at_point(n, p); });
}

}  // namespace dyadic
