#pragma once

#include <Eigen/Core>

#include "dyadic/rational.hpp"

namespace Eigen {

// Exact scalar: Eigen only needs the ring operations for products and sums.
template <>
struct NumTraits<dyadic::DyadicRational> : GenericNumTraits<dyadic::DyadicRational> {
  using Real = dyadic::DyadicRational;
  using NonInteger = dyadic::DyadicRational;
  using Literal = dyadic::DyadicRational;
  using Nested = dyadic::DyadicRational;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 16
  };

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace dyadic {

using ExactMatrix = Eigen::Matrix<DyadicRational, Eigen::Dynamic, Eigen::Dynamic>;
using ExactVector = Eigen::Matrix<DyadicRational, Eigen::Dynamic, 1>;

}  // namespace dyadic
