#pragma once

// Eigen aliases and NumTraits for the library's exact scalar types. Include
// this instead of <Eigen/Dense> so that Boost.Multiprecision numbers and the
// polynomial/lattice types are usable as Eigen scalars.

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include "qes/exactnum/bivariate_poly.hpp"
#include "qes/exactnum/half_eisenstein.hpp"

namespace Eigen {

template <>
struct NumTraits<qes::BivariatePoly> : GenericNumTraits<qes::BivariatePoly> {
  using Real = qes::BivariatePoly;
  using NonInteger = qes::BivariatePoly;
  using Literal = qes::BivariatePoly;
  using Nested = qes::BivariatePoly;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 50,
    MulCost = 200
  };
};

template <>
struct NumTraits<qes::HalfEisenstein> : GenericNumTraits<qes::HalfEisenstein> {
  using Real = qes::HalfEisenstein;
  using NonInteger = qes::HalfEisenstein;
  using Literal = qes::HalfEisenstein;
  using Nested = qes::HalfEisenstein;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 4,
    MulCost = 10
  };
};

}  // namespace Eigen

namespace qes {

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace qes
