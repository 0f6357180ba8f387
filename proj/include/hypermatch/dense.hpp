#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include "hypermatch/rational.hpp"

namespace hypermatch {

using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;

/// Edge multiplicity vectors; 64-bit is ample once capacities are normalized.
using MultVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

inline RatVector to_rational(const MultVector& m) {
  RatVector r(m.size());
  for (Eigen::Index i = 0; i < m.size(); ++i) r(i) = Rational(m(i));
  return r;
}

}  // namespace hypermatch
