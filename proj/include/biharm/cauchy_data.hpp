#pragma once

#include <Eigen/Dense>

#include "biharm/core.hpp"

namespace biharm {

using NodeVector = Eigen::VectorXcd;

// Boundary traces v, ∂_n v, Pv = Δv and Qv = -∂_n Δv at the quadrature nodes.
struct CauchyData4 {
  NodeVector v;
  NodeVector dn_v;
  NodeVector Pv;
  NodeVector Qv;

  Eigen::Index size() const { return v.size(); }

  static CauchyData4 zeros(Eigen::Index count) {
    return {NodeVector::Zero(count), NodeVector::Zero(count), NodeVector::Zero(count),
            NodeVector::Zero(count)};
  }
};

}  // namespace biharm
