#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "itermaps/linalg.hpp"

namespace itermaps {

/// Axis-aligned box [lower_0, upper_0] x ... x [lower_{n-1}, upper_{n-1}].
struct Box {
  Vector lower;
  Vector upper;

  Eigen::Index dim() const { return lower.size(); }

  bool contains(const Vector& p) const {
    if (p.size() != lower.size()) return false;
    for (Eigen::Index i = 0; i < p.size(); ++i)
      if (!(lower(i) <= p(i) && p(i) <= upper(i))) return false;
    return true;
  }
};

inline Box make_box(double x_min, double x_max, double y_min, double y_max) {
  Box b{Vector(2), Vector(2)};
  b.lower << x_min, y_min;
  b.upper << x_max, y_max;
  return b;
}

/// f : R^n -> R^n with its Jacobian. `jacobian` returns nullopt at declared
/// non-differentiable points.
struct VectorProblem {
  using Fn = std::function<Vector(const Vector&)>;
  using JacobianFn = std::function<std::optional<Matrix>(const Vector&)>;
  using ObjectiveFn = std::function<double(const Vector&)>;

  std::string name;
  int n = 0;
  Fn f;
  JacobianFn jacobian;
  std::optional<ObjectiveFn> objective;  // g with grad g = f, reporting only
  Box domain;
  std::string description;
};

}  // namespace itermaps
