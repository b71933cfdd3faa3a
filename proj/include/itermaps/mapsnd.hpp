#pragma once

// Newton-barycentric maps on R^n. f' becomes the Jacobian, so the model
// phi_k(x) = sum_i a_i J(x + i h_k(x)) is a matrix and each step solves
// phi_k(x) delta = -f(x). The step recursion is the vector analogue of the
// scalar one: h_1 = Newton delta, h_{j+1} = delta of the order-j map.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "itermaps/coefficients.hpp"
#include "itermaps/iterative_map.hpp"
#include "itermaps/linalg.hpp"
#include "itermaps/vector_problem.hpp"

namespace itermaps {

enum class VectorStepStatus { Ok, SingularModel, NonFinite };

inline const char* to_string(VectorStepStatus s) {
  switch (s) {
    case VectorStepStatus::Ok: return "Ok";
    case VectorStepStatus::SingularModel: return "SingularModel";
    case VectorStepStatus::NonFinite: return "NonFinite";
  }
  return "unknown";
}

/// next = x + delta when status is Ok. `model` is the phi_k matrix of the last
/// linear solve. Intermediate points are not checked against the domain.
struct VectorStepResult {
  Vector next;
  Vector delta;
  VectorStepStatus status = VectorStepStatus::Ok;
  Matrix model;

  bool ok() const { return status == VectorStepStatus::Ok; }
};

struct VectorStepOptions {
  double pivot_threshold = kDefaultPivotThreshold;
};

namespace detail {

inline VectorStepResult failed(const Vector& x, VectorStepStatus status) {
  return {x, Vector::Zero(x.size()), status, Matrix()};
}

// nullopt-or-nonfinite Jacobians collapse to a status.
inline std::optional<Matrix> jacobian_at(const VectorProblem& p, const Vector& x, VectorStepStatus& status) {
  auto j = p.jacobian(x);
  if (!j) {
    status = VectorStepStatus::SingularModel;
    return std::nullopt;
  }
  if (!all_finite(*j)) {
    status = VectorStepStatus::NonFinite;
    return std::nullopt;
  }
  return j;
}

// Shared driver for k = 0 (Newton) and k >= 1.
inline VectorStepResult barycentric_chain(const VectorProblem& p, const CoefficientTable* table, int k,
                                          const Vector& x, const VectorStepOptions& opt) {
  const Vector fx = p.f(x);
  if (!all_finite(fx)) return failed(x, VectorStepStatus::NonFinite);
  const Vector rhs = -fx;

  VectorStepStatus st = VectorStepStatus::Ok;
  auto j0 = jacobian_at(p, x, st);
  if (!j0) return failed(x, st);

  auto delta = lu_solve(*j0, rhs, opt.pivot_threshold);
  if (!delta) return failed(x, VectorStepStatus::SingularModel);
  Matrix model = *j0;

  for (int j = 1; j <= k; ++j) {
    const auto a = (*table)[j];
    const Vector h = *delta;
    Matrix phi = a[0] * *j0;
    for (std::size_t i = 1; i < a.size(); ++i) {
      auto ji = jacobian_at(p, x + static_cast<double>(i) * h, st);
      if (!ji) return failed(x, st);
      phi += a[i] * *ji;
    }
    if (!all_finite(phi)) return failed(x, VectorStepStatus::NonFinite);
    delta = lu_solve(phi, rhs, opt.pivot_threshold);
    if (!delta) return failed(x, VectorStepStatus::SingularModel);
    model = std::move(phi);
  }

  if (!all_finite(*delta)) return failed(x, VectorStepStatus::NonFinite);
  Vector next = x + *delta;
  return {std::move(next), std::move(*delta), VectorStepStatus::Ok, std::move(model)};
}

}  // namespace detail

inline VectorStepResult vector_newton_step(const VectorProblem& p, const Vector& x,
                                           const VectorStepOptions& opt = {}) {
  return detail::barycentric_chain(p, nullptr, 0, x, opt);
}

/// t_k on R^n, reading barycentric weights for orders 1..k from `table`.
inline VectorStepResult vector_barycentric_step(const VectorProblem& p, const CoefficientTable& table, int k,
                                                const Vector& x, const VectorStepOptions& opt = {}) {
  if (k < 0 || k > table.max_order())
    throw std::invalid_argument("vector_barycentric_step: order " + std::to_string(k) + " not in table");
  return detail::barycentric_chain(p, &table, k, x, opt);
}

inline VectorStepResult vector_barycentric_step(const VectorProblem& p, const BarycentricCoefficients& coeffs,
                                                const Vector& x, const VectorStepOptions& opt = {}) {
  const CoefficientTable table(coeffs.k);
  return vector_barycentric_step(p, table, coeffs.k, x, opt);
}

/// One application of `map`; compositions apply inner first. Taylor maps
/// would need derivative tensors and are rejected.
inline VectorStepResult vector_step(const VectorProblem& p, const IterativeMap& map, const Vector& x,
                                    const VectorStepOptions& opt = {}) {
  switch (map.family()) {
    case Family::Newton: return vector_newton_step(p, x, opt);
    case Family::NewtonBarycentric: return vector_barycentric_step(p, map.coefficients(), map.k(), x, opt);
    case Family::Composition: {
      auto first = vector_step(p, map.inner(), x, opt);
      if (!first.ok()) return first;
      auto second = vector_step(p, map.outer(), first.next, opt);
      if (!second.ok()) return detail::failed(x, second.status);
      second.delta = second.next - x;
      return second;
    }
    case Family::NewtonTaylor:
      throw std::invalid_argument("Newton-Taylor maps are not available on R^n");
  }
  throw std::logic_error("vector_step: unknown family");
}

struct VectorTrajectory {
  std::vector<Vector> points;  // x0 first
  VectorStepStatus status = VectorStepStatus::Ok;
};

/// Exactly num_iters steps unless a step fails first.
inline VectorTrajectory vector_iterate(const VectorProblem& p, const IterativeMap& map, const Vector& x0,
                                       int num_iters, const VectorStepOptions& opt = {}) {
  if (num_iters < 1) throw std::invalid_argument("vector_iterate: num_iters must be >= 1");
  VectorTrajectory out;
  out.points.reserve(static_cast<std::size_t>(num_iters) + 1);
  out.points.push_back(x0);
  for (int i = 0; i < num_iters; ++i) {
    auto step = vector_step(p, map, out.points.back(), opt);
    if (!step.ok()) {
      out.status = step.status;
      return out;
    }
    out.points.push_back(std::move(step.next));
  }
  return out;
}

}  // namespace itermaps
