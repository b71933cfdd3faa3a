#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "itermaps/errors.hpp"

namespace itermaps {

template <class Real>
struct BasicInterval {
  Real lo{};
  Real hi{};
  bool contains(const Real& x) const { return lo <= x && x <= hi; }
};

/// A real function with analytic derivatives f', f'', ..., f^(m). `Real` is
/// double in production; the order tests also instantiate a multiprecision type.
template <class Real>
class BasicScalarProblem {
 public:
  using Fn = std::function<Real(const Real&)>;
  using Interval = BasicInterval<Real>;

  BasicScalarProblem(std::string name, Fn f, std::vector<Fn> derivatives,
                     std::optional<Real> known_root = std::nullopt,
                     std::optional<Interval> domain = std::nullopt)
      : name_(std::move(name)),
        f_(std::move(f)),
        derivatives_(std::move(derivatives)),
        known_root_(std::move(known_root)),
        domain_(std::move(domain)) {}

  const std::string& name() const { return name_; }
  int max_derivative_order() const { return static_cast<int>(derivatives_.size()); }
  const std::optional<Real>& known_root() const { return known_root_; }
  const std::optional<Interval>& domain() const { return domain_; }

  Real f(const Real& x) const { return f_(x); }

  /// derivative(0, x) is f(x) itself.
  Real derivative(int order, const Real& x) const {
    if (order == 0) return f_(x);
    if (order < 0 || order > max_derivative_order())
      throw StepError(StepErrorKind::InsufficientDerivatives,
                      name_ + ": derivative of order " + std::to_string(order) + " not available");
    return derivatives_[static_cast<std::size_t>(order) - 1](x);
  }

 private:
  std::string name_;
  Fn f_;
  std::vector<Fn> derivatives_;
  std::optional<Real> known_root_;
  std::optional<Interval> domain_;
};

using ScalarProblem = BasicScalarProblem<double>;
using Interval = BasicInterval<double>;

}  // namespace itermaps
