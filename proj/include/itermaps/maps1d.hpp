#pragma once

// Scalar iterative maps t(x) = x - f(x) / phi(x).
//
// The recursive families use Newton as starter: h_1 = -f/f', and for
// j = 1..k the order-j model phi_j is built with step h_j, giving
// t_j = x - f/phi_j and h_{j+1} = t_j - x. One t_k(x) evaluation walks that
// chain once at the same x.
//
// Everything is templated on the real type of the problem; double is the
// production instantiation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "itermaps/coefficients.hpp"
#include "itermaps/errors.hpp"
#include "itermaps/iterative_map.hpp"
#include "itermaps/scalar_problem.hpp"

namespace itermaps {

struct StepOptions {
  double denominator_floor = 1e-300;
};

namespace detail {

template <class Real>
bool finite(const Real& v) {
  using std::isfinite;
  return isfinite(v);
}

template <class Real>
Real checked(Real v, const char* what) {
  if (!finite(v)) throw StepError(StepErrorKind::NonFinite, std::string(what) + " is not finite");
  return v;
}

template <class Real>
Real checked_denominator(Real v, const char* what, const StepOptions& opt) {
  using std::abs;
  checked(v, what);
  if (abs(v) < Real(opt.denominator_floor))
    throw StepError(StepErrorKind::ModelSingular, std::string(what) + " below denominator floor");
  return v;
}

// sum_{i=0}^{k} d[i+1] h^i / (i+1)!  where d[i] = f^(i)(x)
template <class Real>
Real taylor_sum(std::span<const Real> d, int k, const Real& h) {
  Real sum = 0;
  Real hp = 1;
  Real fact = 1;
  for (int i = 0; i <= k; ++i) {
    fact *= i + 1;
    sum += d[static_cast<std::size_t>(i) + 1] * hp / fact;
    hp *= h;
  }
  return sum;
}

// a_0 f'(x) uses the caller's cached f'(x).
template <class Real>
Real barycentric_sum(const BasicScalarProblem<Real>& p, std::span<const Real> a, const Real& h, const Real& x,
                     const Real& d1) {
  Real sum = a[0] * d1;
  for (std::size_t i = 1; i < a.size(); ++i)
    sum += a[i] * checked<Real>(p.derivative(1, x + Real(static_cast<int>(i)) * h), "f'(x + i h)");
  return sum;
}

template <class Real>
std::vector<Real> weights(const IterativeMap& map, int j) {
  if constexpr (std::is_same_v<Real, double>) {
    const auto row = map.coefficients()[j];
    return {row.begin(), row.end()};
  } else {
    return map.coefficients().template row_as<Real>(j);
  }
}

}  // namespace detail

template <class Real>
Real newton_step(const BasicScalarProblem<Real>& p, const std::type_identity_t<Real>& x,
                 const StepOptions& opt = {}) {
  const Real fx = detail::checked<Real>(p.f(x), "f(x)");
  const Real d1 = detail::checked_denominator<Real>(p.derivative(1, x), "f'(x)", opt);
  return x - fx / d1;
}

/// phi_k(x) = sum_{i=0}^{k} f^(i+1)(x) h^i / (i+1)!
template <class Real>
Real taylor_model(const BasicScalarProblem<Real>& p, int k, const std::type_identity_t<Real>& h,
                  const std::type_identity_t<Real>& x) {
  if (k < 0) throw std::invalid_argument("taylor_model: k must be non-negative");
  if (p.max_derivative_order() < k + 1)
    throw StepError(StepErrorKind::InsufficientDerivatives,
                    p.name() + ": Taylor model of index " + std::to_string(k) + " needs f^(" +
                        std::to_string(k + 1) + ")");
  std::vector<Real> d(static_cast<std::size_t>(k) + 2);
  for (int i = 1; i <= k + 1; ++i) d[static_cast<std::size_t>(i)] = p.derivative(i, x);
  return detail::taylor_sum<Real>(d, k, h);
}

/// phi_k(x) = sum_i a_i f'(x + i h), weights already converted.
template <class Real>
Real barycentric_model(const BasicScalarProblem<Real>& p, std::span<const std::type_identity_t<Real>> a,
                       const std::type_identity_t<Real>& h, const std::type_identity_t<Real>& x) {
  if (a.empty()) throw std::invalid_argument("barycentric_model: empty coefficient vector");
  const Real d1 = detail::checked<Real>(p.derivative(1, x), "f'(x)");
  return detail::checked<Real>(detail::barycentric_sum<Real>(p, a, h, x, d1), "phi(x)");
}

template <class Real>
Real barycentric_model(const BasicScalarProblem<Real>& p, const BarycentricCoefficients& coeffs,
                       const std::type_identity_t<Real>& h, const std::type_identity_t<Real>& x) {
  std::vector<Real> a;
  for (const auto& ai : coeffs.a)
    a.push_back(rational_to<Real>(ai));
  return barycentric_model<Real>(p, std::span<const Real>(a), h, x);
}

/// t_k(x) for the Newton-Taylor or Newton-barycentric family of `map`.
template <class Real>
Real recursive_map_step(const BasicScalarProblem<Real>& p, const IterativeMap& map,
                        const std::type_identity_t<Real>& x, const StepOptions& opt = {}) {
  const Family fam = map.family();
  if (fam != Family::NewtonTaylor && fam != Family::NewtonBarycentric)
    throw std::invalid_argument("recursive_map_step: map is not a recursive family");
  const int k = map.k();
  if (fam == Family::NewtonTaylor && p.max_derivative_order() < k + 1)
    throw StepError(StepErrorKind::InsufficientDerivatives,
                    p.name() + ": Newton-Taylor t_" + std::to_string(k) + " needs f^(" +
                        std::to_string(k + 1) + ")");

  const Real fx = detail::checked<Real>(p.f(x), "f(x)");
  const Real d1 = detail::checked_denominator<Real>(p.derivative(1, x), "f'(x)", opt);

  // Taylor derivatives all live at x, so they are shared across the chain.
  std::vector<Real> d;
  if (fam == Family::NewtonTaylor) {
    d.resize(static_cast<std::size_t>(k) + 2);
    d[1] = d1;
    for (int i = 2; i <= k + 1; ++i)
      d[static_cast<std::size_t>(i)] = detail::checked<Real>(p.derivative(i, x), "f^(i)(x)");
  }

  // h_{j+1} = t_j - x = -f/phi_j, and t_j = x + h_{j+1} is bitwise x - f/phi_j.
  Real h = -fx / d1;
  for (int j = 1; j <= k; ++j) {
    Real phi;
    if (fam == Family::NewtonTaylor) {
      phi = detail::taylor_sum<Real>(d, j, h);
    } else {
      const auto a = detail::weights<Real>(map, j);
      phi = detail::barycentric_sum<Real>(p, a, h, x, d1);
    }
    detail::checked_denominator<Real>(phi, "phi_j(x)", opt);
    h = -fx / phi;
  }
  return x + h;
}

/// One application of any map; compositions apply inner first.
template <class Real>
Real map_step(const BasicScalarProblem<Real>& p, const IterativeMap& map, const std::type_identity_t<Real>& x,
              const StepOptions& opt = {}) {
  switch (map.family()) {
    case Family::Newton: return newton_step<Real>(p, x, opt);
    case Family::NewtonTaylor:
    case Family::NewtonBarycentric: return recursive_map_step<Real>(p, map, x, opt);
    case Family::Composition: return map_step<Real>(p, map.outer(), map_step<Real>(p, map.inner(), x, opt), opt);
  }
  throw std::logic_error("map_step: unknown family");
}

enum class IterationStatus { Converged, MaxIter, StepFailure, NonFinite };

inline const char* to_string(IterationStatus s) {
  switch (s) {
    case IterationStatus::Converged: return "Converged";
    case IterationStatus::MaxIter: return "MaxIter";
    case IterationStatus::StepFailure: return "StepFailure";
    case IterationStatus::NonFinite: return "NonFinite";
  }
  return "unknown";
}

template <class Real>
struct BasicTrajectory {
  std::vector<Real> points;  // x_0, x_1, ...
  IterationStatus status = IterationStatus::MaxIter;
  std::string message;       // failure detail, empty otherwise
};

using Trajectory = BasicTrajectory<double>;

/// Iterate until |f(x)| <= tol, a failure, or max_iter steps. Never throws on
/// numerical failure; the status says why it stopped.
template <class Real>
BasicTrajectory<Real> iterate(const BasicScalarProblem<Real>& p, const IterativeMap& map,
                              const std::type_identity_t<Real>& x0, int max_iter, double tol,
                              const StepOptions& opt = {}) {
  using std::abs;
  if (max_iter < 1) throw std::invalid_argument("iterate: max_iter must be >= 1");
  if (!(tol > 0)) throw std::invalid_argument("iterate: tol must be positive");

  BasicTrajectory<Real> out;
  out.points.push_back(x0);
  // true when iteration should stop at `at`
  auto done = [&](const Real& at) {
    const Real fx = p.f(at);
    if (!detail::finite(fx)) {
      out.status = IterationStatus::NonFinite;
      out.message = "f(x) is not finite";
      return true;
    }
    if (abs(fx) <= Real(tol)) {
      out.status = IterationStatus::Converged;
      return true;
    }
    return false;
  };
  if (!detail::finite(Real(x0))) {
    out.status = IterationStatus::NonFinite;
    out.message = "x0 is not finite";
    return out;
  }
  if (done(x0)) return out;

  Real x = x0;
  for (int it = 0; it < max_iter; ++it) {
    try {
      x = map_step<Real>(p, map, x, opt);
    } catch (const StepError& e) {
      out.status = e.kind() == StepErrorKind::NonFinite ? IterationStatus::NonFinite : IterationStatus::StepFailure;
      out.message = e.what();
      return out;
    }
    if (!detail::finite(x)) {
      out.status = IterationStatus::NonFinite;
      out.message = "iterate is not finite";
      return out;
    }
    out.points.push_back(x);
    if (done(x)) return out;
  }
  out.status = IterationStatus::MaxIter;
  return out;
}

struct OrderOptions {
  double error_floor = 1e-13;  // errors at or below this are round-off
  double start_below = 0.5;    // pre-asymptotic guard
};

/// Median of ln|e_{k+1}| / ln|e_k| over consecutive iterates whose errors lie
/// in (error_floor, start_below) and strictly decrease.
template <class Real>
double estimate_order(std::span<const std::type_identity_t<Real>> trajectory, const std::type_identity_t<Real>& root,
                      const OrderOptions& opt = {}) {
  using std::abs;
  using std::log;
  std::vector<double> ratios;
  for (std::size_t i = 0; i + 1 < trajectory.size(); ++i) {
    const Real e0 = abs(trajectory[i] - root);
    const Real e1 = abs(trajectory[i + 1] - root);
    const bool usable = e0 < Real(opt.start_below) && e1 > Real(opt.error_floor) && e1 < e0;
    if (usable) ratios.push_back(static_cast<double>(Real(log(e1) / log(e0))));
  }
  if (ratios.size() < 2)
    throw InsufficientDataError("estimate_order: need at least 2 usable error ratios, have " +
                                std::to_string(ratios.size()));
  std::sort(ratios.begin(), ratios.end());
  const std::size_t n = ratios.size();
  return n % 2 == 1 ? ratios[n / 2] : 0.5 * (ratios[n / 2 - 1] + ratios[n / 2]);
}

inline double estimate_order(std::span<const double> trajectory, double root, const OrderOptions& opt = {}) {
  return estimate_order<double>(trajectory, root, opt);
}

}  // namespace itermaps
