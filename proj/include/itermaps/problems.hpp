#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "itermaps/errors.hpp"
#include "itermaps/scalar_problem.hpp"
#include "itermaps/vector_problem.hpp"

namespace itermaps::problems {

// Rutishauser least-squares system: residuals
//   s1 = x + y - 1, s2 = x^2 + y^2 - 0.8, s3 = x^3 + y^3 - 0.68, s4 = x^4 + y^4 - 0.01
// with objective g = s1^2 + s2^2 + s3^2 + s4^2 and f = grad g.

inline double rutishauser_f1(double x, double y) {
  const double x2 = x * x, x3 = x2 * x, x5 = x3 * x2, x7 = x5 * x2;
  const double y2 = y * y, y3 = y2 * y, y4 = y3 * y;
  return -2.0 - 1.2 * x - 4.08 * x2 + 3.92 * x3 + 6.0 * x5 + 8.0 * x7 + 2.0 * y + 4.0 * x * y2 +
         6.0 * x2 * y3 + 8.0 * x3 * y4;
}

// f2(x, y) is f1(y, x) term for term.
inline double rutishauser_f2(double x, double y) { return rutishauser_f1(y, x); }

inline double rutishauser_g(double x, double y) {
  const double s1 = x + y - 1.0;
  const double s2 = x * x + y * y - 0.8;
  const double s3 = x * x * x + y * y * y - 0.68;
  const double s4 = x * x * x * x + y * y * y * y - 0.01;
  return s1 * s1 + s2 * s2 + s3 * s3 + s4 * s4;
}

inline VectorProblem rutishauser() {
  VectorProblem p;
  p.name = "rutishauser";
  p.n = 2;
  p.f = [](const Vector& v) {
    Vector out(2);
    out << rutishauser_f1(v(0), v(1)), rutishauser_f2(v(0), v(1));
    return out;
  };
  p.jacobian = [](const Vector& v) -> std::optional<Matrix> {
    const double x = v(0), y = v(1);
    // d f1/dx and d f1/dy; the f2 row follows from the swap symmetry.
    auto dx = [](double a, double b) {
      const double a2 = a * a, a4 = a2 * a2, a6 = a4 * a2;
      const double b2 = b * b, b3 = b2 * b, b4 = b3 * b;
      return -1.2 - 8.16 * a + 11.76 * a2 + 30.0 * a4 + 56.0 * a6 + 4.0 * b2 + 12.0 * a * b3 +
             24.0 * a2 * b4;
    };
    auto dy = [](double a, double b) {
      const double a2 = a * a, a3 = a2 * a;
      const double b2 = b * b, b3 = b2 * b;
      return 2.0 + 8.0 * a * b + 18.0 * a2 * b2 + 32.0 * a3 * b3;
    };
    Matrix j(2, 2);
    j << dx(x, y), dy(x, y), dy(y, x), dx(y, x);
    return j;
  };
  p.objective = [](const Vector& v) { return rutishauser_g(v(0), v(1)); };
  p.domain = make_box(-0.5, 1.1, -0.7, 1.1);
  p.description =
      "Rutishauser least squares: f = grad g, g = s1^2 + s2^2 + s3^2 + s4^2 with "
      "s1 = x+y-1, s2 = x^2+y^2-0.8, s3 = x^3+y^3-0.68, s4 = x^4+y^4-0.01";
  return p;
}

// Negated Ackley function on [-32.768, 32.768]^2. The printed constants are
// 2*sqrt(2), 0.2/sqrt(2) and pi to 16-17 digits.
inline constexpr double kAckleyA = 2.8284271247461907;
inline constexpr double kAckleyC = 0.14142135623730953;
inline constexpr double kAckleyPi = 3.141592653589793;

inline double ackley_g(double x, double y) {
  const double s1 = -0.2 * std::sqrt(0.5 * (x * x + y * y));
  const double s2 = 0.5 * (std::cos(2.0 * kAckleyPi * x) + std::cos(2.0 * kAckleyPi * y));
  return -(-20.0 * std::exp(s1) - std::exp(s2) + 20.0 + std::numbers::e);
}

inline VectorProblem ackley_gradient() {
  VectorProblem p;
  p.name = "ackley";
  p.n = 2;
  p.f = [](const Vector& v) {
    const double x = v(0), y = v(1);
    Vector out(2);
    if (x == 0.0 && y == 0.0) {
      out << 0.0, 0.0;
      return out;
    }
    const double r = std::sqrt(x * x + y * y);
    const double radial = kAckleyA * std::exp(-kAckleyC * r) / r;
    const double wave = kAckleyPi * std::exp(0.5 * (std::cos(2.0 * kAckleyPi * x) + std::cos(2.0 * kAckleyPi * y)));
    out << -radial * x - wave * std::sin(2.0 * kAckleyPi * x), -radial * y - wave * std::sin(2.0 * kAckleyPi * y);
    return out;
  };
  p.jacobian = [](const Vector& v) -> std::optional<Matrix> {
    const double x = v(0), y = v(1);
    if (x == 0.0 && y == 0.0) return std::nullopt;
    const double r2 = x * x + y * y;
    const double r = std::sqrt(r2);
    const double r3 = r2 * r;
    const double e = kAckleyA * std::exp(-kAckleyC * r);
    const double tp = 2.0 * kAckleyPi;
    const double sx = std::sin(tp * x), sy = std::sin(tp * y);
    const double cx = std::cos(tp * x), cy = std::cos(tp * y);
    const double w = kAckleyPi * std::exp(0.5 * (cx + cy));

    const double radial_xx = -e * (-kAckleyC * x * x / r2 + y * y / r3);
    const double radial_yy = -e * (-kAckleyC * y * y / r2 + x * x / r3);
    const double radial_xy = e * x * y * (kAckleyC / r2 + 1.0 / r3);
    const double wave_xx = -w * (-kAckleyPi * sx * sx + tp * cx);
    const double wave_yy = -w * (-kAckleyPi * sy * sy + tp * cy);
    const double wave_xy = kAckleyPi * w * sx * sy;

    Matrix j(2, 2);
    j << radial_xx + wave_xx, radial_xy + wave_xy, radial_xy + wave_xy, radial_yy + wave_yy;
    return j;
  };
  p.objective = [](const Vector& v) { return ackley_g(v(0), v(1)); };
  p.domain = make_box(-32.768, 32.768, -32.768, 32.768);
  p.description =
      "gradient of g = -(-20 exp(s1) - exp(s2) + 20 + e), s1 = -0.2 sqrt(0.5 (x^2+y^2)), "
      "s2 = 0.5 (cos 2 pi x + cos 2 pi y); f(0,0) = (0,0), Jacobian undefined at the origin";
  return p;
}

/// Smooth scalar problems with known simple roots and derivatives through
/// order 6: x^3 - 2, e^x - 2, and sin x on [2, 4].
template <class Real = double>
std::vector<BasicScalarProblem<Real>> scalar_test_set() {
  using std::cos;
  using std::exp;
  using std::log;
  using std::pow;
  using std::sin;
  using Problem = BasicScalarProblem<Real>;
  using Fn = typename Problem::Fn;
  std::vector<Problem> set;

  const Real cube_root_2 = [] {
    if constexpr (std::is_same_v<Real, double>) return std::cbrt(2.0);
    else return Real(pow(Real(2), Real(1) / Real(3)));
  }();
  set.emplace_back("cubic", [](const Real& x) -> Real { return x * x * x - 2; },
                   std::vector<Fn>{[](const Real& x) -> Real { return 3 * x * x; },
                                   [](const Real& x) -> Real { return 6 * x; },
                                   [](const Real&) -> Real { return 6; }, [](const Real&) -> Real { return 0; },
                                   [](const Real&) -> Real { return 0; }, [](const Real&) -> Real { return 0; }},
                   cube_root_2);

  std::vector<Fn> exp_derivs(6, [](const Real& x) -> Real { return exp(x); });
  set.emplace_back("exp", [](const Real& x) -> Real { return exp(x) - 2; }, std::move(exp_derivs),
                   Real(log(Real(2))));

  set.emplace_back("sin", [](const Real& x) -> Real { return sin(x); },
                   std::vector<Fn>{[](const Real& x) -> Real { return cos(x); },
                                   [](const Real& x) -> Real { return -sin(x); },
                                   [](const Real& x) -> Real { return -cos(x); },
                                   [](const Real& x) -> Real { return sin(x); },
                                   [](const Real& x) -> Real { return cos(x); },
                                   [](const Real& x) -> Real { return -sin(x); }},
                   boost::math::constants::pi<Real>(), BasicInterval<Real>{Real(2), Real(4)});
  return set;
}

template <class Real = double>
std::optional<BasicScalarProblem<Real>> scalar_problem(const std::string& name) {
  for (auto& p : scalar_test_set<Real>())
    if (p.name() == name) return p;
  return std::nullopt;
}

inline std::optional<VectorProblem> vector_problem(const std::string& name) {
  if (name == "rutishauser") return rutishauser();
  if (name == "ackley") return ackley_gradient();
  return std::nullopt;
}

}  // namespace itermaps::problems
