#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "itermaps/maps1d.hpp"
#include "itermaps/problems.hpp"

using namespace itermaps;

namespace {

using Fn = ScalarProblem::Fn;

ScalarProblem polynomial(std::string name, std::vector<double> c, std::optional<double> root = std::nullopt) {
  // c[i] is the coefficient of x^i; derivatives are generated up to order 6.
  auto eval = [](std::vector<double> coeffs) {
    return Fn([coeffs](const double& x) {
      double s = 0;
      for (std::size_t i = coeffs.size(); i-- > 0;) s = s * x + coeffs[i];
      return s;
    });
  };
  std::vector<Fn> derivs;
  auto cur = c;
  for (int d = 1; d <= 6; ++d) {
    std::vector<double> next;
    for (std::size_t i = 1; i < cur.size(); ++i) next.push_back(cur[i] * static_cast<double>(i));
    if (next.empty()) next.push_back(0.0);
    derivs.push_back(eval(next));
    cur = next;
  }
  return ScalarProblem(std::move(name), eval(c), std::move(derivs), root);
}

bool rel_close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)); }

ScalarProblem cubic() { return *problems::scalar_problem("cubic"); }
ScalarProblem expm2() { return *problems::scalar_problem("exp"); }

double halley(const ScalarProblem& p, double x) {
  const double f = p.f(x), d1 = p.derivative(1, x), d2 = p.derivative(2, x);
  return x - 2 * f * d1 / (2 * d1 * d1 - f * d2);
}

}  // namespace

TEST(NewtonStep, Examples) {
  EXPECT_DOUBLE_EQ(newton_step(polynomial("x", {0, 1}), 5.0), 0.0);
  EXPECT_DOUBLE_EQ(newton_step(polynomial("x2m1", {-1, 0, 1}), 2.0), 1.25);
  const double z = std::cbrt(2.0);
  EXPECT_NEAR(newton_step(cubic(), z), z, 1e-15);
}

TEST(NewtonStep, SingularDerivative) {
  try {
    newton_step(polynomial("x2m1", {-1, 0, 1}), 0.0);
    FAIL() << "expected StepError";
  } catch (const StepError& e) {
    EXPECT_EQ(e.kind(), StepErrorKind::ModelSingular);
  }
}

TEST(TaylorModel, Examples) {
  const auto p = expm2();
  EXPECT_DOUBLE_EQ(taylor_model(p, 0, 123.0, 0.3), std::exp(0.3));
  const auto q = polynomial("x2m1", {-1, 0, 1});
  EXPECT_DOUBLE_EQ(taylor_model(q, 1, 0.25, 2.0), 4.0 + 2.0 * 0.25 / 2);
  // e^x at 0 with h = 1: 1 + 1/2 + 1/6 + 1/24
  const ScalarProblem e("exp", [](const double& x) { return std::exp(x); },
                        std::vector<Fn>(6, [](const double& x) { return std::exp(x); }));
  EXPECT_NEAR(taylor_model(e, 3, 1.0, 0.0), 41.0 / 24.0, 1e-15);
}

TEST(TaylorModel, InsufficientDerivatives) {
  const ScalarProblem p("short", [](const double& x) { return x * x; },
                        {[](const double& x) { return 2 * x; }, [](const double&) { return 2.0; }});
  try {
    taylor_model(p, 2, 0.1, 1.0);
    FAIL() << "expected StepError";
  } catch (const StepError& e) {
    EXPECT_EQ(e.kind(), StepErrorKind::InsufficientDerivatives);
  }
}

TEST(TaylorModel, TableDenominators) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-1.0, 1.5), uh(-0.5, 0.5);
  for (const auto& p : problems::scalar_test_set()) {
    for (int trial = 0; trial < 25; ++trial) {
      const double x = ux(rng), h = uh(rng);
      double d[6];
      for (int i = 1; i <= 5; ++i) d[i] = p.derivative(i, x);
      const double t1 = (2 * d[1] + d[2] * h) / 2;
      const double t2 = (6 * d[1] + 3 * d[2] * h + d[3] * h * h) / 6;
      const double t3 = (24 * d[1] + 12 * d[2] * h + 4 * d[3] * h * h + d[4] * h * h * h) / 24;
      const double t4 =
          (120 * d[1] + 60 * d[2] * h + 20 * d[3] * h * h + 5 * d[4] * h * h * h + d[5] * h * h * h * h) / 120;
      EXPECT_TRUE(rel_close(taylor_model(p, 1, h, x), t1, 1e-12)) << p.name();
      EXPECT_TRUE(rel_close(taylor_model(p, 2, h, x), t2, 1e-12)) << p.name();
      EXPECT_TRUE(rel_close(taylor_model(p, 3, h, x), t3, 1e-12)) << p.name();
      EXPECT_TRUE(rel_close(taylor_model(p, 4, h, x), t4, 1e-12)) << p.name();
    }
  }
}

TEST(BarycentricModel, Examples) {
  const auto sq = polynomial("x2", {0, 0, 1});
  EXPECT_DOUBLE_EQ(barycentric_model(sq, barycentric_coefficients(0), 0.7, 1.3), 2.6);
  EXPECT_DOUBLE_EQ(barycentric_model(sq, barycentric_coefficients(1), -0.5, 1.0), 1.5);
  const auto lin = polynomial("x", {0, 1});
  EXPECT_NEAR(barycentric_model(lin, barycentric_coefficients(2), 3.1, -4.2), 1.0, 1e-15);
}

TEST(BarycentricModel, NonFiniteIsReported) {
  const ScalarProblem p("log", [](const double& x) { return std::log(x); }, {[](const double& x) { return 1 / x; }});
  const std::vector<double> a{0.5, 0.5};
  try {
    barycentric_model<double>(p, a, -1.0, 1.0);  // f'(0) = inf
    FAIL() << "expected StepError";
  } catch (const StepError& e) {
    EXPECT_EQ(e.kind(), StepErrorKind::NonFinite);
  }
}

TEST(RecursiveMap, TaylorOneIsHalley) {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> ucubic(0.6, 3.0), uexp(-1.0, 2.5);
  const auto map = IterativeMap::taylor(1);
  for (const auto& [p, dist] : {std::pair{cubic(), ucubic}, std::pair{expm2(), uexp}}) {
    auto d = dist;
    int checked = 0;
    while (checked < 100) {
      const double x = d(rng);
      const double f = p.f(x), d1 = p.derivative(1, x), d2 = p.derivative(2, x);
      if (std::abs(d1) <= 1e-6 || std::abs(2 * d1 * d1 - f * d2) <= 1e-6) continue;
      EXPECT_TRUE(rel_close(map_step(p, map, x), halley(p, x), 1e-12)) << p.name() << " x=" << x;
      ++checked;
    }
  }
}

TEST(RecursiveMap, OrderThreeAndFourClosedForms) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.8, 2.0);
  const auto t1 = IterativeMap::barycentric(1);
  const auto t2 = IterativeMap::barycentric(2);
  for (const auto& p : {cubic(), expm2()}) {
    for (int trial = 0; trial < 50; ++trial) {
      const double x = u(rng);
      const double f = p.f(x);
      auto d1 = [&](double at) { return p.derivative(1, at); };
      const double h1 = -f / d1(x);
      const double s = d1(x) + d1(x + h1);
      const double order3 = x - 2 * f / s;
      const double order4 = x - 12 * f / (5 * d1(x) + 8 * d1(x - 2 * f / s) - d1(x - 4 * f / s));
      EXPECT_TRUE(rel_close(map_step(p, t1, x), order3, 1e-12)) << p.name() << " x=" << x;
      EXPECT_TRUE(rel_close(map_step(p, t2, x), order4, 1e-12)) << p.name() << " x=" << x;
    }
  }
}

TEST(RecursiveMap, BarycentricZeroIsNewton) {
  const auto p = cubic();
  for (double x : {0.9, 1.3, 2.2}) EXPECT_EQ(map_step(p, IterativeMap::barycentric(0), x), newton_step(p, x));
}

TEST(RecursiveMap, RootIsFixedPoint) {
  for (const auto& p : problems::scalar_test_set()) {
    const double z = *p.known_root();
    for (int k = 0; k <= 5; ++k) {
      EXPECT_NEAR(map_step(p, IterativeMap::barycentric(k), z), z, 4e-16 * std::abs(z) + 1e-15) << p.name();
      EXPECT_NEAR(map_step(p, IterativeMap::taylor(k), z), z, 4e-16 * std::abs(z) + 1e-15) << p.name();
    }
  }
}

TEST(RecursiveMap, MapsDoNotRepelNearRoot) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e-10, 1e-10);
  for (const auto& p : problems::scalar_test_set()) {
    const double z = *p.known_root();
    ASSERT_GT(std::abs(p.derivative(1, z)), 0.1);
    for (int k = 0; k <= 5; ++k) {
      for (const auto& map : {IterativeMap::barycentric(k), IterativeMap::taylor(k)}) {
        for (int trial = 0; trial < 10; ++trial) {
          const double zp = z + u(rng);
          const double t = map_step(p, map, zp);
          EXPECT_LE(std::abs(t - zp), 10 * std::abs(zp - z) + 1e-15) << p.name() << " " << map.spec();
        }
      }
    }
  }
}

TEST(RecursiveMap, TaylorNeedsDerivatives) {
  const auto p = cubic();  // derivatives through order 6
  EXPECT_NO_THROW(map_step(p, IterativeMap::taylor(5), 1.3));
  EXPECT_THROW(map_step(p, IterativeMap::taylor(6), 1.3), StepError);
}

TEST(Compose, AppliesInnerFirst) {
  const auto p = expm2();
  const auto t3 = IterativeMap::barycentric(3), t2 = IterativeMap::barycentric(2);
  const auto t32 = compose(t3, t2);
  EXPECT_EQ(t32.theoretical_order(), 20);
  for (double x : {0.2, 0.5, 1.1}) EXPECT_EQ(map_step(p, t32, x), map_step(p, t3, map_step(p, t2, x)));
  const double z = *p.known_root();
  EXPECT_NEAR(map_step(p, compose(IterativeMap::barycentric(5), IterativeMap::barycentric(4)), z), z, 1e-15);
  EXPECT_EQ(compose(IterativeMap::barycentric(5), IterativeMap::barycentric(4)).label(), "t_54");
}

TEST(Iterate, NewtonOnCubeRootOfTwo) {
  const auto tr = iterate(cubic(), IterativeMap::newton(), 1.5, 50, 1e-12);
  EXPECT_EQ(tr.status, IterationStatus::Converged);
  EXPECT_NEAR(tr.points.back(), 1.2599210498948731647672106, 1e-15);
}

TEST(Iterate, NoRealRoot) {
  const auto tr = iterate(polynomial("x2p1", {1, 0, 1}), IterativeMap::newton(), 1.0, 40, 1e-12);
  EXPECT_TRUE(tr.status == IterationStatus::MaxIter || tr.status == IterationStatus::StepFailure);
}

TEST(Iterate, StartAtRoot) {
  const auto p = *problems::scalar_problem("sin");
  const auto tr = iterate(p, IterativeMap::barycentric(2), *p.known_root(), 10, 1e-12);
  EXPECT_EQ(tr.status, IterationStatus::Converged);
  EXPECT_EQ(tr.points.size(), 1u);
}

TEST(Iterate, StepFailureBecomesStatus) {
  const auto tr = iterate(polynomial("x2m1", {-1, 0, 1}), IterativeMap::newton(), 0.0, 5, 1e-12);
  EXPECT_EQ(tr.status, IterationStatus::StepFailure);
  EXPECT_FALSE(tr.message.empty());
}

TEST(Iterate, RejectsBadArguments) {
  EXPECT_THROW(iterate(cubic(), IterativeMap::newton(), 1.0, 0, 1e-12), std::invalid_argument);
  EXPECT_THROW(iterate(cubic(), IterativeMap::newton(), 1.0, 5, 0.0), std::invalid_argument);
}

TEST(EstimateOrder, NewtonOnSqrtTwo) {
  const auto p = polynomial("x2m2", {-2, 0, 1});
  const auto tr = iterate(p, IterativeMap::newton(), 1.0, 50, 1e-300);
  const double z = std::sqrt(2.0);

  // Oracle: plain Newton recurrence and the ratio/median rule written out.
  std::vector<double> e;
  for (double x = 1.0; e.size() < 8; x = x - (x * x - 2) / (2 * x)) e.push_back(std::abs(x - z));
  std::vector<double> r;
  for (std::size_t i = 0; i + 1 < e.size(); ++i)
    if (e[i] < 0.5 && e[i + 1] > 1e-13 && e[i + 1] < e[i]) r.push_back(std::log(e[i + 1]) / std::log(e[i]));
  ASSERT_EQ(r.size(), 4u);  // 2.786, 2.447, 2.173, 2.080
  std::sort(r.begin(), r.end());
  const double oracle = 0.5 * (r[1] + r[2]);

  const double est = estimate_order(tr.points, z);
  EXPECT_NEAR(est, oracle, 1e-12);
  // From x0 = 1 the usable ratios are still pre-asymptotic: the median is 2.31.
  EXPECT_NEAR(est, 2.0, 0.32);
  // Starting closer, the same estimator lands inside +-0.3 of 2.
  const auto near = iterate(p, IterativeMap::newton(), 1.3, 50, 1e-300);
  EXPECT_NEAR(estimate_order(near.points, z), 2.0, 0.3);
}

TEST(EstimateOrder, BarycentricOneOnCubic) {
  const auto tr = iterate(cubic(), IterativeMap::barycentric(1), 1.4, 50, 1e-300);
  EXPECT_NEAR(estimate_order(tr.points, std::cbrt(2.0)), 3.0, 0.3);
}

TEST(EstimateOrder, AttainableDoubleChecks) {
  for (const auto& p : {cubic(), expm2()}) {
    const double z = *p.known_root();
    for (int k = 0; k <= 1; ++k) {
      const auto tr = iterate(p, IterativeMap::barycentric(k), z + 0.3, 50, 1e-300);
      EXPECT_GE(estimate_order(tr.points, z), k + 2 - 0.3) << p.name() << " k=" << k;
    }
  }
}

TEST(EstimateOrder, TooFewRatios) {
  const std::vector<double> two{1.3, 1.26};
  EXPECT_THROW(estimate_order(two, std::cbrt(2.0)), InsufficientDataError);
}

TEST(EstimateOrder, SignInvariant) {
  const double z = std::cbrt(2.0);
  const auto tr = iterate(cubic(), IterativeMap::barycentric(1), 1.4, 50, 1e-300);
  std::vector<double> mirrored;
  for (double x : tr.points) mirrored.push_back(2 * z - x);
  // reflection about the root flips every e_k (exactly up to rounding of 2z - x)
  EXPECT_NEAR(estimate_order(mirrored, z), estimate_order(tr.points, z), 1e-2);
  std::vector<double> negated;
  for (double x : tr.points) negated.push_back(-x);
  EXPECT_EQ(estimate_order(negated, -z), estimate_order(tr.points, z));
}

namespace {
using Real100 = boost::multiprecision::cpp_bin_float_100;
}

TEST(EstimateOrder, HighPrecisionOrders) {
  const OrderOptions opt{1e-90, 0.5};
  for (const auto& p : problems::scalar_test_set<Real100>()) {
    const Real100 z = *p.known_root();
    for (double off : {0.05, -0.05}) {
      for (int k = 0; k <= 3; ++k) {
        const auto tr = iterate<Real100>(p, IterativeMap::barycentric(k), z + off, 30, 1e-300);
        EXPECT_GE(estimate_order<Real100>(tr.points, z, opt), k + 2 - 0.3) << p.name() << " k=" << k;
      }
      const auto tr = iterate<Real100>(p, IterativeMap::taylor(1), z + off, 30, 1e-300);
      EXPECT_NEAR(estimate_order<Real100>(tr.points, z, opt), 3.0, 0.3) << p.name();
    }
  }
}

TEST(EstimateOrder, HighPrecisionMatchesDoubleMap) {
  const auto hp = *problems::scalar_problem<Real100>("exp");
  const auto dp = expm2();
  for (double x : {0.1, 0.4, 0.9})
    EXPECT_NEAR(static_cast<double>(map_step<Real100>(hp, IterativeMap::barycentric(3), Real100(x))),
                map_step(dp, IterativeMap::barycentric(3), x), 1e-14);
}
