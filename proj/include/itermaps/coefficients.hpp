#pragma once

// Exact barycentric coefficients a = (a_0..a_k) of the order-k model function
// phi_k(x) = sum_i a_i f'(x + i h(x)). They solve R_k a = b where
//   R[0][j] = 1,  R[i][j] = (1 - j)^i  (i >= 1),  b[i] = 1 / (i + 1).

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "itermaps/errors.hpp"

namespace itermaps {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kDefaultMaxOrder = 20;

/// Nearest-ish `Real` to an exact rational: num / den in Real arithmetic.
template <class Real>
Real rational_to(const Rational& r) {
  if constexpr (std::is_same_v<Real, double>) {
    return r.convert_to<double>();
  } else {
    return static_cast<Real>(numerator(r)) / static_cast<Real>(denominator(r));
  }
}

struct BarycentricSystem {
  int k = 0;
  std::vector<std::vector<Rational>> R;  // (k+1) x (k+1), row-major
  std::vector<Rational> b;               // k+1
};

struct BarycentricCoefficients {
  int k = 0;
  std::vector<Rational> a;  // a_0 .. a_k

  std::vector<double> to_double() const {
    std::vector<double> out;
    out.reserve(a.size());
    for (const auto& ai : a) out.push_back(rational_to<double>(ai));
    return out;
  }
};

inline BarycentricSystem build_system(int k) {
  if (k < 0) throw std::invalid_argument("build_system: k must be non-negative");
  const auto n = static_cast<std::size_t>(k) + 1;
  BarycentricSystem sys;
  sys.k = k;
  sys.R.assign(n, std::vector<Rational>(n, Rational(0)));
  sys.b.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sys.b[i] = Rational(1, static_cast<long>(i) + 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == 0) {
        sys.R[i][j] = 1;
      } else {
        // (1 - j)^i; 0^i = 0 for the j = 1 column
        sys.R[i][j] = Rational(boost::multiprecision::pow(
            BigInt(1 - static_cast<long>(j)), static_cast<unsigned>(i)));
      }
    }
  }
  return sys;
}

/// Gaussian elimination over the rationals with max-magnitude partial pivoting.
/// Works on a copy; throws SingularSystemError when a column has no nonzero pivot.
inline BarycentricCoefficients solve_coefficients(const BarycentricSystem& system) {
  const std::size_t n = system.b.size();
  if (system.R.size() != n) throw std::invalid_argument("solve_coefficients: R/b size mismatch");
  for (const auto& row : system.R)
    if (row.size() != n) throw std::invalid_argument("solve_coefficients: R is not square");

  auto M = system.R;
  auto rhs = system.b;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    Rational best = abs(M[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      Rational mag = abs(M[r][col]);
      if (mag > best) {
        best = std::move(mag);
        pivot = r;
      }
    }
    if (best == 0)
      throw SingularSystemError("solve_coefficients: zero pivot in column " + std::to_string(col));
    if (pivot != col) {
      std::swap(M[pivot], M[col]);
      std::swap(rhs[pivot], rhs[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      if (M[r][col] == 0) continue;
      const Rational factor = M[r][col] / M[col][col];
      for (std::size_t c = col; c < n; ++c) M[r][c] -= factor * M[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }

  BarycentricCoefficients out;
  out.k = system.k;
  out.a.assign(n, Rational(0));
  for (std::size_t i = n; i-- > 0;) {
    Rational acc = rhs[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= M[i][c] * out.a[c];
    out.a[i] = acc / M[i][i];
  }
  return out;
}

/// build_system + solve_coefficients, refusing orders above `max_k`.
inline BarycentricCoefficients barycentric_coefficients(int k, int max_k = kDefaultMaxOrder) {
  if (k > max_k)
    throw std::invalid_argument("barycentric order " + std::to_string(k) +
                                " exceeds the configured maximum " + std::to_string(max_k));
  return solve_coefficients(build_system(k));
}

/// sum_{i=0}^{m} (-1)^i C(m,i) / (i+1), summed term by term.
inline Rational alternating_binomial_sum(int m) {
  if (m < 1) throw std::invalid_argument("alternating_binomial_sum: m must be positive");
  Rational sum = 0;
  BigInt binom = 1;  // C(m, i)
  for (int i = 0; i <= m; ++i) {
    Rational term(binom, BigInt(i + 1));
    if (i % 2 == 0) sum += term; else sum -= term;
    binom = binom * (m - i) / (i + 1);
  }
  return sum;
}

/// Coefficient rows for orders 0..max_order. Double rows are converted once;
/// row_as<Real> converts the exact values at call time for other types.
class CoefficientTable {
 public:
  explicit CoefficientTable(int max_order, int max_k = kDefaultMaxOrder) {
    if (max_order < 0) throw std::invalid_argument("CoefficientTable: negative order");
    for (int k = 0; k <= max_order; ++k) {
      exact_.push_back(barycentric_coefficients(k, max_k));
      rows_.push_back(exact_.back().to_double());
    }
  }

  int max_order() const { return static_cast<int>(rows_.size()) - 1; }

  std::span<const double> operator[](int k) const { return rows_.at(static_cast<std::size_t>(k)); }

  const BarycentricCoefficients& exact(int k) const { return exact_.at(static_cast<std::size_t>(k)); }

  template <class Real>
  std::vector<Real> row_as(int k) const {
    std::vector<Real> out;
    for (const auto& a : exact(k).a) out.push_back(rational_to<Real>(a));
    return out;
  }

 private:
  std::vector<BarycentricCoefficients> exact_;
  std::vector<std::vector<double>> rows_;
};

}  // namespace itermaps
