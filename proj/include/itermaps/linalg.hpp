#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include <Eigen/Dense>

namespace itermaps {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kDefaultPivotThreshold = 1e-12;

inline bool all_finite(const Vector& v) { return v.allFinite(); }
inline bool all_finite(const Matrix& m) { return m.allFinite(); }

inline double max_row_norm(const Matrix& a) {
  return a.rows() == 0 ? 0.0 : a.cwiseAbs().rowwise().sum().maxCoeff();
}

/// Dense LU with partial pivoting for A x = b. Returns nullopt when some pivot
/// magnitude is below rel_threshold * max row norm of A (or A is zero).
inline std::optional<Vector> lu_solve(Matrix a, Vector b, double rel_threshold = kDefaultPivotThreshold) {
  const Eigen::Index n = a.rows();
  const double scale = max_row_norm(a);
  if (!(scale > 0.0)) return std::nullopt;
  const double tiny = rel_threshold * scale;

  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    double best = std::abs(a(col, col));
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > best) {
        best = std::abs(a(r, col));
        pivot = r;
      }
    }
    if (!(best >= tiny)) return std::nullopt;
    if (pivot != col) {
      a.row(col).swap(a.row(pivot));
      std::swap(b(col), b(pivot));
    }
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const double factor = a(r, col) / a(col, col);
      if (factor == 0.0) continue;
      for (Eigen::Index c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
      b(r) -= factor * b(col);
    }
  }

  Vector x(n);
  for (Eigen::Index i = n; i-- > 0;) {
    double acc = b(i);
    for (Eigen::Index c = i + 1; c < n; ++c) acc -= a(i, c) * x(c);
    x(i) = acc / a(i, i);
  }
  return x;
}

inline bool is_singular(const Matrix& a, double rel_threshold = kDefaultPivotThreshold) {
  return !lu_solve(a, Vector::Zero(a.rows()), rel_threshold).has_value();
}

}  // namespace itermaps
