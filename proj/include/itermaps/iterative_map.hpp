#pragma once

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>

#include "itermaps/coefficients.hpp"

namespace itermaps {

enum class Family { Newton, NewtonTaylor, NewtonBarycentric, Composition };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::Newton: return "newton";
    case Family::NewtonTaylor: return "taylor";
    case Family::NewtonBarycentric: return "bary";
    case Family::Composition: return "compose";
  }
  return "unknown";
}

/// A map t with t(z) = z at simple zeros of f. Cheap to copy; the coefficient
/// table and composition operands are shared immutable state.
class IterativeMap {
 public:
  static IterativeMap newton() { return IterativeMap(Family::Newton, 0); }

  static IterativeMap taylor(int k) {
    check_index(k);
    return IterativeMap(Family::NewtonTaylor, k);
  }

  static IterativeMap barycentric(int k, int max_k = kDefaultMaxOrder) {
    check_index(k);
    IterativeMap m(Family::NewtonBarycentric, k);
    m.table_ = std::make_shared<const CoefficientTable>(k, max_k);
    return m;
  }

  /// outer(inner(x))
  static IterativeMap compose(const IterativeMap& outer, const IterativeMap& inner) {
    IterativeMap m(Family::Composition, 0);
    m.outer_ = std::make_shared<const IterativeMap>(outer);
    m.inner_ = std::make_shared<const IterativeMap>(inner);
    return m;
  }

  Family family() const { return family_; }
  int k() const { return k_; }
  const IterativeMap& outer() const { return *outer_; }
  const IterativeMap& inner() const { return *inner_; }
  const CoefficientTable& coefficients() const { return *table_; }

  /// Lower bound on the local order of convergence.
  int theoretical_order() const {
    switch (family_) {
      case Family::Newton: return 2;
      case Family::NewtonTaylor:
      case Family::NewtonBarycentric: return k_ + 2;
      case Family::Composition: return outer_->theoretical_order() * inner_->theoretical_order();
    }
    return 0;
  }

  /// Highest derivative of f the map touches (Taylor needs f^(k+1)).
  int required_derivative_order() const {
    switch (family_) {
      case Family::NewtonTaylor: return k_ + 1;
      case Family::Composition:
        return std::max(outer_->required_derivative_order(), inner_->required_derivative_order());
      default: return 1;
    }
  }

  /// Canonical spec string, parseable by parse_map_spec.
  std::string spec() const {
    switch (family_) {
      case Family::Newton: return "newton";
      case Family::NewtonTaylor: return "taylor:" + std::to_string(k_);
      case Family::NewtonBarycentric: return "bary:" + std::to_string(k_);
      case Family::Composition: return "compose:" + outer_->spec() + "," + inner_->spec();
    }
    return {};
  }

  /// Short name in t-subscript style: t_3, t_32 (composition of t_3 and t_2), taylor t_1 -> T_1.
  std::string label() const {
    switch (family_) {
      case Family::Newton: return "t_0";
      case Family::NewtonTaylor: return "T_" + std::to_string(k_);
      case Family::NewtonBarycentric: return "t_" + std::to_string(k_);
      case Family::Composition: {
        const auto o = outer_->label();
        const auto i = inner_->label();
        if (o.size() == 3 && i.size() == 3 && o[0] == i[0]) return o + i.substr(2);
        return o + "(" + i + ")";
      }
    }
    return {};
  }

 private:
  IterativeMap(Family family, int k) : family_(family), k_(k) {}

  static void check_index(int k) {
    if (k < 0) throw std::invalid_argument("map order index must be non-negative");
  }

  Family family_;
  int k_;
  std::shared_ptr<const CoefficientTable> table_;
  std::shared_ptr<const IterativeMap> outer_;
  std::shared_ptr<const IterativeMap> inner_;
};

inline IterativeMap compose(const IterativeMap& outer, const IterativeMap& inner) {
  return IterativeMap::compose(outer, inner);
}

}  // namespace itermaps
