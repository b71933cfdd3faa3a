#pragma once

// Plain-text polynomial systems f : R^n -> R^n.
//
//   # comment
//   name my-system                       (optional)
//   domain <lo_1> <hi_1> ... <lo_n> <hi_n>
//   poly <n> : <coeff> <exponent-tuple> ; <coeff> <exponent-tuple> ; ...
//
// One `poly` line per component, n lines in total. An exponent tuple is n
// non-negative integers, optionally parenthesised and comma separated:
// `3.92 (3,0)` and `3.92 3 0` are the same term.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "itermaps/errors.hpp"
#include "itermaps/vector_problem.hpp"

namespace itermaps {

struct Monomial {
  double coeff = 0.0;
  std::vector<int> exponents;
};

using Polynomial = std::vector<Monomial>;

inline double evaluate(const Polynomial& p, const Vector& x) {
  double sum = 0.0;
  for (const auto& m : p) {
    double term = m.coeff;
    for (std::size_t i = 0; i < m.exponents.size(); ++i)
      term *= std::pow(x(static_cast<Eigen::Index>(i)), m.exponents[i]);
    sum += term;
  }
  return sum;
}

inline Polynomial differentiate(const Polynomial& p, std::size_t var) {
  Polynomial out;
  for (const auto& m : p) {
    if (m.exponents[var] == 0) continue;
    Monomial d = m;
    d.coeff *= m.exponents[var];
    d.exponents[var] -= 1;
    out.push_back(std::move(d));
  }
  return out;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline Monomial parse_term(std::string text, std::size_t n, int line_no) {
  std::replace(text.begin(), text.end(), '(', ' ');
  std::replace(text.begin(), text.end(), ')', ' ');
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream in(text);
  Monomial m;
  auto fail = [&](const std::string& why) {
    return ProblemDefinitionError("line " + std::to_string(line_no) + ": " + why + " in term '" + trim(text) + "'");
  };
  std::string coeff;
  if (!(in >> coeff)) throw fail("missing coefficient");
  try {
    std::size_t used = 0;
    m.coeff = std::stod(coeff, &used);
    if (used != coeff.size()) throw fail("bad coefficient");
  } catch (const std::logic_error&) {
    throw fail("bad coefficient");
  }
  std::string tok;
  while (in >> tok) {
    int e = 0;
    try {
      std::size_t used = 0;
      e = std::stoi(tok, &used);
      if (used != tok.size()) throw fail("bad exponent");
    } catch (const std::logic_error&) {
      throw fail("bad exponent");
    }
    if (e < 0) throw fail("negative exponent");
    m.exponents.push_back(e);
  }
  if (m.exponents.size() != n)
    throw fail("expected " + std::to_string(n) + " exponents, got " + std::to_string(m.exponents.size()));
  return m;
}

}  // namespace detail

struct PolynomialSystem {
  std::string name = "polynomial";
  std::size_t n = 0;
  std::vector<Polynomial> components;
  std::vector<std::vector<Polynomial>> jacobian;  // [row][col]
  Box domain;
};

inline PolynomialSystem parse_polynomial_system(std::istream& in) {
  PolynomialSystem sys;
  std::vector<double> domain;
  bool have_domain = false;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = detail::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string keyword;
    ls >> keyword;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (keyword == "name") {
      std::string rest;
      std::getline(ls, rest);
      sys.name = detail::trim(rest);
    } else if (keyword == "domain") {
      double v = 0;
      while (ls >> v) domain.push_back(v);
      if (!ls.eof()) throw ProblemDefinitionError(where + "bad number in domain");
      have_domain = true;
    } else if (keyword == "poly") {
      const auto colon = line.find(':');
      if (colon == std::string::npos) throw ProblemDefinitionError(where + "missing ':' after poly <n>");
      std::istringstream hs(line.substr(4, colon - 4));
      long n = 0;
      std::string extra;
      if (!(hs >> n) || n < 1 || (hs >> extra)) throw ProblemDefinitionError(where + "bad dimension");
      if (sys.n == 0) sys.n = static_cast<std::size_t>(n);
      if (sys.n != static_cast<std::size_t>(n)) throw ProblemDefinitionError(where + "dimension mismatch");
      Polynomial poly;
      std::stringstream terms(line.substr(colon + 1));
      std::string term;
      while (std::getline(terms, term, ';')) {
        if (detail::trim(term).empty()) continue;
        poly.push_back(detail::parse_term(term, sys.n, line_no));
      }
      if (poly.empty()) throw ProblemDefinitionError(where + "polynomial has no terms");
      sys.components.push_back(std::move(poly));
    } else {
      throw ProblemDefinitionError(where + "unknown directive '" + keyword + "'");
    }
  }
  if (sys.components.empty()) throw ProblemDefinitionError("no poly lines");
  if (sys.components.size() != sys.n)
    throw ProblemDefinitionError("expected " + std::to_string(sys.n) + " poly lines, got " +
                                 std::to_string(sys.components.size()));
  if (!have_domain) throw ProblemDefinitionError("missing domain line");
  if (domain.size() != 2 * sys.n)
    throw ProblemDefinitionError("domain needs " + std::to_string(2 * sys.n) + " numbers");
  sys.domain = Box{Vector(static_cast<Eigen::Index>(sys.n)), Vector(static_cast<Eigen::Index>(sys.n))};
  for (std::size_t i = 0; i < sys.n; ++i) {
    const double lo = domain[2 * i], hi = domain[2 * i + 1];
    if (!(lo < hi)) throw ProblemDefinitionError("domain bounds must satisfy lo < hi");
    sys.domain.lower(static_cast<Eigen::Index>(i)) = lo;
    sys.domain.upper(static_cast<Eigen::Index>(i)) = hi;
  }
  for (const auto& comp : sys.components) {
    std::vector<Polynomial> row;
    for (std::size_t c = 0; c < sys.n; ++c) row.push_back(differentiate(comp, c));
    sys.jacobian.push_back(std::move(row));
  }
  return sys;
}

inline VectorProblem to_vector_problem(PolynomialSystem sys) {
  auto shared = std::make_shared<const PolynomialSystem>(std::move(sys));
  VectorProblem p;
  p.name = shared->name;
  p.n = static_cast<int>(shared->n);
  p.domain = shared->domain;
  p.f = [shared](const Vector& x) {
    Vector out(static_cast<Eigen::Index>(shared->n));
    for (std::size_t i = 0; i < shared->n; ++i) out(static_cast<Eigen::Index>(i)) = evaluate(shared->components[i], x);
    return out;
  };
  p.jacobian = [shared](const Vector& x) -> std::optional<Matrix> {
    const auto n = static_cast<Eigen::Index>(shared->n);
    Matrix j(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c)
        j(r, c) = evaluate(shared->jacobian[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], x);
    return j;
  };
  p.description = "polynomial system loaded from file";
  return p;
}

}  // namespace itermaps
