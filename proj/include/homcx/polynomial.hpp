#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homcx/field.hpp"

namespace homcx {

/// Exponent vector of a monomial in a fixed number of variables.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<int> exps);

  static Monomial variable(std::size_t nvars, std::size_t i);

  std::size_t num_vars() const { return exps_.size(); }
  int degree() const { return degree_; }
  int operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<int>& exponents() const { return exps_; }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  /// o / *this; requires divides(o).
  Monomial quotient_of(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  bool coprime(const Monomial& o) const;

  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

/// Graded reverse lexicographic order: true when a > b.
bool degrevlex_greater(const Monomial& a, const Monomial& b);

struct DegRevLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return degrevlex_greater(b, a); }
};

struct Term {
  Monomial mono;
  PrimeField::Element coef;
};

/// Sparse polynomial: terms sorted by strictly decreasing degrevlex order,
/// no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }

  /// Common degree of all terms, or nullopt if zero or inhomogeneous.
  std::optional<int> homogeneous_degree() const;
  bool is_homogeneous() const;
  /// A nonzero constant.
  bool is_unit() const { return terms_.size() == 1 && terms_.front().mono.degree() == 0; }

  bool operator==(const Polynomial& o) const;

  /// Builds from arbitrary terms (sorting, merging, dropping zeros).
  static Polynomial from_terms(const PrimeField& F, std::vector<Term> terms);

 private:
  friend class PolynomialRing;
  std::vector<Term> terms_;
};

/// GF(p)[x_1..x_n] with named variables; owns polynomial arithmetic.
class PolynomialRing {
 public:
  PolynomialRing(PrimeField field, std::vector<std::string> var_names);

  const PrimeField& field() const { return field_; }
  std::size_t num_vars() const { return names_.size(); }
  const std::vector<std::string>& var_names() const { return names_; }

  Polynomial zero() const { return {}; }
  Polynomial constant(std::int64_t c) const;
  Polynomial variable(std::size_t i) const;
  Polynomial monomial(const Monomial& m, PrimeField::Element c = 1) const;

  Polynomial add(const Polynomial& a, const Polynomial& b) const;
  Polynomial sub(const Polynomial& a, const Polynomial& b) const;
  Polynomial neg(const Polynomial& a) const;
  Polynomial scale(const Polynomial& a, PrimeField::Element c) const;
  Polynomial mul_term(const Polynomial& a, const Monomial& m, PrimeField::Element c) const;
  Polynomial mul(const Polynomial& a, const Polynomial& b) const;
  Polynomial pow(const Polynomial& a, unsigned e) const;
  Polynomial make_monic(const Polynomial& a) const;

  std::string to_string(const Polynomial& f) const;
  std::string to_string(const Monomial& m) const;

  bool operator==(const PolynomialRing& o) const { return field_ == o.field_ && names_ == o.names_; }

 private:
  PrimeField field_;
  std::vector<std::string> names_;
};

/// All monomials of the given degree in n variables, in decreasing degrevlex order.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, int degree);

}  // namespace homcx
