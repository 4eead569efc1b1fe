#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "homcx/polynomial.hpp"

namespace homcx {

class NonHomogeneousError : public std::invalid_argument {
 public:
  NonHomogeneousError(std::size_t index, const std::string& what)
      : std::invalid_argument(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Fully reduces f against the list of polynomials (every term, not just
/// the leading one). With a Gröbner basis the remainder is unique.
Polynomial reduce_fully(const PolynomialRing& R, const Polynomial& f, const std::vector<Polynomial>& basis);

/// Reduced Gröbner basis under degrevlex by Buchberger's algorithm with the
/// coprime-leading-monomial pair criterion. Generators must be homogeneous;
/// the result is monic and sorted by increasing leading monomial.
std::vector<Polynomial> groebner(const PolynomialRing& R, const std::vector<Polynomial>& gens);

}  // namespace homcx
