#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "homcx/groebner.hpp"
#include "homcx/linalg.hpp"
#include "homcx/polynomial.hpp"

namespace homcx {

/// Truncated Hilbert series: coeffs[i] is the dimension in degree
/// `start + i`. Most callers use start = 0.
struct HilbertSeries {
  int start = 0;
  std::vector<long> coeffs;

  long at(int degree) const {
    int i = degree - start;
    return (i < 0 || i >= static_cast<int>(coeffs.size())) ? 0 : coeffs[i];
  }
  int end() const { return start + static_cast<int>(coeffs.size()); }
  bool operator==(const HilbertSeries& o) const;
};

HilbertSeries operator+(const HilbertSeries& a, const HilbertSeries& b);
HilbertSeries operator-(const HilbertSeries& a, const HilbertSeries& b);
/// Translate by `a`: coefficient of degree d moves to d + a.
HilbertSeries shifted(const HilbertSeries& h, int a);

/// Standard-graded k[x_1..x_n]/I over a prime field. Immutable once built;
/// the lazily filled per-degree tables are guarded by a mutex, so a shared
/// instance is safe for concurrent readers.
class QuotientRing {
 public:
  QuotientRing(PolynomialRing base, std::vector<Polynomial> ideal_gens);

  const PolynomialRing& poly() const { return base_; }
  const PrimeField& field() const { return base_.field(); }
  std::size_t num_vars() const { return base_.num_vars(); }
  const std::vector<Polynomial>& ideal_gens() const { return gens_; }
  const std::vector<Polynomial>& groebner_basis() const { return gb_; }
  int krull_dim() const { return krull_dim_; }
  /// Largest degree with A_d != 0, or -1 if A is not Artinian.
  int top_degree() const { return top_degree_; }
  bool is_artinian() const { return top_degree_ >= 0; }

  Polynomial normal_form(const Polynomial& f) const;
  Polynomial multiply(const Polynomial& a, const Polynomial& b) const;

  HilbertSeries hilbert_series(int max_degree) const;

  /// Standard monomials of degree d (a basis of A_d), decreasing order.
  const std::vector<Monomial>& basis(int d) const;
  std::size_t dim(int d) const { return d < 0 ? 0 : basis(d).size(); }

  /// Coordinates of a homogeneous f of degree d in the basis of A_d.
  Vec coords(const Polynomial& f, int d) const;
  Polynomial from_coords(const Vec& v, int d) const;

  /// Multiplication by homogeneous f as a map A_from -> A_{from + deg}.
  Matrix multiplication_matrix(const Polynomial& f, int from, int to) const;

  /// A_{d} --x_i--> A_{d+1}.
  const Matrix& variable_matrix(std::size_t var, int d) const;

  /// Structural equality: same field, variables and reduced Gröbner basis.
  bool same_ring(const QuotientRing& o) const;

 private:
  const Vec& monomial_nf_coords(const Monomial& m) const;
  void ensure_degree(int d) const;

  PolynomialRing base_;
  std::vector<Polynomial> gens_;
  std::vector<Polynomial> gb_;
  std::vector<Monomial> leads_;
  int krull_dim_ = 0;
  int top_degree_ = -1;

  struct Tables {
    std::map<int, std::vector<Monomial>> basis;
    std::map<int, std::map<std::vector<int>, std::size_t>> index;
    std::map<std::vector<int>, Vec> nf_cache;
    std::map<std::pair<std::size_t, int>, Matrix> var_mats;
  };
  mutable std::unique_ptr<Tables> tables_;
  mutable std::unique_ptr<std::recursive_mutex> mutex_;
};

using RingPtr = std::shared_ptr<const QuotientRing>;

RingPtr make_ring(PolynomialRing base, std::vector<Polynomial> ideal_gens);

}  // namespace homcx
