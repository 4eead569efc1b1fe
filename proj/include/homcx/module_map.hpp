#pragma once

#include <vector>

#include "homcx/quotient_ring.hpp"

namespace homcx {

/// Generator degrees of a graded free module F = ⊕ A(-shift_j).
using Shifts = std::vector<int>;

/// Dimension of F_d and the offset of each summand's block inside F_d.
struct FreeDegreeLayout {
  std::vector<std::size_t> offsets;
  std::size_t total = 0;
};
FreeDegreeLayout free_layout(const QuotientRing& A, const Shifts& shifts, int d);

/// An element of a free module as one polynomial per basis vector.
using PolyColumn = std::vector<Polynomial>;

Vec column_coords(const QuotientRing& A, const Shifts& shifts, const PolyColumn& col, int d);
PolyColumn column_from_coords(const QuotientRing& A, const Shifts& shifts, const Vec& v, int d);
/// Multiplication by x_var, F_d -> F_{d+1}.
Vec multiply_by_variable(const QuotientRing& A, const Shifts& shifts, std::size_t var, int d, const Vec& v);

/// Degree-zero homomorphism of graded free modules, stored as a matrix of
/// normal-form polynomials: entry (i, j) is zero or homogeneous of degree
/// source[j] - target[i].
class ModuleMap {
 public:
  ModuleMap() = default;
  ModuleMap(RingPtr ring, Shifts source, Shifts target);
  ModuleMap(RingPtr ring, Shifts source, Shifts target, std::vector<Polynomial> entries);

  static ModuleMap identity(RingPtr ring, const Shifts& shifts);
  static ModuleMap zero(RingPtr ring, Shifts source, Shifts target) { return {ring, std::move(source), std::move(target)}; }
  /// Columns given as polynomials; source degrees are inferred from the
  /// entries and `target`. Throws on inhomogeneous or zero columns.
  static ModuleMap from_columns(RingPtr ring, Shifts target, const std::vector<PolyColumn>& cols);

  const RingPtr& ring() const { return ring_; }
  const Shifts& source() const { return source_; }
  const Shifts& target() const { return target_; }
  std::size_t rows() const { return target_.size(); }
  std::size_t cols() const { return source_.size(); }

  const Polynomial& operator()(std::size_t i, std::size_t j) const { return entries_[i * source_.size() + j]; }
  void set(std::size_t i, std::size_t j, Polynomial p);
  PolyColumn column(std::size_t j) const;
  const std::vector<Polynomial>& entries() const { return entries_; }

  /// Matrix of the map F_d -> G_d in the standard monomial bases.
  Matrix degree_matrix(int d) const;

  bool is_zero() const;
  /// Some entry is a nonzero constant.
  bool has_unit_entry() const;

  ModuleMap sub_columns(const std::vector<std::size_t>& keep) const;

  bool operator==(const ModuleMap& o) const {
    return source_ == o.source_ && target_ == o.target_ && entries_ == o.entries_;
  }

 private:
  RingPtr ring_;
  Shifts source_, target_;
  std::vector<Polynomial> entries_;
};

/// this ∘ other, i.e. `outer` applied after `inner`.
ModuleMap compose(const ModuleMap& outer, const ModuleMap& inner);
/// [a | b]: same target, concatenated sources.
ModuleMap hconcat(const ModuleMap& a, const ModuleMap& b);
/// Block diagonal a ⊕ b.
ModuleMap block_sum(const ModuleMap& a, const ModuleMap& b);
/// [a ; b]: same source, stacked targets.
ModuleMap vconcat(const ModuleMap& a, const ModuleMap& b);
ModuleMap negate(const ModuleMap& m);
ModuleMap add(const ModuleMap& a, const ModuleMap& b);
ModuleMap scale(const ModuleMap& m, PrimeField::Element c);
/// Same matrix with all source and target degrees moved by `a`.
ModuleMap shift_map(const ModuleMap& m, int a);

/// Degree pieces of the submodule of a free module generated by a list of
/// homogeneous elements. Pieces must be requested in increasing degree.
class SubmoduleSpan {
 public:
  SubmoduleSpan(RingPtr ring, Shifts shifts);

  /// Computes the piece in degree d from the piece in degree d - 1 plus the
  /// generators registered for degree d so far.
  const Subspace& piece(int d);
  /// Adds a generator of degree d (d must equal the last requested degree,
  /// or be larger than it).
  bool add_generator(int d, const Vec& v);
  int current_degree() const { return degree_; }

 private:
  RingPtr ring_;
  Shifts shifts_;
  int degree_;
  bool started_ = false;
  Subspace current_;
};

}  // namespace homcx
