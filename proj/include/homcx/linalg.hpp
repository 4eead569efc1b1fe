#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "homcx/field.hpp"

namespace homcx {

using Vec = std::vector<PrimeField::Element>;

/// Dense row-major matrix over GF(p). Linear maps follow the column
/// convention: column j is the image of source basis vector j.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  PrimeField::Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  PrimeField::Element operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec column(std::size_t c) const;
  void set_column(std::size_t c, const Vec& v);
  bool is_zero() const;

  static Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<PrimeField::Element> data_;
};

Matrix multiply(const PrimeField& F, const Matrix& a, const Matrix& b);
Vec apply(const PrimeField& F, const Matrix& a, const Vec& v);
Vec axpy(const PrimeField& F, PrimeField::Element alpha, const Vec& x, Vec y);
bool is_zero(const Vec& v);

struct Echelon {
  Matrix reduced;                   // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Gauss-Jordan elimination. Pivots are taken in the leftmost available
/// column, which makes every derived basis deterministic.
Echelon rref(const PrimeField& F, Matrix m);
std::size_t rank(const PrimeField& F, const Matrix& m);

/// Null space basis: one vector per non-pivot column, in column order.
std::vector<Vec> kernel_basis(const PrimeField& F, const Matrix& m);

/// Some x with m x = b, or nullopt when b is not in the column span.
std::optional<Vec> solve(const PrimeField& F, const Matrix& m, const Vec& b);

/// Incrementally grown subspace of F^n kept in fully reduced row echelon
/// form, so that reduce() returns a canonical representative of the coset.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : n_(ambient) {}

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return rows_.size(); }

  Vec reduce(const PrimeField& F, Vec v) const;
  bool contains(const PrimeField& F, const Vec& v) const { return is_zero(reduce(F, v)); }
  /// Adds v; returns false if v was already in the span.
  bool add(const PrimeField& F, const Vec& v);

  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  /// Coordinates that are not pivots: a basis of the quotient F^n / span.
  std::vector<std::size_t> free_positions() const;

 private:
  std::size_t n_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace homcx
