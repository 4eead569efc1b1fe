#include "homcx/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace homcx {

Vec Matrix::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_column(std::size_t c, const Vec& v) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](auto x) { return x == 0; });
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw std::invalid_argument("column length mismatch");
    m.set_column(c, cols[c]);
  }
  return m;
}

Matrix multiply(const PrimeField& F, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      auto aik = a(i, k);
      if (!aik) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j)) c(i, j) = F.add(c(i, j), F.mul(aik, b(k, j)));
    }
  return c;
}

Vec apply(const PrimeField& F, const Matrix& a, const Vec& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
  Vec out(a.rows(), 0);
  for (std::size_t k = 0; k < a.cols(); ++k) {
    if (!v[k]) continue;
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (a(i, k)) out[i] = F.add(out[i], F.mul(a(i, k), v[k]));
  }
  return out;
}

Vec axpy(const PrimeField& F, PrimeField::Element alpha, const Vec& x, Vec y) {
  if (alpha == 0) return y;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) y[i] = F.add(y[i], F.mul(alpha, x[i]));
  return y;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
}

Echelon rref(const PrimeField& F, Matrix m) {
  Echelon e;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    auto inv = F.inv(m(row, col));
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = F.mul(m(row, c), inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      auto f = F.neg(m(r, col));
      for (std::size_t c = col; c < m.cols(); ++c)
        if (m(row, c)) m(r, c) = F.add(m(r, c), F.mul(f, m(row, c)));
    }
    e.pivots.push_back(col);
    ++row;
  }
  e.reduced = std::move(m);
  return e;
}

std::size_t rank(const PrimeField& F, const Matrix& m) { return rref(F, m).pivots.size(); }

std::vector<Vec> kernel_basis(const PrimeField& F, const Matrix& m) {
  auto e = rref(F, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t freecol = 0; freecol < m.cols(); ++freecol) {
    if (is_pivot[freecol]) continue;
    Vec v(m.cols(), 0);
    v[freecol] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = F.neg(e.reduced(r, freecol));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const PrimeField& F, const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  auto e = rref(F, std::move(aug));
  Vec x(m.cols(), 0);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == m.cols()) return std::nullopt;
    x[e.pivots[r]] = e.reduced(r, m.cols());
  }
  return x;
}

Vec Subspace::reduce(const PrimeField& F, Vec v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    auto c = v[pivots_[i]];
    if (c) v = axpy(F, F.neg(c), rows_[i], std::move(v));
  }
  return v;
}

bool Subspace::add(const PrimeField& F, const Vec& v) {
  if (v.size() != n_) throw std::invalid_argument("Subspace::add: dimension mismatch");
  Vec r = reduce(F, v);
  auto it = std::find_if(r.begin(), r.end(), [](auto x) { return x != 0; });
  if (it == r.end()) return false;
  std::size_t p = static_cast<std::size_t>(it - r.begin());
  auto inv = F.inv(r[p]);
  for (auto& x : r) x = F.mul(x, inv);
  for (auto& row : rows_)
    if (auto c = row[p]) row = axpy(F, F.neg(c), r, std::move(row));
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
  auto idx = pos - pivots_.begin();
  pivots_.insert(pos, p);
  rows_.insert(rows_.begin() + idx, std::move(r));
  return true;
}

std::vector<std::size_t> Subspace::free_positions() const {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (k < pivots_.size() && pivots_[k] == i) {
      ++k;
      continue;
    }
    out.push_back(i);
  }
  return out;
}

}  // namespace homcx
