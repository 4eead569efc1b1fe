#include "homcx/module_map.hpp"

#include <stdexcept>

namespace homcx {

FreeDegreeLayout free_layout(const QuotientRing& A, const Shifts& shifts, int d) {
  FreeDegreeLayout l;
  l.offsets.reserve(shifts.size());
  for (int s : shifts) {
    l.offsets.push_back(l.total);
    l.total += A.dim(d - s);
  }
  return l;
}

Vec column_coords(const QuotientRing& A, const Shifts& shifts, const PolyColumn& col, int d) {
  auto lay = free_layout(A, shifts, d);
  Vec v(lay.total, 0);
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    if (col[i].is_zero()) continue;
    auto c = A.coords(col[i], d - shifts[i]);
    std::copy(c.begin(), c.end(), v.begin() + static_cast<long>(lay.offsets[i]));
  }
  return v;
}

PolyColumn column_from_coords(const QuotientRing& A, const Shifts& shifts, const Vec& v, int d) {
  auto lay = free_layout(A, shifts, d);
  if (v.size() != lay.total) throw std::invalid_argument("column_from_coords: length mismatch");
  PolyColumn col;
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    auto n = A.dim(d - shifts[i]);
    Vec block(v.begin() + static_cast<long>(lay.offsets[i]), v.begin() + static_cast<long>(lay.offsets[i] + n));
    col.push_back(n ? A.from_coords(block, d - shifts[i]) : Polynomial{});
  }
  return col;
}

Vec multiply_by_variable(const QuotientRing& A, const Shifts& shifts, std::size_t var, int d, const Vec& v) {
  auto src = free_layout(A, shifts, d);
  auto dst = free_layout(A, shifts, d + 1);
  Vec out(dst.total, 0);
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    auto n = A.dim(d - shifts[i]);
    auto m = A.dim(d + 1 - shifts[i]);
    if (!n || !m) continue;
    const Matrix& X = A.variable_matrix(var, d - shifts[i]);
    Vec block(v.begin() + static_cast<long>(src.offsets[i]), v.begin() + static_cast<long>(src.offsets[i] + n));
    auto img = apply(A.field(), X, block);
    std::copy(img.begin(), img.end(), out.begin() + static_cast<long>(dst.offsets[i]));
  }
  return out;
}

ModuleMap::ModuleMap(RingPtr ring, Shifts source, Shifts target)
    : ring_(std::move(ring)), source_(std::move(source)), target_(std::move(target)),
      entries_(source_.size() * target_.size()) {}

ModuleMap::ModuleMap(RingPtr ring, Shifts source, Shifts target, std::vector<Polynomial> entries)
    : ring_(std::move(ring)), source_(std::move(source)), target_(std::move(target)), entries_(std::move(entries)) {
  if (entries_.size() != source_.size() * target_.size()) throw std::invalid_argument("ModuleMap: entry count");
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j) {
      auto& e = entries_[i * cols() + j];
      e = ring_->normal_form(e);
      if (e.is_zero()) continue;
      auto deg = e.homogeneous_degree();
      if (!deg || *deg != source_[j] - target_[i])
        throw std::invalid_argument("ModuleMap: entry (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") has the wrong degree");
    }
}

ModuleMap ModuleMap::identity(RingPtr ring, const Shifts& shifts) {
  ModuleMap m(ring, shifts, shifts);
  for (std::size_t i = 0; i < shifts.size(); ++i) m.entries_[i * shifts.size() + i] = ring->poly().constant(1);
  return m;
}

ModuleMap ModuleMap::from_columns(RingPtr ring, Shifts target, const std::vector<PolyColumn>& cols) {
  Shifts source;
  std::vector<Polynomial> entries(target.size() * cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != target.size()) throw std::invalid_argument("column length mismatch");
    std::optional<int> deg;
    for (std::size_t i = 0; i < target.size(); ++i) {
      auto e = ring->normal_form(cols[j][i]);
      if (e.is_zero()) continue;
      auto hd = e.homogeneous_degree();
      if (!hd) throw std::invalid_argument("column " + std::to_string(j) + " has an inhomogeneous entry");
      int cd = *hd + target[i];
      if (deg && *deg != cd) throw std::invalid_argument("column " + std::to_string(j) + " is not homogeneous");
      deg = cd;
      entries[i * cols.size() + j] = std::move(e);
    }
    if (!deg) throw std::invalid_argument("column " + std::to_string(j) + " is zero");
    source.push_back(*deg);
  }
  return ModuleMap(std::move(ring), std::move(source), std::move(target), std::move(entries));
}

void ModuleMap::set(std::size_t i, std::size_t j, Polynomial p) { entries_.at(i * cols() + j) = std::move(p); }

PolyColumn ModuleMap::column(std::size_t j) const {
  PolyColumn c;
  for (std::size_t i = 0; i < rows(); ++i) c.push_back((*this)(i, j));
  return c;
}

Matrix ModuleMap::degree_matrix(int d) const {
  const auto& A = *ring_;
  auto src = free_layout(A, source_, d);
  auto dst = free_layout(A, target_, d);
  Matrix m(dst.total, src.total);
  for (std::size_t j = 0; j < cols(); ++j) {
    int from = d - source_[j];
    if (A.dim(from) == 0) continue;
    for (std::size_t i = 0; i < rows(); ++i) {
      const auto& e = (*this)(i, j);
      int to = d - target_[i];
      if (e.is_zero() || A.dim(to) == 0) continue;
      auto block = A.multiplication_matrix(e, from, to);
      for (std::size_t r = 0; r < block.rows(); ++r)
        for (std::size_t c = 0; c < block.cols(); ++c) m(dst.offsets[i] + r, src.offsets[j] + c) = block(r, c);
    }
  }
  return m;
}

bool ModuleMap::is_zero() const {
  for (const auto& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

bool ModuleMap::has_unit_entry() const {
  for (const auto& e : entries_)
    if (e.is_unit()) return true;
  return false;
}

ModuleMap ModuleMap::sub_columns(const std::vector<std::size_t>& keep) const {
  Shifts src;
  for (auto j : keep) src.push_back(source_.at(j));
  ModuleMap m(ring_, src, target_);
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t k = 0; k < keep.size(); ++k) m.set(i, k, (*this)(i, keep[k]));
  return m;
}

ModuleMap compose(const ModuleMap& outer, const ModuleMap& inner) {
  if (outer.source() != inner.target()) throw std::invalid_argument("compose: incompatible maps");
  const auto& A = *outer.ring();
  const auto& P = A.poly();
  ModuleMap m(outer.ring(), inner.source(), outer.target());
  for (std::size_t i = 0; i < outer.rows(); ++i)
    for (std::size_t j = 0; j < inner.cols(); ++j) {
      Polynomial acc;
      for (std::size_t k = 0; k < outer.cols(); ++k) {
        if (outer(i, k).is_zero() || inner(k, j).is_zero()) continue;
        acc = P.add(acc, P.mul(outer(i, k), inner(k, j)));
      }
      m.set(i, j, A.normal_form(acc));
    }
  return m;
}

ModuleMap hconcat(const ModuleMap& a, const ModuleMap& b) {
  if (a.target() != b.target()) throw std::invalid_argument("hconcat: targets differ");
  Shifts src = a.source();
  src.insert(src.end(), b.source().begin(), b.source().end());
  ModuleMap m(a.ring(), src, a.target());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m.set(i, j, a(i, j));
    for (std::size_t j = 0; j < b.cols(); ++j) m.set(i, a.cols() + j, b(i, j));
  }
  return m;
}

ModuleMap vconcat(const ModuleMap& a, const ModuleMap& b) {
  if (a.source() != b.source()) throw std::invalid_argument("vconcat: sources differ");
  Shifts tgt = a.target();
  tgt.insert(tgt.end(), b.target().begin(), b.target().end());
  ModuleMap m(a.ring(), a.source(), tgt);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) m.set(i, j, a(i, j));
    for (std::size_t i = 0; i < b.rows(); ++i) m.set(a.rows() + i, j, b(i, j));
  }
  return m;
}

ModuleMap block_sum(const ModuleMap& a, const ModuleMap& b) {
  Shifts src = a.source(), tgt = a.target();
  src.insert(src.end(), b.source().begin(), b.source().end());
  tgt.insert(tgt.end(), b.target().begin(), b.target().end());
  ModuleMap m(a.ring(), src, tgt);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m.set(i, j, a(i, j));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m.set(a.rows() + i, a.cols() + j, b(i, j));
  return m;
}

ModuleMap negate(const ModuleMap& m) { return scale(m, m.ring()->field().neg(1)); }

ModuleMap scale(const ModuleMap& m, PrimeField::Element c) {
  ModuleMap r(m.ring(), m.source(), m.target());
  const auto& P = m.ring()->poly();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r.set(i, j, P.scale(m(i, j), c));
  return r;
}

ModuleMap add(const ModuleMap& a, const ModuleMap& b) {
  if (a.source() != b.source() || a.target() != b.target()) throw std::invalid_argument("add: shapes differ");
  ModuleMap r(a.ring(), a.source(), a.target());
  const auto& P = a.ring()->poly();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.set(i, j, P.add(a(i, j), b(i, j)));
  return r;
}

ModuleMap shift_map(const ModuleMap& m, int a) {
  Shifts src = m.source(), tgt = m.target();
  for (auto& s : src) s += a;
  for (auto& s : tgt) s += a;
  return ModuleMap(m.ring(), src, tgt, m.entries());
}

SubmoduleSpan::SubmoduleSpan(RingPtr ring, Shifts shifts) : ring_(std::move(ring)), shifts_(std::move(shifts)), degree_(0) {}

const Subspace& SubmoduleSpan::piece(int d) {
  const auto& A = *ring_;
  if (!started_) {
    started_ = true;
    degree_ = d;
    current_ = Subspace(free_layout(A, shifts_, d).total);
    return current_;
  }
  if (d < degree_) throw std::logic_error("SubmoduleSpan: degrees must be requested in increasing order");
  while (degree_ < d) {
    Subspace next(free_layout(A, shifts_, degree_ + 1).total);
    for (const auto& b : current_.basis())
      for (std::size_t v = 0; v < A.num_vars(); ++v) next.add(A.field(), multiply_by_variable(A, shifts_, v, degree_, b));
    current_ = std::move(next);
    ++degree_;
  }
  return current_;
}

bool SubmoduleSpan::add_generator(int d, const Vec& v) {
  piece(d);
  return current_.add(ring_->field(), v);
}

}  // namespace homcx
