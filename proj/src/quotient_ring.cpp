#include "homcx/quotient_ring.hpp"

#include <algorithm>
#include <stdexcept>

namespace homcx {

bool HilbertSeries::operator==(const HilbertSeries& o) const {
  int lo = std::min(start, o.start), hi = std::max(end(), o.end());
  for (int d = lo; d < hi; ++d)
    if (at(d) != o.at(d)) return false;
  return true;
}

namespace {
HilbertSeries combine(const HilbertSeries& a, const HilbertSeries& b, long sign) {
  HilbertSeries r;
  if (a.coeffs.empty() && b.coeffs.empty()) return r;
  int lo = a.coeffs.empty() ? b.start : (b.coeffs.empty() ? a.start : std::min(a.start, b.start));
  int hi = std::max(a.end(), b.end());
  r.start = lo;
  for (int d = lo; d < hi; ++d) r.coeffs.push_back(a.at(d) + sign * b.at(d));
  return r;
}
}  // namespace

HilbertSeries operator+(const HilbertSeries& a, const HilbertSeries& b) { return combine(a, b, 1); }
HilbertSeries operator-(const HilbertSeries& a, const HilbertSeries& b) { return combine(a, b, -1); }

HilbertSeries shifted(const HilbertSeries& h, int a) {
  HilbertSeries r = h;
  r.start += a;
  return r;
}

QuotientRing::QuotientRing(PolynomialRing base, std::vector<Polynomial> ideal_gens)
    : base_(std::move(base)),
      gens_(std::move(ideal_gens)),
      tables_(std::make_unique<Tables>()),
      mutex_(std::make_unique<std::recursive_mutex>()) {
  gb_ = groebner(base_, gens_);
  for (const auto& g : gb_) {
    if (g.leading().mono.degree() == 0) throw std::invalid_argument("ideal is the whole ring");
    leads_.push_back(g.leading().mono);
  }
  // dimension of the monomial ideal of leading terms: the largest set of
  // variables containing the support of no leading monomial
  const std::size_t n = num_vars();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = std::none_of(leads_.begin(), leads_.end(), [&](const Monomial& m) {
      for (std::size_t i = 0; i < n; ++i)
        if (m[i] && !(mask & (1u << i))) return false;
      return true;
    });
    if (ok) krull_dim_ = std::max(krull_dim_, __builtin_popcount(mask));
  }
  if (krull_dim_ == 0) {
    int d = 0;
    while (dim(d) > 0) ++d;
    top_degree_ = d - 1;
  }
}

RingPtr make_ring(PolynomialRing base, std::vector<Polynomial> ideal_gens) {
  return std::make_shared<const QuotientRing>(std::move(base), std::move(ideal_gens));
}

Polynomial QuotientRing::normal_form(const Polynomial& f) const { return reduce_fully(base_, f, gb_); }

Polynomial QuotientRing::multiply(const Polynomial& a, const Polynomial& b) const {
  return normal_form(base_.mul(a, b));
}

void QuotientRing::ensure_degree(int d) const {
  if (tables_->basis.count(d)) return;
  std::vector<Monomial> std_monos;
  for (auto& m : monomials_of_degree(num_vars(), d)) {
    bool standard = std::none_of(leads_.begin(), leads_.end(), [&](const Monomial& l) { return l.divides(m); });
    if (standard) std_monos.push_back(std::move(m));
  }
  auto& idx = tables_->index[d];
  for (std::size_t i = 0; i < std_monos.size(); ++i) idx[std_monos[i].exponents()] = i;
  tables_->basis[d] = std::move(std_monos);
}

const std::vector<Monomial>& QuotientRing::basis(int d) const {
  static const std::vector<Monomial> empty;
  if (d < 0) return empty;
  std::lock_guard lock(*mutex_);
  ensure_degree(d);
  return tables_->basis.at(d);
}

HilbertSeries QuotientRing::hilbert_series(int max_degree) const {
  if (max_degree < 0) throw std::invalid_argument("max_degree must be >= 0");
  HilbertSeries h;
  for (int d = 0; d <= max_degree; ++d) h.coeffs.push_back(static_cast<long>(dim(d)));
  return h;
}

const Vec& QuotientRing::monomial_nf_coords(const Monomial& m) const {
  std::lock_guard lock(*mutex_);
  auto it = tables_->nf_cache.find(m.exponents());
  if (it != tables_->nf_cache.end()) return it->second;
  const int d = m.degree();
  ensure_degree(d);
  Vec v(tables_->basis.at(d).size(), 0);
  const auto& idx = tables_->index.at(d);
  auto nf = normal_form(base_.monomial(m));
  for (const auto& t : nf.terms()) v[idx.at(t.mono.exponents())] = t.coef;
  return tables_->nf_cache.emplace(m.exponents(), std::move(v)).first->second;
}

Vec QuotientRing::coords(const Polynomial& f, int d) const {
  const auto& F = field();
  Vec v(dim(d), 0);
  for (const auto& t : f.terms()) {
    if (t.mono.degree() != d) throw std::invalid_argument("coords: term of wrong degree");
    v = axpy(F, t.coef, monomial_nf_coords(t.mono), std::move(v));
  }
  return v;
}

Polynomial QuotientRing::from_coords(const Vec& v, int d) const {
  const auto& b = basis(d);
  if (v.size() != b.size()) throw std::invalid_argument("from_coords: length mismatch");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) terms.push_back({b[i], v[i]});
  return Polynomial::from_terms(field(), std::move(terms));
}

Matrix QuotientRing::multiplication_matrix(const Polynomial& f, int from, int to) const {
  const auto& F = field();
  const auto& src = basis(from);
  Matrix m(dim(to), src.size());
  if (f.is_zero() || src.empty() || m.rows() == 0) return m;
  if (f.homogeneous_degree() != to - from) throw std::invalid_argument("multiplication_matrix: degree mismatch");
  for (std::size_t j = 0; j < src.size(); ++j) {
    Vec col(m.rows(), 0);
    for (const auto& t : f.terms()) col = axpy(F, t.coef, monomial_nf_coords(t.mono * src[j]), std::move(col));
    m.set_column(j, col);
  }
  return m;
}

const Matrix& QuotientRing::variable_matrix(std::size_t var, int d) const {
  std::lock_guard lock(*mutex_);
  auto key = std::make_pair(var, d);
  auto it = tables_->var_mats.find(key);
  if (it != tables_->var_mats.end()) return it->second;
  auto m = multiplication_matrix(base_.variable(var), d, d + 1);
  return tables_->var_mats.emplace(key, std::move(m)).first->second;
}

bool QuotientRing::same_ring(const QuotientRing& o) const {
  return this == &o || (base_ == o.base_ && gb_ == o.gb_);
}

}  // namespace homcx
