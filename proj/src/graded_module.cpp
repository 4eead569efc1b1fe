#include "homcx/graded_module.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace homcx {

GradedModule::GradedModule(ModuleMap presentation) : presentation_(std::move(presentation)) {}

GradedModule GradedModule::free(RingPtr ring, Shifts shifts) {
  return GradedModule(ModuleMap(std::move(ring), {}, std::move(shifts)));
}

GradedModule GradedModule::residue_field(RingPtr ring, int at) {
  std::vector<PolyColumn> cols;
  for (std::size_t v = 0; v < ring->num_vars(); ++v) cols.push_back({ring->poly().variable(v)});
  return GradedModule(ModuleMap::from_columns(ring, {at}, cols));
}

GradedModule GradedModule::cyclic(RingPtr ring, const std::vector<Polynomial>& ideal) {
  std::vector<PolyColumn> cols;
  for (const auto& f : ideal) {
    auto nf = ring->normal_form(f);
    if (!nf.is_zero()) cols.push_back({nf});
  }
  return GradedModule(ModuleMap::from_columns(ring, {0}, cols));
}

std::optional<int> GradedModule::min_generator_degree() const {
  const auto& g = generator_degrees();
  if (g.empty()) return std::nullopt;
  return *std::min_element(g.begin(), g.end());
}

const Subspace& GradedModule::relations(int d) const {
  std::lock_guard lock(cache_->mu);
  auto it = cache_->relations.find(d);
  if (it != cache_->relations.end()) return it->second;
  const auto& F = ring()->field();
  auto mat = presentation_.degree_matrix(d);
  Subspace s(mat.rows());
  for (std::size_t c = 0; c < mat.cols(); ++c) s.add(F, mat.column(c));
  return cache_->relations.emplace(d, std::move(s)).first->second;
}

std::size_t GradedModule::dim(int d) const {
  const auto& r = relations(d);
  return r.ambient() - r.dim();
}

Vec GradedModule::reduce(const Vec& v, int d) const {
  const auto& r = relations(d);
  auto red = r.reduce(ring()->field(), v);
  Vec q;
  for (auto p : r.free_positions()) q.push_back(red[p]);
  return q;
}

Vec GradedModule::lift(const Vec& q, int d) const {
  const auto& r = relations(d);
  auto pos = r.free_positions();
  if (q.size() != pos.size()) throw std::invalid_argument("lift: wrong quotient dimension");
  Vec v(r.ambient(), 0);
  for (std::size_t i = 0; i < pos.size(); ++i) v[pos[i]] = q[i];
  return v;
}

bool GradedModule::is_zero_element(const PolyColumn& x, int d) const {
  return homcx::is_zero(reduce(column_coords(*ring(), generator_degrees(), x, d), d));
}

Matrix GradedModule::action_matrix(const Polynomial& f, int from, int to) const {
  const auto& A = *ring();
  const auto& F = A.field();
  const auto& gens = generator_degrees();
  std::size_t nsrc = dim(from), ndst = dim(to);
  Matrix out(ndst, nsrc);
  if (nsrc == 0 || ndst == 0 || f.is_zero()) return out;
  auto src = free_layout(A, gens, from);
  auto dst = free_layout(A, gens, to);
  std::vector<Matrix> blocks;
  for (int g : gens)
    blocks.push_back(from - g < 0 ? Matrix(A.dim(to - g), 0) : A.multiplication_matrix(f, from - g, to - g));
  for (std::size_t c = 0; c < nsrc; ++c) {
    Vec e(nsrc, 0);
    e[c] = 1;
    auto v = lift(e, from);
    Vec w(dst.total, 0);
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const auto& b = blocks[k];
      for (std::size_t r = 0; r < b.rows(); ++r) {
        std::uint64_t acc = 0;
        for (std::size_t s = 0; s < b.cols(); ++s) acc += static_cast<std::uint64_t>(b(r, s)) * v[src.offsets[k] + s] % F.characteristic();
        w[dst.offsets[k] + r] = static_cast<PrimeField::Element>(acc % F.characteristic());
      }
    }
    out.set_column(c, reduce(w, to));
  }
  return out;
}

HilbertSeries GradedModule::hilbert_window(int lo, int hi) const {
  HilbertSeries h;
  h.start = lo;
  for (int d = lo; d <= hi; ++d) h.coeffs.push_back(static_cast<long>(dim(d)));
  return h;
}

HilbertSeries GradedModule::hilbert_function(int max_degree) const {
  int lo = std::min(0, min_generator_degree().value_or(0));
  return hilbert_window(lo, std::max(max_degree, lo));
}

bool GradedModule::is_zero() const {
  const auto& A = *ring();
  for (std::size_t j = 0; j < num_generators(); ++j) {
    PolyColumn e(num_generators());
    e[j] = A.poly().constant(1);
    if (!is_zero_element(e, generator_degrees()[j])) return false;
  }
  return true;
}

bool GradedModule::is_minimal() const {
  if (presentation_.has_unit_entry()) return false;
  auto m = minimalize(*this);
  return m.presentation().cols() == presentation_.cols() && m.num_generators() == num_generators();
}

namespace {

using PolyMatrix = std::vector<std::vector<Polynomial>>;  // [row][col]

PolyMatrix to_rows(const ModuleMap& m) {
  PolyMatrix r(m.rows(), std::vector<Polynomial>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
  return r;
}

ModuleMap from_rows(const RingPtr& ring, const Shifts& src, const Shifts& tgt, const PolyMatrix& rows) {
  std::vector<Polynomial> e;
  for (const auto& row : rows)
    for (const auto& p : row) e.push_back(p);
  return ModuleMap(ring, src, tgt, std::move(e));
}

/// Keeps the columns of `rel` that are not in the submodule generated by
/// lower-degree or earlier same-degree columns.
std::vector<std::size_t> minimal_columns(const ModuleMap& rel) {
  const auto& A = *rel.ring();
  std::vector<std::size_t> order(rel.cols());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rel.source()[a] < rel.source()[b]; });
  SubmoduleSpan span(rel.ring(), rel.target());
  std::vector<std::size_t> keep;
  for (auto j : order) {
    int d = rel.source()[j];
    auto v = column_coords(A, rel.target(), rel.column(j), d);
    if (is_zero(v)) continue;
    if (span.add_generator(d, v)) keep.push_back(j);
  }
  std::sort(keep.begin(), keep.end());
  return keep;
}

}  // namespace

Minimalized minimalize_tracked(const GradedModule& m) {
  const auto& ring = m.ring();
  const auto& A = *ring;
  const auto& F = A.field();
  const auto& P = A.poly();
  Shifts gens = m.generator_degrees();
  Shifts rel_deg = m.presentation().source();
  PolyMatrix rel = to_rows(m.presentation());
  // to_min: rows = current generators, cols = original generators
  PolyMatrix to_min = to_rows(ModuleMap::identity(ring, gens));
  std::vector<std::size_t> alive(gens.size());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;

  for (;;) {
    std::optional<std::pair<std::size_t, std::size_t>> unit;
    for (std::size_t j = 0; j < rel_deg.size() && !unit; ++j)
      for (std::size_t i = 0; i < gens.size() && !unit; ++i)
        if (rel[i][j].is_unit()) unit = {i, j};
    if (!unit) break;
    auto [pi, pj] = *unit;
    // e_pi = -(1/c) * sum_{l != pi} rel[l][pj] e_l
    auto c_inv = F.inv(rel[pi][pj].leading().coef);
    std::vector<Polynomial> subst(gens.size());
    for (std::size_t l = 0; l < gens.size(); ++l)
      if (l != pi) subst[l] = P.scale(rel[l][pj], F.neg(c_inv));
    auto substitute = [&](PolyMatrix& mat) {
      std::size_t ncols = mat.empty() ? 0 : mat[0].size();
      for (std::size_t k = 0; k < ncols; ++k) {
        const Polynomial coef = mat[pi][k];
        if (coef.is_zero()) continue;
        for (std::size_t l = 0; l < gens.size(); ++l)
          if (l != pi && !subst[l].is_zero()) mat[l][k] = A.normal_form(P.add(mat[l][k], P.mul(coef, subst[l])));
      }
      mat.erase(mat.begin() + static_cast<long>(pi));
    };
    substitute(rel);
    substitute(to_min);
    for (auto& row : rel) row.erase(row.begin() + static_cast<long>(pj));
    rel_deg.erase(rel_deg.begin() + static_cast<long>(pj));
    gens.erase(gens.begin() + static_cast<long>(pi));
    alive.erase(alive.begin() + static_cast<long>(pi));
  }

  ModuleMap reduced = from_rows(ring, rel_deg, gens, rel);
  auto keep = minimal_columns(reduced);
  ModuleMap pres = reduced.sub_columns(keep);

  Minimalized out;
  out.module = GradedModule(pres);
  out.to_minimal = from_rows(ring, m.generator_degrees(), gens, to_min);
  out.from_minimal = ModuleMap(ring, gens, m.generator_degrees());
  for (std::size_t k = 0; k < alive.size(); ++k) out.from_minimal.set(alive[k], k, P.constant(1));
  return out;
}

GradedModule minimalize(const GradedModule& m) { return minimalize_tracked(m).module; }

GradedModule direct_sum(const GradedModule& m, const GradedModule& n) {
  if (!m.ring()->same_ring(*n.ring())) throw std::invalid_argument("direct_sum: modules over different rings");
  return GradedModule(block_sum(m.presentation(), n.presentation()));
}

GradedModule shift(const GradedModule& m, int a) { return GradedModule(shift_map(m.presentation(), a)); }

GradedModule tensor(const GradedModule& m, const GradedModule& n) {
  const auto& ring = m.ring();
  const auto& gm = m.generator_degrees();
  const auto& gn = n.generator_degrees();
  Shifts gens;
  for (int a : gm)
    for (int b : gn) gens.push_back(a + b);
  auto idx = [&](std::size_t i, std::size_t j) { return i * gn.size() + j; };
  std::vector<PolyColumn> cols;
  const auto& rm = m.presentation();
  const auto& rn = n.presentation();
  for (std::size_t c = 0; c < rm.cols(); ++c)
    for (std::size_t j = 0; j < gn.size(); ++j) {
      PolyColumn col(gens.size());
      for (std::size_t i = 0; i < gm.size(); ++i) col[idx(i, j)] = rm(i, c);
      cols.push_back(col);
    }
  for (std::size_t c = 0; c < rn.cols(); ++c)
    for (std::size_t i = 0; i < gm.size(); ++i) {
      PolyColumn col(gens.size());
      for (std::size_t j = 0; j < gn.size(); ++j) col[idx(i, j)] = rn(j, c);
      cols.push_back(col);
    }
  std::vector<PolyColumn> nonzero;
  for (auto& c : cols)
    if (std::any_of(c.begin(), c.end(), [](const Polynomial& p) { return !p.is_zero(); })) nonzero.push_back(c);
  return GradedModule(ModuleMap::from_columns(ring, gens, nonzero));
}

std::vector<ModuleMap> hom_degree_zero(const GradedModule& m, const GradedModule& n) {
  const auto& ring = m.ring();
  const auto& A = *ring;
  const auto& F = A.field();
  const auto& P = A.poly();
  const auto& gm = m.generator_degrees();
  const auto& gn = n.generator_degrees();
  const auto& rel = m.presentation();

  struct Unknown {
    std::size_t gen;
    PolyColumn value;
  };
  std::vector<Unknown> unknowns;
  for (std::size_t j = 0; j < gm.size(); ++j) {
    auto dj = n.dim(gm[j]);
    for (std::size_t q = 0; q < dj; ++q) {
      Vec e(dj, 0);
      e[q] = 1;
      unknowns.push_back({j, column_from_coords(A, gn, n.lift(e, gm[j]), gm[j])});
    }
  }
  // constraint rows: each relation's image, reduced in N
  std::vector<Vec> cols(unknowns.size());
  for (std::size_t r = 0; r < rel.cols(); ++r) {
    int c = rel.source()[r];
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      const auto& coef = rel(unknowns[u].gen, r);
      PolyColumn img(gn.size());
      if (!coef.is_zero())
        for (std::size_t i = 0; i < gn.size(); ++i) img[i] = A.normal_form(P.mul(coef, unknowns[u].value[i]));
      auto red = n.reduce(column_coords(A, gn, img, c), c);
      cols[u].insert(cols[u].end(), red.begin(), red.end());
    }
  }
  std::size_t nrows = cols.empty() ? 0 : cols[0].size();
  auto ker = kernel_basis(F, Matrix::from_columns(nrows, cols));
  std::vector<ModuleMap> out;
  for (const auto& v : ker) {
    ModuleMap f(ring, gm, gn);
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      if (!v[u]) continue;
      auto j = unknowns[u].gen;
      for (std::size_t i = 0; i < gn.size(); ++i) f.set(i, j, P.add(f(i, j), P.scale(unknowns[u].value[i], v[u])));
    }
    out.push_back(std::move(f));
  }
  return out;
}

bool is_module_map(const ModuleMap& f, const GradedModule& m, const GradedModule& n) {
  auto img = compose(f, m.presentation());
  for (std::size_t c = 0; c < img.cols(); ++c)
    if (!n.is_zero_element(img.column(c), img.source()[c])) return false;
  return true;
}

bool is_injective_on(const ModuleMap& f, const GradedModule& m, const GradedModule& n, int lo, int hi) {
  const auto& F = m.ring()->field();
  for (int d = lo; d <= hi; ++d) {
    std::size_t dm = m.dim(d);
    if (dm == 0) continue;
    Matrix fd = f.degree_matrix(d);
    Matrix img(n.dim(d), dm);
    for (std::size_t c = 0; c < dm; ++c) {
      Vec e(dm, 0);
      e[c] = 1;
      img.set_column(c, n.reduce(apply(F, fd, m.lift(e, d)), d));
    }
    if (rank(F, img) != dm) return false;
  }
  return true;
}

bool maps_agree(const ModuleMap& f, const ModuleMap& g, const GradedModule& n) {
  auto diff = add(f, negate(g));
  for (std::size_t c = 0; c < diff.cols(); ++c)
    if (!n.is_zero_element(diff.column(c), diff.source()[c])) return false;
  return true;
}

std::string IsoResult::diagnostic() const {
  switch (outcome) {
    case IsoOutcome::Isomorphic: return "isomorphic (witness verified)";
    case IsoOutcome::HilbertDiffers: return "not isomorphic: Hilbert functions differ";
    case IsoOutcome::GeneratorDegreesDiffer: return "not isomorphic: generator degrees differ";
    case IsoOutcome::SearchFailed: return "not proven isomorphic: no invertible map found in " + std::to_string(trials) + " trials";
  }
  return {};
}

namespace {

/// Generators modulo m: the constant part of f must be invertible.
bool invertible_mod_maximal_ideal(const ModuleMap& f) {
  const auto& F = f.ring()->field();
  Matrix c(f.rows(), f.cols());
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.cols(); ++j)
      if (f(i, j).is_unit()) c(i, j) = f(i, j).leading().coef;
  return f.rows() == f.cols() && rank(F, c) == f.rows();
}

/// Solves for g in span(basis) with g ∘ f ≡ id on M's generators.
std::optional<ModuleMap> left_inverse(const ModuleMap& f, const std::vector<ModuleMap>& basis, const GradedModule& m) {
  const auto& A = *m.ring();
  const auto& gm = m.generator_degrees();
  std::vector<Vec> cols;
  for (const auto& h : basis) {
    auto comp = compose(h, f);
    Vec col;
    for (std::size_t j = 0; j < gm.size(); ++j) {
      auto red = m.reduce(column_coords(A, gm, comp.column(j), gm[j]), gm[j]);
      col.insert(col.end(), red.begin(), red.end());
    }
    cols.push_back(std::move(col));
  }
  Vec rhs;
  auto id = ModuleMap::identity(m.ring(), gm);
  for (std::size_t j = 0; j < gm.size(); ++j) {
    auto red = m.reduce(column_coords(A, gm, id.column(j), gm[j]), gm[j]);
    rhs.insert(rhs.end(), red.begin(), red.end());
  }
  auto x = solve(A.field(), Matrix::from_columns(rhs.size(), cols), rhs);
  if (!x) return std::nullopt;
  ModuleMap g = scale(basis.empty() ? ModuleMap(m.ring(), f.target(), f.source()) : basis[0], 0);
  for (std::size_t k = 0; k < basis.size(); ++k)
    if ((*x)[k]) g = add(g, scale(basis[k], (*x)[k]));
  return g;
}

}  // namespace

IsoResult is_isomorphic(const GradedModule& m, const GradedModule& n, std::uint64_t seed, int trials, int window) {
  IsoResult res;
  const auto& A = *m.ring();
  const auto& F = A.field();
  int lo = std::min(m.min_generator_degree().value_or(0), n.min_generator_degree().value_or(0));
  if (!(m.hilbert_window(lo, lo + window) == n.hilbert_window(lo, lo + window))) {
    res.outcome = IsoOutcome::HilbertDiffers;
    return res;
  }
  auto gm = m.generator_degrees(), gn = n.generator_degrees();
  std::sort(gm.begin(), gm.end());
  std::sort(gn.begin(), gn.end());
  if (gm != gn) {
    res.outcome = IsoOutcome::GeneratorDegreesDiffer;
    return res;
  }
  if (gm.empty()) {
    res.outcome = IsoOutcome::Isomorphic;
    res.witness = ModuleMap(m.ring(), {}, {});
    res.inverse = res.witness;
    return res;
  }
  auto hom_mn = hom_degree_zero(m, n);
  auto hom_nm = hom_degree_zero(n, m);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> coef(0, F.characteristic() - 1);
  for (int t = 0; t < trials; ++t) {
    res.trials = t + 1;
    if (hom_mn.empty()) break;
    ModuleMap f = scale(hom_mn[0], 0);
    for (const auto& h : hom_mn) f = add(f, scale(h, coef(rng)));
    if (!invertible_mod_maximal_ideal(f)) continue;
    auto g = left_inverse(f, hom_nm, m);
    if (!g) continue;
    // two-sided: f ∘ g ≡ id on N as well
    if (!maps_agree(compose(f, *g), ModuleMap::identity(n.ring(), n.generator_degrees()), n)) continue;
    res.outcome = IsoOutcome::Isomorphic;
    res.witness = f;
    res.inverse = *g;
    return res;
  }
  res.outcome = IsoOutcome::SearchFailed;
  return res;
}

}  // namespace homcx
