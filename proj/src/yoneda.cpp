#include "homcx/yoneda.hpp"

#include <algorithm>
#include <sstream>

namespace homcx {

namespace {

std::shared_ptr<const Resolution> ensure_length(const std::shared_ptr<const Resolution>& r, int len) {
  if (r->length() >= len) return r;
  return std::make_shared<const Resolution>(extend(*r, len));
}

Shifts moved(Shifts s, int a) {
  for (auto& x : s) x += a;
  return s;
}

/// Largest internal degree where a module generated in degrees `gens` can
/// be nonzero; the cap D when the ring is not Artinian.
int top_of(const QuotientRing& A, const Shifts& gens, int max_degree) {
  if (gens.empty()) return 0;
  if (!A.is_artinian()) return max_degree;
  return *std::max_element(gens.begin(), gens.end()) + A.top_degree();
}

Vec vector_of(const Resolution& r, const GradedModule& N, int n, int s, const ModuleMap& f) {
  const auto& A = *N.ring();
  Vec out;
  auto fn = r.free_module(n);
  for (std::size_t l = 0; l < fn.size(); ++l) {
    int d = fn[l] + s;
    auto q = N.reduce(column_coords(A, N.generator_degrees(), f.column(l), d), d);
    out.insert(out.end(), q.begin(), q.end());
  }
  return out;
}

ModuleMap map_of(const Resolution& r, const GradedModule& N, int n, int s, const Vec& v) {
  const auto& A = *N.ring();
  const auto& g = N.generator_degrees();
  auto fn = r.free_module(n);
  ModuleMap f(N.ring(), fn, moved(g, -s));
  std::size_t at = 0;
  for (std::size_t l = 0; l < fn.size(); ++l) {
    int d = fn[l] + s;
    std::size_t k = N.dim(d);
    Vec q(v.begin() + static_cast<long>(at), v.begin() + static_cast<long>(at + k));
    at += k;
    if (k == 0) continue;
    auto col = column_from_coords(A, g, N.lift(q, d), d);
    for (std::size_t j = 0; j < col.size(); ++j)
      if (!col[j].is_zero()) f.set(j, l, col[j]);
  }
  return f;
}

Subspace coboundaries(const ExtClass& eta) {
  const auto& F = eta.target.ring()->field();
  Matrix delta = hom_coboundary(*eta.resolution, eta.target, eta.hdeg, eta.internal_degree);
  Subspace b(delta.rows());
  for (std::size_t c = 0; c < delta.cols(); ++c) b.add(F, delta.column(c));
  return b;
}

void require_same_cell(const ExtClass& a, const ExtClass& b) {
  if (a.hdeg != b.hdeg || a.internal_degree != b.internal_degree ||
      !(a.source().presentation() == b.source().presentation()) ||
      !(a.target.presentation() == b.target.presentation()))
    throw std::invalid_argument("Ext classes live in different cells");
}

}  // namespace

bool ExtClass::is_endomorphism() const {
  return resolution && target.presentation() == resolution->module.presentation();
}

ExtClass make_class(std::shared_ptr<const Resolution> r, GradedModule target, int n, int s, ModuleMap cocycle) {
  if (n < 1) throw std::invalid_argument("Ext class needs homological degree >= 1");
  ExtClass e;
  e.resolution = ensure_length(r, n + 1);
  e.target = std::move(target);
  e.hdeg = n;
  e.internal_degree = s;
  if (cocycle.source() != e.resolution->free_module(n) || cocycle.target() != moved(e.target.generator_degrees(), -s))
    throw std::invalid_argument("cocycle has the wrong shape");
  e.cocycle = std::move(cocycle);
  if (!satisfies_cocycle_condition(e)) throw std::invalid_argument("not a cocycle");
  return e;
}

ExtClass zero_class(std::shared_ptr<const Resolution> r, GradedModule target, int n, int s) {
  auto fn = ensure_length(r, n + 1)->free_module(n);
  auto g = moved(target.generator_degrees(), -s);
  auto e = make_class(r, std::move(target), n, s, ModuleMap(r->module.ring(), fn, g));
  e.normalized = true;
  return e;
}

bool satisfies_cocycle_condition(const ExtClass& eta) {
  const auto& r = *eta.resolution;
  if (r.length() < eta.hdeg + 1) throw std::invalid_argument("resolution too short for the cocycle condition");
  auto comp = compose(eta.cocycle, r.d(eta.hdeg + 1));
  const auto& g = eta.target.generator_degrees();
  for (std::size_t c = 0; c < comp.cols(); ++c) {
    int d = comp.source()[c] + eta.internal_degree;
    if (!is_zero(eta.target.reduce(column_coords(*eta.target.ring(), g, comp.column(c), d), d))) return false;
  }
  return true;
}

Vec cochain_vector(const ExtClass& eta) {
  return vector_of(*eta.resolution, eta.target, eta.hdeg, eta.internal_degree, eta.cocycle);
}

ExtClass normalize(const ExtClass& eta) {
  const auto& F = eta.target.ring()->field();
  ExtClass out = eta;
  auto v = coboundaries(eta).reduce(F, cochain_vector(eta));
  out.cocycle = map_of(*eta.resolution, eta.target, eta.hdeg, eta.internal_degree, v);
  out.normalized = true;
  return out;
}

bool is_zero_class(const ExtClass& eta) {
  return coboundaries(eta).contains(eta.target.ring()->field(), cochain_vector(eta));
}

bool same_class(const ExtClass& a, const ExtClass& b) {
  require_same_cell(a, b);
  const auto& F = a.target.ring()->field();
  auto va = cochain_vector(a), vb = cochain_vector(b);
  for (std::size_t i = 0; i < va.size(); ++i) va[i] = F.sub(va[i], vb[i]);
  return coboundaries(a).contains(F, va);
}

ExtClass linear_combination(const std::vector<ExtClass>& classes, const std::vector<PrimeField::Element>& coeffs) {
  if (classes.empty() || classes.size() != coeffs.size())
    throw std::invalid_argument("linear_combination: need one coefficient per class");
  const auto& F = classes[0].target.ring()->field();
  Vec acc(cochain_vector(classes[0]).size(), 0);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    require_same_cell(classes[0], classes[i]);
    acc = axpy(F, coeffs[i], cochain_vector(classes[i]), std::move(acc));
  }
  ExtClass out = classes[0];
  out.cocycle = map_of(*out.resolution, out.target, out.hdeg, out.internal_degree, acc);
  return normalize(out);
}

std::vector<ExtClass> ext_class_basis(Engine& engine, const GradedModule& m, int n) {
  auto r = engine.resolve(m, n + 1);
  return ext_class_basis(engine, r->module, r->module, n);
}

std::vector<ExtClass> ext_class_basis(Engine& engine, const GradedModule& m, const GradedModule& target_in, int n) {
  if (n < 1) throw std::invalid_argument("ext_class_basis: n must be >= 1");
  auto r = engine.resolve(m, n + 1);
  // Endomorphism classes must point at the resolved module itself.
  GradedModule N = minimalize(target_in);
  if (N.presentation() == r->module.presentation()) N = r->module;
  std::vector<ExtClass> out;
  auto fn = r->free_module(n);
  if (fn.empty() || N.num_generators() == 0) return out;
  const auto& A = *N.ring();
  const auto& F = A.field();
  const auto& g = N.generator_degrees();
  auto [blo, bhi] = std::minmax_element(fn.begin(), fn.end());
  int glo = *std::min_element(g.begin(), g.end());
  int top = top_of(A, g, engine.config().max_degree);
  for (int s = glo - *bhi; s <= top - *blo; ++s) {
    Matrix out_delta = hom_coboundary(*r, N, n + 1, s);
    if (out_delta.cols() == 0) continue;
    Matrix in_delta = hom_coboundary(*r, N, n, s);
    Subspace b(out_delta.cols());
    for (std::size_t c = 0; c < in_delta.cols(); ++c) b.add(F, in_delta.column(c));
    Subspace seen = b;
    for (const auto& z : kernel_basis(F, out_delta)) {
      if (!seen.add(F, z)) continue;
      ExtClass e;
      e.resolution = r;
      e.target = N;
      e.hdeg = n;
      e.internal_degree = s;
      e.cocycle = map_of(*r, N, n, s, b.reduce(F, z));
      e.normalized = true;
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<ModuleMap> lift_chain_map(const ExtClass& eta, int steps) {
  if (!eta.is_endomorphism()) throw std::invalid_argument("lift_chain_map needs a class in Ext(M, M)");
  const int n = eta.hdeg, s = eta.internal_degree;
  auto r = ensure_length(eta.resolution, n + steps);
  const auto& A = *eta.target.ring();
  const auto& F = A.field();
  std::vector<ModuleMap> g{eta.cocycle};
  for (int i = 1; i <= steps; ++i) {
    auto rhs = compose(g.back(), r->d(n + i));  // F_{n+i} -> F_{i-1}(s)
    auto di = shift_map(r->d(i), -s);           // F_i(s) -> F_{i-1}(s)
    ModuleMap gi(eta.target.ring(), r->free_module(n + i), di.source());
    for (std::size_t l = 0; l < rhs.cols(); ++l) {
      int c = rhs.source()[l];
      auto x = solve(F, di.degree_matrix(c), column_coords(A, rhs.target(), rhs.column(l), c));
      if (!x) throw std::logic_error("lift_chain_map: inconsistent lifting system at step " + std::to_string(i));
      auto col = column_from_coords(A, di.source(), *x, c);
      for (std::size_t j = 0; j < col.size(); ++j)
        if (!col[j].is_zero()) gi.set(j, l, col[j]);
    }
    g.push_back(std::move(gi));
  }
  return g;
}

ExtClass yoneda_product(const ExtClass& theta2, const ExtClass& theta1) {
  if (!theta1.is_endomorphism()) throw std::invalid_argument("yoneda_product: θ₁ must be an endomorphism class");
  if (!(theta1.source().presentation() == theta2.source().presentation()))
    throw std::invalid_argument("yoneda_product: classes are not composable");
  const int n2 = theta2.hdeg;
  auto lifts = lift_chain_map(theta1, n2);
  auto c = compose(shift_map(theta2.cocycle, -theta1.internal_degree), lifts.back());
  auto r = ensure_length(theta1.resolution, theta1.hdeg + n2 + 1);
  return normalize(
      make_class(r, theta2.target, theta1.hdeg + n2, theta1.internal_degree + theta2.internal_degree, c));
}

ExtClass power(const ExtClass& eta, int t) {
  if (t < 1) throw std::invalid_argument("power: t must be >= 1");
  ExtClass p = eta;
  for (int k = 2; k <= t; ++k) p = yoneda_product(p, eta);
  return p;
}

PushoutResult pushout(const ExtClass& eta, int max_degree) {
  if (!satisfies_cocycle_condition(eta)) throw std::invalid_argument("not a cocycle");
  const auto& r = *eta.resolution;
  const auto& ring = eta.target.ring();
  const auto& A = *ring;
  const int n = eta.hdeg, s = eta.internal_degree;
  const auto& Y = eta.target;
  const auto& yg = Y.generator_degrees();
  const std::size_t ny = yg.size();
  Shifts lower = moved(r.free_module(n - 1), s);
  Shifts gens = yg;
  gens.insert(gens.end(), lower.begin(), lower.end());

  const auto& yrel = Y.presentation();
  const auto& dn = r.d(n);
  Shifts src = yrel.source();
  for (int b : dn.source()) src.push_back(b + s);
  ModuleMap rel(ring, src, gens);
  for (std::size_t c = 0; c < yrel.cols(); ++c)
    for (std::size_t j = 0; j < ny; ++j)
      if (!yrel(j, c).is_zero()) rel.set(j, c, yrel(j, c));
  for (std::size_t e = 0; e < dn.cols(); ++e) {
    std::size_t c = yrel.cols() + e;
    for (std::size_t j = 0; j < ny; ++j)
      if (!eta.cocycle(j, e).is_zero()) rel.set(j, c, eta.cocycle(j, e));
    for (std::size_t j = 0; j < dn.rows(); ++j)
      if (!dn(j, e).is_zero()) rel.set(ny + j, c, A.poly().neg(dn(j, e)));
  }

  PushoutResult out;
  out.K_raw = GradedModule(rel);
  out.quotient = shift(omega(r, n - 1), s);
  ModuleMap incl(ring, yg, gens), proj(ring, gens, lower);
  for (std::size_t j = 0; j < ny; ++j) incl.set(j, j, A.poly().constant(1));
  for (std::size_t j = 0; j < lower.size(); ++j) proj.set(j, ny + j, A.poly().constant(1));

  // Injective + surjective + zero composite + additive Hilbert series
  // together give exactness in every degree of the window.
  std::ostringstream why;
  out.window_lo = gens.empty() ? 0 : std::min(0, *std::min_element(gens.begin(), gens.end()));
  out.window_hi = top_of(A, gens, max_degree);
  bool ok = is_module_map(incl, Y, out.K_raw) && is_module_map(proj, out.K_raw, out.quotient);
  if (!ok) why << "inclusion or projection is not well defined; ";
  if (!compose(proj, incl).is_zero()) {
    ok = false;
    why << "projection ∘ inclusion != 0; ";
  }
  if (ok && !is_injective_on(incl, Y, out.K_raw, out.window_lo, out.window_hi)) {
    ok = false;
    why << "inclusion not injective; ";
  }
  auto hk = out.K_raw.hilbert_window(out.window_lo, out.window_hi);
  auto hsum = Y.hilbert_window(out.window_lo, out.window_hi) +
              out.quotient.hilbert_window(out.window_lo, out.window_hi);
  if (!(hk == hsum)) {
    ok = false;
    why << "Hilbert series not additive; ";
  }
  out.ses_verified = ok;
  out.diagnostic = ok ? "exact" : why.str();

  auto mt = minimalize_tracked(out.K_raw);
  out.K = mt.module;
  out.inclusion = compose(mt.to_minimal, incl);
  out.projection = compose(proj, mt.from_minimal);
  return out;
}

ProductBookkeepingReport product_bookkeeping(Engine& engine, const ExtClass& theta1, const ExtClass& theta2) {
  const int D = engine.config().max_degree;
  auto p1 = pushout(theta1, D);
  auto p2 = pushout(theta2, D);
  auto p21 = pushout(yoneda_product(theta2, theta1), D);
  auto o = shift(engine.omega(p1.K, theta2.hdeg), theta2.internal_degree);
  const auto& A = *theta1.target.ring();

  Shifts all;
  for (const auto* m : {&o, &p2.K, &p21.K})
    all.insert(all.end(), m->generator_degrees().begin(), m->generator_degrees().end());
  ProductBookkeepingReport rep;
  if (all.empty()) {
    rep.consistent = true;
    rep.diagnostic = "all modules vanish";
    return rep;
  }
  int lo = std::min(0, *std::min_element(all.begin(), all.end()));
  int hi = top_of(A, all, D);
  int ext = A.is_artinian() ? hi + A.top_degree() : hi;
  rep.omega_k1 = o.hilbert_window(lo, ext);
  rep.k2 = p2.K.hilbert_window(lo, ext);
  rep.k21 = p21.K.hilbert_window(lo, ext);
  rep.free_part = rep.omega_k1 + rep.k2 - rep.k21;

  // Peel off A(-a)^{r_a} degree by degree; a free module needs r_a >= 0,
  // and over an Artinian ring nothing may start above the window top.
  std::ostringstream why;
  rep.consistent = true;
  std::map<int, long> r;
  for (int a = lo; a <= ext; ++a) {
    long v = rep.free_part.at(a);
    for (const auto& [b, rb] : r) v -= rb * static_cast<long>(A.dim(a - b));
    if (v == 0) continue;
    r[a] = v;
    if (v < 0 || (A.is_artinian() && a > hi)) {
      rep.consistent = false;
      why << "rank " << v << " at degree " << a << "; ";
    }
  }
  rep.free_ranks = r;
  rep.diagnostic = rep.consistent ? "difference is the series of a free module" : why.str();
  return rep;
}

}  // namespace homcx
