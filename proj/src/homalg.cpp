#include "homcx/homalg.hpp"

#include <algorithm>
#include <sstream>

namespace homcx {

namespace {

int degree_top(const GradedModule& n, int max_degree) {
  const auto& A = *n.ring();
  if (!A.is_artinian()) return max_degree;
  const auto& g = n.generator_degrees();
  return *std::max_element(g.begin(), g.end()) + A.top_degree();
}

std::pair<int, int> min_max(const Shifts& s) {
  auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  return {*lo, *hi};
}

std::vector<std::size_t> block_dims(const GradedModule& n, const Shifts& shifts, int offset, int sign) {
  std::vector<std::size_t> out;
  for (int a : shifts) out.push_back(n.dim(offset + sign * a));
  return out;
}

std::size_t sum(const std::vector<std::size_t>& v) {
  std::size_t s = 0;
  for (auto x : v) s += x;
  return s;
}

/// Assembles a block matrix whose (row block r, column block c) entry is
/// block(r, c).
template <class BlockFn>
Matrix assemble(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols, BlockFn block) {
  Matrix m(sum(rows), sum(cols));
  std::size_t r0 = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::size_t c0 = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (rows[r] && cols[c]) {
        Matrix b = block(r, c);
        for (std::size_t i = 0; i < b.rows(); ++i)
          for (std::size_t j = 0; j < b.cols(); ++j) m(r0 + i, c0 + j) = b(i, j);
      }
      c0 += cols[c];
    }
    r0 += rows[r];
  }
  return m;
}

}  // namespace

Matrix hom_coboundary(const Resolution& r, const GradedModule& n, int i, int e) {
  const auto& d = r.d(i);
  auto rows = block_dims(n, d.source(), e, 1);
  auto cols = block_dims(n, d.target(), e, 1);
  return assemble(rows, cols, [&](std::size_t l, std::size_t j) {
    return n.action_matrix(d(j, l), d.target()[j] + e, d.source()[l] + e);
  });
}

namespace {

/// ∂_i ⊗ N : (F_i ⊗ N)_t -> (F_{i-1} ⊗ N)_t.
Matrix tor_boundary(const Resolution& r, const GradedModule& n, int i, int t) {
  const auto& d = r.d(i);
  auto rows = block_dims(n, d.target(), t, -1);
  auto cols = block_dims(n, d.source(), t, -1);
  return assemble(rows, cols, [&](std::size_t j, std::size_t l) {
    return n.action_matrix(d(j, l), t - d.source()[l], t - d.target()[j]);
  });
}

void finish_totals(HomologyTable& t) {
  t.totals.assign(static_cast<std::size_t>(t.H) + 1, 0);
  for (const auto& [key, v] : t.dims) t.totals[static_cast<std::size_t>(key.first)] += v;
}

ModuleMap project_rows(const ModuleMap& m, std::size_t nrows, const Shifts& target) {
  std::vector<PolyColumn> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    auto c = m.column(j);
    c.resize(nrows);
    if (std::any_of(c.begin(), c.end(), [](const Polynomial& p) { return !p.is_zero(); })) cols.push_back(c);
  }
  if (cols.empty()) return ModuleMap(m.ring(), {}, target);
  return ModuleMap::from_columns(m.ring(), target, cols);
}

/// d ⊗ F0(N): each basis vector of F (degree b) becomes one copy of N's
/// generators shifted by b.
ModuleMap tensor_free_map(const ModuleMap& d, const Shifts& ngens) {
  Shifts src, tgt;
  for (int b : d.source())
    for (int g : ngens) src.push_back(b + g);
  for (int a : d.target())
    for (int g : ngens) tgt.push_back(a + g);
  ModuleMap out(d.ring(), src, tgt);
  std::size_t k = ngens.size();
  for (std::size_t j = 0; j < d.rows(); ++j)
    for (std::size_t l = 0; l < d.cols(); ++l)
      if (!d(j, l).is_zero())
        for (std::size_t q = 0; q < k; ++q) out.set(j * k + q, l * k + q, d(j, l));
  return out;
}

ModuleMap tensor_relations(const Shifts& f, const ModuleMap& nrel) {
  ModuleMap out(nrel.ring(), {}, {});
  for (int b : f) out = block_sum(out, shift_map(nrel, b));
  return out;
}

}  // namespace

ExtTable ext_table(Engine& engine, const GradedModule& m, const GradedModule& n_in, int H) {
  ExtTable t;
  t.kind = HomologyTable::Kind::Ext;
  t.H = H;
  t.max_degree = engine.config().max_degree;
  auto r = engine.resolve(m, H + 1);
  auto n = minimalize(n_in);
  if (n.num_generators() == 0) {
    finish_totals(t);
    return t;
  }
  const auto& F = n.ring()->field();
  t.truncated = !n.ring()->is_artinian();
  int lowN = *n.min_generator_degree();
  int topN = degree_top(n, t.max_degree);
  for (int i = 0; i <= H; ++i) {
    auto fi = r->free_module(i);
    if (fi.empty()) continue;
    auto [lo, hi] = min_max(fi);
    for (int e = lowN - hi; e <= topN - lo; ++e) {
      auto hom = static_cast<long>(sum(block_dims(n, fi, e, 1)));
      if (hom == 0) continue;
      long in = i >= 1 ? static_cast<long>(rank(F, hom_coboundary(*r, n, i, e))) : 0;
      long out = static_cast<long>(rank(F, hom_coboundary(*r, n, i + 1, e)));
      if (long dimension = hom - in - out) t.dims[{i, e}] = dimension;
    }
  }
  finish_totals(t);
  return t;
}

TorTable tor_table(Engine& engine, const GradedModule& m, const GradedModule& n_in, int H) {
  TorTable t;
  t.kind = HomologyTable::Kind::Tor;
  t.H = H;
  t.max_degree = engine.config().max_degree;
  auto r = engine.resolve(m, H + 1);
  auto n = minimalize(n_in);
  if (n.num_generators() == 0) {
    finish_totals(t);
    return t;
  }
  const auto& F = n.ring()->field();
  t.truncated = !n.ring()->is_artinian();
  int lowN = *n.min_generator_degree();
  int topN = degree_top(n, t.max_degree);
  for (int i = 0; i <= H; ++i) {
    auto fi = r->free_module(i);
    if (fi.empty()) continue;
    auto [lo, hi] = min_max(fi);
    for (int d = lowN + lo; d <= topN + hi; ++d) {
      auto chains = static_cast<long>(sum(block_dims(n, fi, d, -1)));
      if (chains == 0) continue;
      long out = i >= 1 ? static_cast<long>(rank(F, tor_boundary(*r, n, i, d))) : 0;
      long in = static_cast<long>(rank(F, tor_boundary(*r, n, i + 1, d)));
      if (long dimension = chains - in - out) t.dims[{i, d}] = dimension;
    }
  }
  finish_totals(t);
  return t;
}

GradedModule homology_module(const ModuleMap& incoming, const ModuleMap& outgoing, int max_degree) {
  const auto& ring = outgoing.ring();
  return homology_module(incoming, outgoing, ModuleMap(ring, {}, outgoing.source()),
                         ModuleMap(ring, {}, outgoing.target()), max_degree);
}

GradedModule homology_module(const ModuleMap& incoming, const ModuleMap& outgoing, const ModuleMap& rel_mid,
                             const ModuleMap& rel_out, int max_degree) {
  const auto& ring = outgoing.ring();
  GradedModule target(rel_out);
  auto comp = compose(outgoing, incoming);
  for (std::size_t c = 0; c < comp.cols(); ++c)
    if (!target.is_zero_element(comp.column(c), comp.source()[c]))
      throw std::invalid_argument("homology_module: outgoing ∘ incoming is not zero");
  const Shifts& mid = outgoing.source();
  if (mid.empty()) return GradedModule::zero(ring);

  ModuleMap cycles = outgoing.target().empty()
                         ? ModuleMap::identity(ring, mid)
                         : project_rows(syzygy_step(hconcat(outgoing, rel_out), max_degree), mid.size(), mid);
  if (cycles.cols() == 0) return GradedModule::zero(ring);
  auto big = hconcat(hconcat(cycles, incoming), rel_mid);
  auto rel = project_rows(syzygy_step(big, max_degree), cycles.cols(), cycles.source());
  return minimalize(GradedModule(rel));
}

GradedModule tor_module(Engine& engine, const GradedModule& m, const GradedModule& n_in, int i) {
  auto r = engine.resolve(m, i + 1);
  auto n = minimalize(n_in);
  const auto& ring = n.ring();
  const auto& ng = n.generator_degrees();
  auto fi = r->free_module(i);
  ModuleMap incoming = tensor_free_map(r->d(i + 1), ng);
  ModuleMap outgoing = i >= 1 ? tensor_free_map(r->d(i), ng) : tensor_free_map(ModuleMap(ring, fi, {}), ng);
  ModuleMap rel_mid = tensor_relations(fi, n.presentation());
  ModuleMap rel_out = i >= 1 ? tensor_relations(r->free_module(i - 1), n.presentation()) : ModuleMap(ring, {}, {});
  return homology_module(incoming, outgoing, rel_mid, rel_out, engine.config().max_degree);
}

DepthReport depth(Engine& engine, const GradedModule& m_in) {
  DepthReport rep;
  auto m = minimalize(m_in);
  const auto& ring = m.ring();
  rep.dim = ring->krull_dim();
  if (m.num_generators() == 0) {
    rep.is_mcm = true;
    return rep;
  }
  auto t = ext_table(engine, GradedModule::residue_field(ring), m, rep.dim);
  for (int i = 0; i <= rep.dim; ++i)
    if (!t.vanishes(i)) {
      rep.depth = i;
      rep.first_nonvanishing = i;
      rep.is_mcm = i == rep.dim;
      return rep;
    }
  throw std::runtime_error("depth: no nonvanishing Ext^i(k, M) up to the Krull dimension within the degree cap");
}

bool is_mcm(Engine& engine, const GradedModule& m) { return depth(engine, m).is_mcm; }

int ring_depth(Engine& engine, const RingPtr& ring) { return depth(engine, GradedModule::free(ring, {0})).depth; }

std::string IndexResult::describe() const {
  if (at_least_H) return ">= " + std::to_string(H);
  if (!value) return "-inf (everything vanishes)";
  return std::to_string(*value);
}

IndexResult sup_index(const HomologyTable& t) {
  IndexResult r;
  r.H = t.H;
  for (int i = t.H; i >= 0; --i)
    if (!t.vanishes(i)) {
      if (2 * i > t.H)
        r.at_least_H = true;
      else
        r.value = i;
      break;
    }
  return r;
}

std::string VanishingVerdict::describe() const {
  std::ostringstream os;
  if (!finite) return "no window found <= H";
  os << "finite: gap of length " << gap_length << " at t = " << *gap_start << ", predicted ";
  if (predicted_lo == predicted_hi)
    os << "value " << predicted_lo;
  else
    os << "value in [" << predicted_lo << ", " << predicted_hi << "]";
  if (!consistent) os << " (table disagrees)";
  return os.str();
}

VanishingVerdict vanishing_window_verdict(const HomologyTable& table, int gap_length, int depth_ring, int depth_m,
                                          int depth_n) {
  VanishingVerdict v;
  v.gap_length = gap_length;
  v.predicted_hi = depth_ring - depth_m;
  v.predicted_lo = table.kind == HomologyTable::Kind::Ext ? v.predicted_hi : depth_ring - depth_m - depth_n;
  for (int t = std::max(depth_ring - depth_m + 1, 0); t + gap_length - 1 <= table.H; ++t) {
    bool gap = true;
    for (int i = 0; i < gap_length && gap; ++i) gap = table.vanishes(t + i);
    if (gap) {
      v.finite = true;
      v.gap_start = t;
      break;
    }
  }
  if (v.finite) {
    auto idx = sup_index(table);
    v.consistent = idx.value && *idx.value >= v.predicted_lo && *idx.value <= v.predicted_hi;
  }
  return v;
}

std::string DepthFormulaReport::describe() const {
  std::ostringstream os;
  if (!preconditions_met) {
    os << "preconditions failed:";
    for (const auto& f : failed_preconditions) os << " " << f << ";";
    return os.str();
  }
  os << "depth M + depth N = " << depth_m << " + " << depth_n << ", depth A + depth(M⊗N) = " << depth_ring << " + "
     << depth_tensor << (holds ? ": holds" : ": fails");
  return os.str();
}

DepthFormulaReport depth_formula_check(Engine& engine, const GradedModule& m, const GradedModule& n,
                                       bool m_certified, int H) {
  DepthFormulaReport rep;
  auto q = q_index(tor_table(engine, m, n, H));
  if (!(q.value && *q.value == 0)) rep.failed_preconditions.push_back("q(M,N) = " + q.describe() + ", not 0");
  auto dn = depth(engine, n);
  rep.depth_n = dn.depth;
  if (!dn.is_mcm) rep.failed_preconditions.push_back("N is not maximal Cohen-Macaulay");
  if (!m_certified) rep.failed_preconditions.push_back("M has no reducible-complexity certificate");
  if (!rep.failed_preconditions.empty()) return rep;
  rep.preconditions_met = true;
  rep.depth_m = depth(engine, m).depth;
  rep.depth_ring = ring_depth(engine, m.ring());
  rep.depth_tensor = depth(engine, tensor(m, n)).depth;
  rep.holds = rep.depth_m + rep.depth_n == rep.depth_ring + rep.depth_tensor;
  return rep;
}

}  // namespace homcx
