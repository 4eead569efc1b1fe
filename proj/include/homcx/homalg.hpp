#pragma once

#include <climits>
#include <optional>
#include <string>

#include "homcx/resolution.hpp"

namespace homcx {

/// dim_k of Ext^i(M, N)_e or Tor_i(M, N)_d per (i, internal degree).
/// `truncated` marks tables whose degree range was cut at the cap D
/// because N does not have finite length.
struct HomologyTable {
  enum class Kind { Ext, Tor };
  Kind kind = Kind::Ext;
  int H = 0;
  int max_degree = 16;
  bool truncated = false;
  std::map<std::pair<int, int>, long> dims;  // zero cells omitted
  std::vector<long> totals;                  // indexed by i = 0..H

  long total(int i) const { return totals.at(static_cast<std::size_t>(i)); }
  bool vanishes(int i) const { return total(i) == 0; }
};
using ExtTable = HomologyTable;
using TorTable = HomologyTable;

/// δ^i : Hom(F_{i-1}, N)_e -> Hom(F_i, N)_e, φ ↦ φ ∘ d_i. A degree-e
/// cochain on F is the concatenation, over the basis of F, of quotient
/// coordinates of N in degree (basis degree + e).
Matrix hom_coboundary(const Resolution& r, const GradedModule& n, int i, int e);

ExtTable ext_table(Engine& engine, const GradedModule& m, const GradedModule& n, int H);
TorTable tor_table(Engine& engine, const GradedModule& m, const GradedModule& n, int H);

/// ker(outgoing) / im(incoming) for maps of free modules; throws
/// std::invalid_argument if outgoing ∘ incoming != 0.
GradedModule homology_module(const ModuleMap& incoming, const ModuleMap& outgoing, int max_degree = 16);
/// The same for a complex of presented modules: the middle term is
/// coker(rel_mid) and the target is coker(rel_out).
GradedModule homology_module(const ModuleMap& incoming, const ModuleMap& outgoing, const ModuleMap& rel_mid,
                             const ModuleMap& rel_out, int max_degree = 16);

/// Tor_i(M, N) as a module: homology of F_• ⊗ N at position i.
GradedModule tor_module(Engine& engine, const GradedModule& m, const GradedModule& n, int i);

constexpr int kInfiniteDepth = INT_MAX;

struct DepthReport {
  int depth = kInfiniteDepth;  // kInfiniteDepth for the zero module
  std::optional<int> first_nonvanishing;
  int dim = 0;
  bool is_mcm = false;
};

/// depth M = min { i : Ext^i(k, M) != 0 }.
DepthReport depth(Engine& engine, const GradedModule& m);
bool is_mcm(Engine& engine, const GradedModule& m);
/// depth of the ring as a module over itself.
int ring_depth(Engine& engine, const RingPtr& ring);

/// sup { i <= H : table_i != 0 }. When that supremum lies in the upper half
/// of the window, vanishing cannot be told apart from a late gap, so only
/// the flag "at least H" is reported.
struct IndexResult {
  std::optional<int> value;
  bool at_least_H = false;
  int H = 0;
  std::string describe() const;
};
IndexResult sup_index(const HomologyTable& t);
inline IndexResult p_index(const ExtTable& t) { return sup_index(t); }
inline IndexResult q_index(const TorTable& t) { return sup_index(t); }

struct VanishingVerdict {
  bool finite = false;
  std::optional<int> gap_start;
  int gap_length = 0;
  /// Ext: predicted p = lo = hi. Tor: predicted q in [lo, hi].
  int predicted_lo = 0, predicted_hi = 0;
  /// The table's own index agrees with the prediction.
  bool consistent = true;
  std::string describe() const;
};

/// Looks for t > depth A - depth M with table_{t..t+gap_length-1} = 0.
VanishingVerdict vanishing_window_verdict(const HomologyTable& table, int gap_length, int depth_ring, int depth_m,
                                          int depth_n);

struct DepthFormulaReport {
  bool preconditions_met = false;
  std::vector<std::string> failed_preconditions;
  int depth_m = 0, depth_n = 0, depth_ring = 0, depth_tensor = 0;
  bool holds = false;
  std::string describe() const;
};

/// depth M + depth N = depth A + depth(M ⊗ N), evaluated when q(M, N) = 0,
/// N is MCM and M is certified.
DepthFormulaReport depth_formula_check(Engine& engine, const GradedModule& m, const GradedModule& n,
                                       bool m_certified, int H);

}  // namespace homcx
