#pragma once

#include <optional>
#include <string>
#include <vector>

#include "homcx/yoneda.hpp"

namespace homcx {

struct CertificateLink {
  ExtClass eta;    // a class on the previous module of the chain
  GradedModule K;  // minimal; ≅ K_η
  bool ses_verified = false;
};

/// M = K_0, then K_i ≅ K_{η_i} with η_i ∈ Ext(K_{i-1}, K_{i-1}). The trails
/// have one entry per module, K_0 included.
struct Certificate {
  GradedModule module;
  std::vector<CertificateLink> chain;
  int terminal_pd = 0;
  std::vector<ComplexityEstimate> cx_trail;
  std::vector<int> depth_trail;
  int H = 12;

  const GradedModule& terminal() const { return chain.empty() ? module : chain.back().K; }
  /// |η_1| + ... + |η_c| - c + 1.
  int gap_length() const;
};

struct CertificateVerdict {
  bool pass = false;
  std::string failure;  // the first failing condition
  int failed_link = -1;
  std::string describe() const;
};

/// Recomputes every condition: each pushout (compared up to isomorphism)
/// and its exact sequence, depth equality, strictly falling complexity,
/// and a zero Betti number of the last module within cert.H.
CertificateVerdict check_certificate(Engine& engine, const GradedModule& m, const Certificate& cert);

struct SearchOptions {
  int max_hdeg = 4;
  int budget = 400;        // pushouts evaluated, in total
  int H = 12;              // window for complexity estimates
  int random_trials = 12;  // seeded combinations per cell when no basis class works
};

struct SearchResult {
  std::optional<Certificate> certificate;
  long classes_tried = 0;
  std::optional<int> best_cx;
  std::string diagnostic;
};

/// Greedy chain search. At each step the smallest homological degree with
/// a complexity-lowering class wins, then the largest drop, then the
/// smallest internal degree. Randomized combinations draw from the engine
/// seed, so results are reproducible.
SearchResult search_certificate(Engine& engine, const GradedModule& m, const SearchOptions& opts = {});

/// Certificate for Ω¹M whose classes are the first lifts g_1 of the given
/// ones; later modules are Ω¹(K_i) ⊕ (free). Requires a Cohen-Macaulay
/// ring; throws std::logic_error if the output fails re-verification.
Certificate syzygy_transport(Engine& engine, const Certificate& cert);

/// β_{i+1}(K) = β_{i+n}(M) - β_i(M) for from <= i <= to.
bool betti_recurrence_holds(Engine& engine, const ExtClass& eta, const GradedModule& K, int from, int to);

/// Generator count equals codimension.
bool is_complete_intersection(const QuotientRing& ring);

/// Approximation: 0 -> Y -> C -> M -> 0 with `map` : Y -> C.
/// Hull:          0 -> M -> Y -> C -> 0 with `map` : M -> Y.
struct ApproximationResult {
  GradedModule Y, C;
  ModuleMap map;
  bool ses_verified = false;
  bool c_is_mcm = false;
  int depth_c = 0;
  std::optional<int> pd_y;
  int iterations = 0;
  bool ok = false;
  std::string diagnostic;
};

/// Both throw std::invalid_argument unless the ring is a recognized
/// complete intersection.
ApproximationResult mcm_approximation(Engine& engine, const GradedModule& m, int H, const SearchOptions& opts = {});
ApproximationResult fid_hull(Engine& engine, const GradedModule& m, int H, const SearchOptions& opts = {});

struct TorTransferResult {
  GradedModule X, Y;
  std::vector<long> tor_before, tor_after;  // totals for i = 1..H/2
  bool depths_preserved = false;
  bool finite_pd = false;
  bool tor_preserved = false;
  std::string diagnostic;
};

/// Replaces X and Y by modules of finite projective dimension with the same
/// depths and the same Tor_i for 1 <= i <= H/2. Throws
/// std::invalid_argument when Tor_i(X, Y) does not vanish for H/2 < i <= H.
TorTransferResult tor_transfer(Engine& engine, const GradedModule& x, const GradedModule& y, int H,
                               const SearchOptions& opts = {});

/// The verdict of homalg with the window length taken from a certificate
/// for the first argument of the table. Throws std::invalid_argument when
/// the certificate does not verify.
VanishingVerdict vanishing_window_verdict(Engine& engine, const Certificate& cert, const HomologyTable& table,
                                          const GradedModule& n);

}  // namespace homcx
