#pragma once

#include <map>
#include <memory>
#include <string>

#include "homcx/homalg.hpp"

namespace homcx {

/// A homogeneous class η ∈ Ext^n(M, N) of internal degree s, stored as a
/// cocycle f : F_n -> F0(N) with target shifts (generator degrees of N) - s,
/// so a basis vector of F_n in degree b lands in N_{b+s}.
struct ExtClass {
  std::shared_ptr<const Resolution> resolution;  // of M, long enough for d_{n+1}
  GradedModule target;
  int hdeg = 1;
  int internal_degree = 0;
  ModuleMap cocycle;
  bool normalized = false;

  const GradedModule& source() const { return resolution->module; }
  /// N is literally the module M was resolved from, so η lifts along F.
  bool is_endomorphism() const;
};

/// Wraps a cocycle, extending the resolution if needed. Throws
/// std::invalid_argument("not a cocycle") when f ∘ d_{n+1} is nonzero in N.
ExtClass make_class(std::shared_ptr<const Resolution> r, GradedModule target, int n, int s, ModuleMap cocycle);
ExtClass zero_class(std::shared_ptr<const Resolution> r, GradedModule target, int n, int s);

bool satisfies_cocycle_condition(const ExtClass& eta);
/// Representative reduced modulo coboundaries by the echelon form of im δ^n.
ExtClass normalize(const ExtClass& eta);
bool is_zero_class(const ExtClass& eta);
/// Same cell (n, s) and the difference is a coboundary.
bool same_class(const ExtClass& a, const ExtClass& b);
/// Σ coeffs[i] · classes[i]; every class must live in one cell.
ExtClass linear_combination(const std::vector<ExtClass>& classes, const std::vector<PrimeField::Element>& coeffs);

/// Cochain coordinates of η in Hom(F_n, N)_s, the layout of hom_coboundary.
Vec cochain_vector(const ExtClass& eta);

/// Normalized representatives of a k-basis of Ext^n(M, N), internal
/// degrees ascending. N defaults to M itself (minimalized).
std::vector<ExtClass> ext_class_basis(Engine& engine, const GradedModule& m, int n);
std::vector<ExtClass> ext_class_basis(Engine& engine, const GradedModule& m, const GradedModule& target, int n);

/// g_0 = f_η and g_i : F_{n+i} -> F_i(s) with d_i g_i = g_{i-1} d_{n+i}.
/// Needs an endomorphism class. Throws std::logic_error if a lifting
/// system is inconsistent, which only a broken cocycle can cause.
std::vector<ModuleMap> lift_chain_map(const ExtClass& eta, int steps);

/// θ₂ · θ₁ = f_{θ₂} ∘ g_{|θ₂|}(θ₁), in Ext^{|θ₁|+|θ₂|} of degree s₁ + s₂.
ExtClass yoneda_product(const ExtClass& theta2, const ExtClass& theta1);
/// η^t = η^{t-1} · η, t >= 1.
ExtClass power(const ExtClass& eta, int t);

/// K_η for f_η : F_n -> N. The raw presentation has generators gens(N)
/// followed by F_{n-1} moved up by s, and the quotient term is Ω^{n-1}M
/// moved by s, so all three terms of the sequence are degree-zero maps.
struct PushoutResult {
  GradedModule K;       // minimalized
  GradedModule K_raw;   // the presentation above
  GradedModule quotient;  // Ω^{n-1}(M) moved by s
  ModuleMap inclusion;   // F0(N) -> F0(K)
  ModuleMap projection;  // F0(K) -> F0(quotient)
  bool ses_verified = false;
  std::string diagnostic;
  int window_lo = 0, window_hi = 0;
};

/// Throws std::invalid_argument("not a cocycle").
PushoutResult pushout(const ExtClass& eta, int max_degree = 16);

/// Hilbert bookkeeping for 0 -> Ω^{|θ₂|}(K_{θ₁})(s₂) -> K_{θ₂θ₁} ⊕ F -> K_{θ₂} -> 0:
/// the difference of series must be that of a free module.
struct ProductBookkeepingReport {
  bool consistent = false;
  std::map<int, long> free_ranks;  // generator degree -> rank of F
  HilbertSeries omega_k1, k2, k21, free_part;
  std::string diagnostic;
};
ProductBookkeepingReport product_bookkeeping(Engine& engine, const ExtClass& theta1, const ExtClass& theta2);

}  // namespace homcx
