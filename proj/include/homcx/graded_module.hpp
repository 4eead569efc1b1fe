#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "homcx/module_map.hpp"

namespace homcx {

/// A finitely generated graded module presented as the cokernel of a map
/// of free modules, G --rel--> F0. Generators are the basis of F0.
///
/// Copies share the per-degree cache, which depends only on the immutable
/// presentation.
class GradedModule {
 public:
  GradedModule() = default;
  explicit GradedModule(ModuleMap presentation);

  static GradedModule free(RingPtr ring, Shifts shifts);
  static GradedModule zero(RingPtr ring) { return free(std::move(ring), {}); }
  /// k = A / m, generated in degree `at`.
  static GradedModule residue_field(RingPtr ring, int at = 0);
  /// A / (f_1, ..., f_r) for homogeneous f_i, generated in degree 0.
  static GradedModule cyclic(RingPtr ring, const std::vector<Polynomial>& ideal);

  const RingPtr& ring() const { return presentation_.ring(); }
  const ModuleMap& presentation() const { return presentation_; }
  const Shifts& generator_degrees() const { return presentation_.target(); }
  std::size_t num_generators() const { return presentation_.rows(); }
  std::optional<int> min_generator_degree() const;

  /// Relations in degree d as a subspace of (F0)_d.
  const Subspace& relations(int d) const;
  std::size_t dim(int d) const;
  /// Quotient coordinates of an element of (F0)_d.
  Vec reduce(const Vec& v, int d) const;
  /// Standard lift of quotient coordinates back into (F0)_d.
  Vec lift(const Vec& q, int d) const;
  bool is_zero_element(const PolyColumn& x, int d) const;
  /// Multiplication by homogeneous f as a map M_from -> M_to in quotient
  /// coordinates (to = from + deg f).
  Matrix action_matrix(const Polynomial& f, int from, int to) const;

  /// dim_k M_d for d = min(0, lowest generator degree) .. max_degree.
  HilbertSeries hilbert_function(int max_degree) const;
  /// Same, but over an explicit degree window [lo, hi].
  HilbertSeries hilbert_window(int lo, int hi) const;

  /// No unit entries in the presentation and no redundant relations.
  bool is_minimal() const;
  /// True for a minimal presentation without generators; otherwise checks
  /// that every generator dies (which a non-minimal zero module satisfies).
  bool is_zero() const;
  bool is_free() const { return presentation_.cols() == 0; }

 private:
  struct Cache {
    std::mutex mu;
    std::map<int, Subspace> relations;
  };
  ModuleMap presentation_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Result of Nakayama reduction, with the comparison isomorphisms between
/// the old and new generating sets.
struct Minimalized {
  GradedModule module;
  /// Old generators written in terms of the new ones (F0_old -> F0_new).
  ModuleMap to_minimal;
  /// New generators written in terms of the old ones (F0_new -> F0_old).
  ModuleMap from_minimal;
};

Minimalized minimalize_tracked(const GradedModule& m);
GradedModule minimalize(const GradedModule& m);

GradedModule direct_sum(const GradedModule& m, const GradedModule& n);
/// Moves every generator degree by a (Hilbert function translates by a).
GradedModule shift(const GradedModule& m, int a);
GradedModule tensor(const GradedModule& m, const GradedModule& n);

/// Degree-zero homomorphisms M -> N, each given by lifts of the images of
/// M's generators (a map F0_M -> F0_N). Returns a k-basis.
std::vector<ModuleMap> hom_degree_zero(const GradedModule& m, const GradedModule& n);

/// f represents a well-defined map M -> N (relations go to relations).
bool is_module_map(const ModuleMap& f, const GradedModule& m, const GradedModule& n);
/// The map M -> N induced by f is injective in every degree of [lo, hi].
bool is_injective_on(const ModuleMap& f, const GradedModule& m, const GradedModule& n, int lo, int hi);
/// f ≡ g as maps M -> N (their difference lands in N's relations).
bool maps_agree(const ModuleMap& f, const ModuleMap& g, const GradedModule& n);

enum class IsoOutcome { Isomorphic, HilbertDiffers, GeneratorDegreesDiffer, SearchFailed };

struct IsoResult {
  IsoOutcome outcome = IsoOutcome::SearchFailed;
  /// Degree-zero isomorphism M -> N and its inverse, when found.
  std::optional<ModuleMap> witness;
  std::optional<ModuleMap> inverse;
  int trials = 0;
  bool isomorphic() const { return outcome == IsoOutcome::Isomorphic; }
  std::string diagnostic() const;
};

/// Tests M ≅ N (both minimal) by comparing Hilbert functions over
/// `window` degrees and generator degrees, then sampling pseudorandom
/// elements of Hom_0(M, N) (seeded, `trials` attempts) and proving
/// invertibility by solving for a two-sided inverse.
IsoResult is_isomorphic(const GradedModule& m, const GradedModule& n, std::uint64_t seed = 0x5eed,
                        int trials = 64, int window = 16);

}  // namespace homcx
