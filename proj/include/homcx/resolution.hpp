#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

#include "homcx/graded_module.hpp"

namespace homcx {

/// Session-wide bounds: internal degree cap D, homological cap H, RNG seed.
struct Config {
  int max_degree = 16;
  int max_hdeg = 12;
  std::uint64_t seed = 0x5eed;
};

/// A kernel generator would be needed in an internal degree above the cap.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(int step, int degree, int cap);
  int step() const { return step_; }
  int degree() const { return degree_; }

 private:
  int step_, degree_;
};

/// A map whose columns minimally generate ker(d). Generators are collected
/// degree by degree; within a degree the kernel basis follows the leftmost
/// pivot convention, so the result is deterministic.
ModuleMap syzygy_step(const ModuleMap& d, int max_degree = 16);

struct BettiTable {
  std::vector<long> betti;
  std::map<std::pair<int, int>, long> graded;  // (i, internal degree) -> count
};

/// Minimal graded free resolution F_H -> ... -> F_1 -> F_0 -> M -> 0 of the
/// minimalized module. diffs[i - 1] is d_i : F_i -> F_{i-1}.
struct Resolution {
  GradedModule module;
  std::vector<ModuleMap> diffs;
  int max_degree = 16;

  int length() const { return static_cast<int>(diffs.size()); }
  Shifts free_module(int i) const;
  const ModuleMap& d(int i) const { return diffs.at(static_cast<std::size_t>(i - 1)); }
  long betti(int i) const { return static_cast<long>(free_module(i).size()); }
  /// Betti numbers β_0..β_upto (upto < 0: everything computed).
  BettiTable betti_table(int upto = -1) const;
  /// i - 1 for the first i <= length with F_i = 0 (so -1 for the zero
  /// module); nullopt when every computed F_i is nonzero.
  std::optional<int> projective_dimension() const;
};

/// Resolution up to F_H, throwing TruncationError on degree overflow.
Resolution resolution(const GradedModule& m, int H, int max_degree = 16);
/// Continues an existing resolution to length H.
Resolution extend(Resolution r, int H);

/// Ω^n presented by d_{n+1} on F_n; requires r.length() > n (or F_n = 0).
GradedModule omega(const Resolution& r, int n);

enum class ComplexityMethod { EventuallyZero, EventuallyConstant, FiniteDifferenceFit, Unbounded };
std::string to_string(ComplexityMethod m);

struct ComplexityEstimate {
  std::optional<int> value;  // nullopt: unbounded within the window
  int n0 = 0, n1 = 0;
  ComplexityMethod method = ComplexityMethod::Unbounded;
  bool confident = false;
  std::string describe() const;
};

/// Default window (H/2, H), widened to at least four entries.
std::pair<int, int> default_window(int H);
ComplexityEstimate estimate_complexity(const BettiTable& b, std::pair<int, int> window);
ComplexityEstimate estimate_complexity(const BettiTable& b);

/// Stable text describing ring and presentation; the content key for caches.
std::string canonical_text(const GradedModule& m);

/// Persistent resolution storage (the cli provides an on-disk one).
class ResolutionStore {
 public:
  virtual ~ResolutionStore() = default;
  virtual std::optional<Resolution> load(const GradedModule& m, int H, int max_degree) = 0;
  virtual void save(const GradedModule& m, int H, const Resolution& r) = 0;
};

/// Routes every resolution through an in-memory memo and an optional
/// persistent store. Safe for concurrent use.
class Engine {
 public:
  explicit Engine(Config cfg = {}, std::shared_ptr<ResolutionStore> store = nullptr);

  const Config& config() const { return cfg_; }
  std::shared_ptr<const Resolution> resolve(const GradedModule& m, int H);
  std::shared_ptr<const Resolution> resolve(const GradedModule& m) { return resolve(m, cfg_.max_hdeg); }
  /// Ω^n M, computed from a resolution of length n + 1.
  GradedModule omega(const GradedModule& m, int n);

  struct Stats {
    long memo_hits = 0, store_hits = 0, computed = 0;
  };
  Stats stats() const;

 private:
  Config cfg_;
  std::shared_ptr<ResolutionStore> store_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<const Resolution>> memo_;
  Stats stats_;
};

struct PeriodResult {
  int period;
  /// Ω^period(M) ≅ M(shift): generator degrees of the syzygy minus `shift`
  /// match those of M.
  int shift;
};

/// Least p in 1..max_period with Ω^p M isomorphic to M up to a degree shift.
std::optional<PeriodResult> detect_period(Engine& engine, const GradedModule& m, int max_period);

}  // namespace homcx
