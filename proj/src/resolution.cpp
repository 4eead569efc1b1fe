#include "homcx/resolution.hpp"

#include <algorithm>
#include <sstream>

namespace homcx {

TruncationError::TruncationError(int step, int degree, int cap)
    : std::runtime_error("truncation overflow at homological step " + std::to_string(step) +
                         ": a syzygy generator in internal degree " + std::to_string(degree) +
                         " exceeds the degree cap " + std::to_string(cap)),
      step_(step),
      degree_(degree) {}

ModuleMap syzygy_step(const ModuleMap& d, int max_degree) {
  const auto& ring = d.ring();
  const auto& A = *ring;
  const Shifts& src = d.source();
  if (src.empty()) return ModuleMap(ring, {}, {});
  int lo = *std::min_element(src.begin(), src.end());
  int hi = A.is_artinian() ? *std::max_element(src.begin(), src.end()) + A.top_degree() : max_degree;

  SubmoduleSpan span(ring, src);
  std::vector<PolyColumn> gens;
  for (int e = lo; e <= hi; ++e) {
    span.piece(e);
    auto mat = d.degree_matrix(e);
    if (mat.cols() == 0) continue;
    for (const auto& v : kernel_basis(A.field(), mat)) {
      if (!span.add_generator(e, v)) continue;
      // Artinian rings: kernels are finite, so only a generator past the cap
      // is an overflow. Otherwise a generator at the cap may have unseen
      // companions above it.
      if (e > max_degree || (!A.is_artinian() && e == max_degree)) throw TruncationError(-1, e, max_degree);
      gens.push_back(column_from_coords(A, src, v, e));
    }
  }
  if (gens.empty()) return ModuleMap(ring, {}, src);
  return ModuleMap::from_columns(ring, src, gens);
}

Shifts Resolution::free_module(int i) const {
  if (i == 0) return module.generator_degrees();
  return d(i).source();
}

BettiTable Resolution::betti_table(int upto) const {
  if (upto < 0 || upto > length()) upto = length();
  BettiTable t;
  for (int i = 0; i <= upto; ++i) {
    auto f = free_module(i);
    t.betti.push_back(static_cast<long>(f.size()));
    for (int a : f) ++t.graded[{i, a}];
  }
  return t;
}

std::optional<int> Resolution::projective_dimension() const {
  for (int i = 0; i <= length(); ++i)
    if (free_module(i).empty()) return i - 1;
  return std::nullopt;
}

Resolution extend(Resolution r, int H) {
  while (r.length() < H) {
    const auto& last = r.diffs.back();
    if (last.cols() == 0) {
      r.diffs.emplace_back(r.module.ring(), Shifts{}, Shifts{});
      continue;
    }
    try {
      r.diffs.push_back(syzygy_step(last, r.max_degree));
    } catch (const TruncationError& e) {
      throw TruncationError(r.length() + 1, e.degree(), r.max_degree);
    }
  }
  return r;
}

Resolution resolution(const GradedModule& m, int H, int max_degree) {
  if (H < 0) throw std::invalid_argument("resolution: negative homological bound");
  Resolution r;
  r.module = minimalize(m);
  r.max_degree = max_degree;
  for (int a : r.module.generator_degrees())
    if (a > max_degree) throw TruncationError(0, a, max_degree);
  if (H >= 1) r.diffs.push_back(r.module.presentation());
  return extend(std::move(r), H);
}

GradedModule omega(const Resolution& r, int n) {
  if (n == 0) return r.module;
  if (n > r.length()) throw std::out_of_range("omega: resolution too short");
  auto fn = r.free_module(n);
  if (fn.empty()) return GradedModule::zero(r.module.ring());
  if (n == r.length()) throw std::out_of_range("omega: need d_{n+1}");
  return GradedModule(r.d(n + 1));
}

std::string to_string(ComplexityMethod m) {
  switch (m) {
    case ComplexityMethod::EventuallyZero: return "eventually-zero";
    case ComplexityMethod::EventuallyConstant: return "eventually-constant";
    case ComplexityMethod::FiniteDifferenceFit: return "finite-difference-fit";
    case ComplexityMethod::Unbounded: return "unbounded-within-window";
  }
  return {};
}

std::string ComplexityEstimate::describe() const {
  std::ostringstream os;
  os << "cx " << (value ? std::to_string(*value) : std::string("unbounded")) << " over window [" << n0 << ", "
     << n1 << "] (" << to_string(method) << (confident ? ", confident" : ", tentative") << ")";
  return os.str();
}

std::pair<int, int> default_window(int H) {
  int n0 = H / 2;
  if (H - n0 < 3) n0 = std::max(0, H - 3);
  return {n0, H};
}

ComplexityEstimate estimate_complexity(const BettiTable& b, std::pair<int, int> window) {
  auto [n0, n1] = window;
  if (n0 < 0 || n1 >= static_cast<int>(b.betti.size()) || n1 - n0 + 1 < 4)
    throw std::invalid_argument("estimate_complexity: window must lie in the table and hold at least 4 entries");
  ComplexityEstimate est;
  est.n0 = n0;
  est.n1 = n1;
  if (std::find(b.betti.begin(), b.betti.end(), 0L) != b.betti.end()) {
    est.value = 0;
    est.method = ComplexityMethod::EventuallyZero;
    est.confident = true;
    return est;
  }
  std::vector<long> diff(b.betti.begin() + n0, b.betti.begin() + n1 + 1);
  for (int t = 1; diff.size() >= 3; ++t) {
    auto constant_from = [&](std::size_t i) {
      return std::all_of(diff.begin() + static_cast<long>(i), diff.end(), [&](long x) { return x == diff.back(); });
    };
    bool whole = constant_from(0);
    if (whole || constant_from(diff.size() - 3)) {
      est.value = t;
      est.method = t == 1 ? ComplexityMethod::EventuallyConstant : ComplexityMethod::FiniteDifferenceFit;
      est.confident = whole;
      return est;
    }
    std::vector<long> next;
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) next.push_back(diff[i + 1] - diff[i]);
    diff = std::move(next);
  }
  return est;
}

ComplexityEstimate estimate_complexity(const BettiTable& b) {
  return estimate_complexity(b, default_window(static_cast<int>(b.betti.size()) - 1));
}

std::string canonical_text(const GradedModule& m) {
  const auto& A = *m.ring();
  const auto& P = A.poly();
  std::ostringstream os;
  os << "GF(" << A.field().characteristic() << ")[";
  for (std::size_t i = 0; i < P.var_names().size(); ++i) os << (i ? "," : "") << P.var_names()[i];
  os << "]/<";
  for (std::size_t i = 0; i < A.groebner_basis().size(); ++i) os << (i ? "," : "") << P.to_string(A.groebner_basis()[i]);
  os << ">;gens=";
  for (int a : m.generator_degrees()) os << a << ",";
  os << ";rels=";
  for (int a : m.presentation().source()) os << a << ",";
  os << ";[";
  for (const auto& e : m.presentation().entries()) os << P.to_string(e) << ";";
  os << "]";
  return os.str();
}

Engine::Engine(Config cfg, std::shared_ptr<ResolutionStore> store) : cfg_(cfg), store_(std::move(store)) {}

Engine::Stats Engine::stats() const {
  std::lock_guard lock(mu_);
  return stats_;
}

std::shared_ptr<const Resolution> Engine::resolve(const GradedModule& m, int H) {
  auto key = canonical_text(m) + "|D=" + std::to_string(cfg_.max_degree);
  std::shared_ptr<const Resolution> base;
  {
    std::lock_guard lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      if (it->second->length() >= H) {
        ++stats_.memo_hits;
        return it->second;
      }
      base = it->second;
    }
  }
  std::shared_ptr<const Resolution> out;
  bool from_store = false;
  if (store_) {
    if (auto r = store_->load(m, H, cfg_.max_degree)) {
      out = std::make_shared<const Resolution>(std::move(*r));
      from_store = true;
    }
  }
  if (!out) {
    out = std::make_shared<const Resolution>(base ? extend(*base, H) : resolution(m, H, cfg_.max_degree));
    if (store_) store_->save(m, H, *out);
  }
  std::lock_guard lock(mu_);
  ++(from_store ? stats_.store_hits : stats_.computed);
  auto& slot = memo_[key];
  if (!slot || slot->length() < out->length()) slot = out;
  return out;
}

GradedModule Engine::omega(const GradedModule& m, int n) {
  auto r = resolve(m, n + 1);
  return homcx::omega(*r, n);
}

std::optional<PeriodResult> detect_period(Engine& engine, const GradedModule& m, int max_period) {
  auto base = minimalize(m);
  if (base.num_generators() == 0) return std::nullopt;
  int a = *base.min_generator_degree();
  for (int p = 1; p <= max_period; ++p) {
    auto om = engine.omega(base, p);
    if (om.num_generators() == 0) return std::nullopt;
    int s = *om.min_generator_degree() - a;
    if (is_isomorphic(base, shift(om, -s), engine.config().seed).isomorphic()) return PeriodResult{p, s};
  }
  return std::nullopt;
}

}  // namespace homcx
