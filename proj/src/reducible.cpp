#include "homcx/reducible.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace homcx {

namespace {

ComplexityEstimate complexity(Engine& engine, const GradedModule& m, int H) {
  return estimate_complexity(engine.resolve(m, H)->betti_table());
}

std::optional<int> pd_within(Engine& engine, const GradedModule& m, int H) {
  return engine.resolve(m, H)->projective_dimension();
}

/// [lo, hi] covers every nonzero degree of modules generated in `gens`
/// (up to the cap D off Artinian rings).
std::pair<int, int> window_for(const QuotientRing& A, const Shifts& gens, int D) {
  if (gens.empty()) return {0, 0};
  auto [lo, hi] = std::minmax_element(gens.begin(), gens.end());
  return {std::min(0, *lo), A.is_artinian() ? *hi + A.top_degree() : D};
}

Shifts all_generators(std::initializer_list<const GradedModule*> ms) {
  Shifts out;
  for (const auto* m : ms) out.insert(out.end(), m->generator_degrees().begin(), m->generator_degrees().end());
  return out;
}

/// Generator degrees of a free module with Hilbert series `diff` over
/// [lo, hi], or nullopt when a negative rank shows up.
std::optional<Shifts> free_from_series(const QuotientRing& A, const HilbertSeries& diff, int lo, int hi) {
  Shifts gens;
  std::vector<std::pair<int, long>> ranks;
  for (int a = lo; a <= hi; ++a) {
    long v = diff.at(a);
    for (const auto& [b, rb] : ranks) v -= rb * static_cast<long>(A.dim(a - b));
    if (v < 0) return std::nullopt;
    if (v == 0) continue;
    ranks.push_back({a, v});
    for (long k = 0; k < v; ++k) gens.push_back(a);
  }
  return gens;
}

struct Candidate {
  ExtClass eta;
  PushoutResult p;
  ComplexityEstimate cx;
  int depth = 0;
};

/// Smaller resulting complexity wins, then smaller internal degree.
bool better(const Candidate& a, const std::optional<Candidate>& b) {
  if (!b) return true;
  if (*a.cx.value != *b->cx.value) return *a.cx.value < *b->cx.value;
  return a.eta.internal_degree < b->eta.internal_degree;
}

struct Finder {
  Finder(Engine& e, const SearchOptions& o) : engine(e), opts(o) {}

  Engine& engine;
  const SearchOptions& opts;
  long tried = 0;
  std::optional<int> best_cx;

  bool exhausted() const { return tried >= opts.budget; }

  std::optional<Candidate> evaluate(const ExtClass& eta, int cx_from, int depth_from) {
    ++tried;
    try {
      auto p = pushout(eta, engine.config().max_degree);
      if (!p.ses_verified) return std::nullopt;
      auto est = complexity(engine, p.K, opts.H);
      if (!est.value) return std::nullopt;
      if (!best_cx || *est.value < *best_cx) best_cx = est.value;
      if (*est.value >= cx_from) return std::nullopt;
      int d = depth(engine, p.K).depth;
      if (d != depth_from) return std::nullopt;
      return Candidate{eta, std::move(p), est, d};
    } catch (const TruncationError&) {
      return std::nullopt;
    }
  }

  /// X must be the module of its own engine resolution.
  std::optional<Candidate> find(const GradedModule& x, int cx_from, int depth_from, int step) {
    const auto& F = x.ring()->field();
    for (int n = 1; n <= opts.max_hdeg && !exhausted(); ++n) {
      std::vector<ExtClass> basis;
      try {
        basis = ext_class_basis(engine, x, n);
      } catch (const TruncationError&) {
        continue;
      }
      std::optional<Candidate> best;
      for (const auto& eta : basis) {
        if (exhausted()) break;
        if (auto c = evaluate(eta, cx_from, depth_from); c && better(*c, best)) best = std::move(c);
      }
      if (!best && opts.random_trials > 0) {
        std::map<int, std::vector<ExtClass>> cells;
        for (const auto& eta : basis) cells[eta.internal_degree].push_back(eta);
        for (const auto& [s, cell] : cells) {
          if (cell.size() < 2) continue;
          std::uint64_t salt = (static_cast<std::uint64_t>(step) << 40) ^ (static_cast<std::uint64_t>(n) << 20) ^
                               static_cast<std::uint64_t>(s + (1 << 19));
          std::mt19937_64 rng(engine.config().seed ^ salt);
          std::uniform_int_distribution<PrimeField::Element> coeff(0, F.characteristic() - 1);
          for (int t = 0; t < opts.random_trials && !exhausted(); ++t) {
            std::vector<PrimeField::Element> cs;
            for (std::size_t i = 0; i < cell.size(); ++i) cs.push_back(coeff(rng));
            if (std::all_of(cs.begin(), cs.end(), [](auto c) { return c == 0; })) continue;
            auto eta = linear_combination(cell, cs);
            if (auto c = evaluate(eta, cx_from, depth_from); c && better(*c, best)) best = std::move(c);
          }
        }
      }
      if (best) return best;
    }
    return std::nullopt;
  }
};

/// Resolution of Ω¹(K) ⊕ (free on q) read off the resolution of K: the
/// presentation is d_2 with zero rows for q, then d_3, d_4, ...
std::shared_ptr<const Resolution> syzygy_resolution(const Resolution& r, const Shifts& q) {
  const auto& ring = r.module.ring();
  const auto& d2 = r.d(2);
  Shifts tgt = d2.target();
  tgt.insert(tgt.end(), q.begin(), q.end());
  ModuleMap pres(ring, d2.source(), tgt);
  for (std::size_t i = 0; i < d2.rows(); ++i)
    for (std::size_t j = 0; j < d2.cols(); ++j)
      if (!d2(i, j).is_zero()) pres.set(i, j, d2(i, j));
  Resolution out;
  out.module = GradedModule(pres);
  out.max_degree = r.max_degree;
  out.diffs.push_back(pres);
  for (int i = 3; i <= r.length(); ++i) out.diffs.push_back(r.d(i));
  return std::make_shared<const Resolution>(std::move(out));
}

std::shared_ptr<const Resolution> at_least(const std::shared_ptr<const Resolution>& r, int len) {
  if (r->length() >= len) return r;
  return std::make_shared<const Resolution>(extend(*r, len));
}

void fill_trails(Engine& engine, Certificate& c) {
  c.cx_trail = {complexity(engine, c.module, c.H)};
  c.depth_trail = {depth(engine, c.module).depth};
  for (const auto& link : c.chain) {
    c.cx_trail.push_back(complexity(engine, link.K, c.H));
    c.depth_trail.push_back(depth(engine, link.K).depth);
  }
  c.terminal_pd = pd_within(engine, c.terminal(), c.H).value_or(-2);
}

/// One step of the approximation loops: a class η on Y lowering cx, and the
/// least t <= H/|η| with Ω^{t|η|-1}(Y) maximal Cohen-Macaulay.
struct Reduction {
  PushoutResult p;
  int t = 0;
};

std::optional<Reduction> reduce_towards_mcm(Engine& engine, const GradedModule& y, int H, const SearchOptions& opts,
                                            std::string& why) {
  auto est = complexity(engine, y, H);
  if (!est.value) {
    why = "complexity not bounded within H";
    return std::nullopt;
  }
  Finder finder(engine, opts);
  auto c = finder.find(y, *est.value, depth(engine, y).depth, 0);
  if (!c) {
    why = "no complexity-lowering class after " + std::to_string(finder.tried) + " classes";
    return std::nullopt;
  }
  int n = c->eta.hdeg;
  for (int t = 1; t * n <= std::max(H, n); ++t) {
    if (!is_mcm(engine, engine.omega(y, t * n - 1))) continue;
    auto p = pushout(power(c->eta, t), engine.config().max_degree);
    return Reduction{std::move(p), t};
  }
  why = "no syzygy Ω^{t|η|-1} is maximal Cohen-Macaulay within H";
  return std::nullopt;
}

/// Replaces y by the module of its engine resolution and returns the
/// tracking maps between the two generating sets.
Minimalized settle(Engine& engine, const GradedModule& y, int H) {
  auto mt = minimalize_tracked(y);
  if (!(mt.module.presentation() == engine.resolve(y, H)->module.presentation()))
    throw std::logic_error("minimal presentation is not stable");
  return mt;
}

}  // namespace

int Certificate::gap_length() const {
  int g = 1;
  for (const auto& link : chain) g += link.eta.hdeg - 1;
  return g;
}

std::string CertificateVerdict::describe() const {
  if (pass) return "pass";
  std::ostringstream os;
  os << "fail";
  if (failed_link >= 0) os << " at link " << failed_link + 1;
  os << ": " << failure;
  return os.str();
}

CertificateVerdict check_certificate(Engine& engine, const GradedModule& m, const Certificate& cert) {
  CertificateVerdict v;
  auto fail = [&](int link, std::string why) {
    v.pass = false;
    v.failed_link = link;
    v.failure = std::move(why);
    return v;
  };
  const int H = cert.H;
  const auto seed = engine.config().seed;
  if (!is_isomorphic(minimalize(m), minimalize(cert.module), seed).isomorphic())
    return fail(-1, "the chain does not start at M");
  GradedModule prev = cert.module;
  int prev_depth = depth(engine, prev).depth;
  auto prev_cx = complexity(engine, prev, H);
  for (std::size_t i = 0; i < cert.chain.size(); ++i) {
    const auto& link = cert.chain[i];
    int li = static_cast<int>(i);
    const auto& eta = link.eta;
    if (!eta.resolution || !(eta.source().presentation() == prev.presentation()))
      return fail(li, "class does not live on the previous module");
    if (!eta.is_endomorphism()) return fail(li, "class is not a self-extension");
    const auto& r = *eta.resolution;
    if (r.length() < eta.hdeg + 1) return fail(li, "resolution too short");
    if (!(r.d(1) == prev.presentation())) return fail(li, "resolution does not start at the presentation");
    for (int j = 1; j < r.length(); ++j)
      if (!compose(r.d(j), r.d(j + 1)).is_zero()) return fail(li, "resolution is not a complex");
    if (!satisfies_cocycle_condition(eta)) return fail(li, "not a cocycle");
    auto p = pushout(eta, engine.config().max_degree);
    if (!p.ses_verified) return fail(li, "pushout sequence is not exact: " + p.diagnostic);
    if (!is_isomorphic(p.K, minimalize(link.K), seed).isomorphic())
      return fail(li, "K differs from the pushout module");
    int d = depth(engine, link.K).depth;
    if (d != prev_depth)
      return fail(li, "depth changes from " + std::to_string(prev_depth) + " to " + std::to_string(d));
    auto cx = complexity(engine, link.K, H);
    if (!cx.value || !prev_cx.value || *cx.value >= *prev_cx.value)
      return fail(li, "complexity does not drop (" + prev_cx.describe() + " -> " + cx.describe() + ")");
    prev = link.K;
    prev_depth = d;
    prev_cx = cx;
  }
  auto pd = pd_within(engine, cert.terminal(), H);
  if (!pd) return fail(-1, "no zero Betti number of the last module within H = " + std::to_string(H));
  if (*pd != cert.terminal_pd) return fail(-1, "recorded terminal pd differs");
  v.pass = true;
  return v;
}

SearchResult search_certificate(Engine& engine, const GradedModule& m, const SearchOptions& opts) {
  SearchResult res;
  const int H = opts.H;
  Certificate cert;
  cert.H = H;
  cert.module = engine.resolve(m, H)->module;
  auto est = complexity(engine, cert.module, H);
  if (!est.value || (*est.value > 0 && !est.confident)) {
    res.diagnostic = "complexity of M is not finite and confident within H (" + est.describe() + ")";
    return res;
  }
  res.best_cx = est.value;
  Finder finder(engine, opts);
  GradedModule cur = cert.module;
  int cur_cx = *est.value;
  int cur_depth = depth(engine, cur).depth;
  for (int step = 0; cur_cx > 0; ++step) {
    auto c = finder.find(cur, cur_cx, cur_depth, step);
    res.classes_tried = finder.tried;
    if (finder.best_cx && (!res.best_cx || *finder.best_cx < *res.best_cx)) res.best_cx = finder.best_cx;
    if (!c) {
      std::ostringstream os;
      os << "no complexity-lowering class at step " << step + 1 << " after " << finder.tried
         << " classes; best complexity reached " << (res.best_cx ? std::to_string(*res.best_cx) : "none");
      res.diagnostic = os.str();
      return res;
    }
    auto next = engine.resolve(c->p.K, H)->module;
    cert.chain.push_back({c->eta, next, c->p.ses_verified});
    cur = next;
    cur_cx = *c->cx.value;
    cur_depth = c->depth;
  }
  fill_trails(engine, cert);
  res.classes_tried = finder.tried;
  res.certificate = std::move(cert);
  res.diagnostic = "found";
  return res;
}

Certificate syzygy_transport(Engine& engine, const Certificate& cert) {
  const auto& ring = cert.module.ring();
  if (ring_depth(engine, ring) != ring->krull_dim()) throw std::invalid_argument("ring is not Cohen-Macaulay");
  auto verdict = check_certificate(engine, cert.module, cert);
  if (!verdict.pass) throw std::invalid_argument("certificate invalid: " + verdict.describe());
  const auto& A = *ring;
  const int D = engine.config().max_degree;

  // Resolution of K_i that the class η_{i+1} (or the engine, for the last
  // module) was built on.
  auto base = [&](std::size_t i, int len) {
    if (i < cert.chain.size()) return at_least(cert.chain[i].eta.resolution, len);
    return engine.resolve(i == 0 ? cert.module : cert.chain[i - 1].K, len);
  };

  Certificate out;
  out.H = cert.H;
  int first_len = cert.chain.empty() ? 2 : cert.chain[0].eta.hdeg + 3;
  auto x_res = syzygy_resolution(*base(0, first_len), {});
  out.module = x_res->module;
  for (std::size_t i = 0; i < cert.chain.size(); ++i) {
    const auto& eta = cert.chain[i].eta;
    const int n = eta.hdeg, s = eta.internal_degree;
    ExtClass lifted = eta;
    lifted.resolution = at_least(eta.resolution, n + 3);
    auto g1 = lift_chain_map(lifted, 1).at(1);  // F_{n+1} -> F_1(s)
    const auto& xg = x_res->module.generator_degrees();
    Shifts tgt;
    for (int a : xg) tgt.push_back(a - s);
    ModuleMap f(ring, g1.source(), tgt);
    for (std::size_t r = 0; r < g1.rows(); ++r)
      for (std::size_t c = 0; c < g1.cols(); ++c)
        if (!g1(r, c).is_zero()) f.set(r, c, g1(r, c));
    auto theta = normalize(make_class(x_res, x_res->module, n, s, f));
    auto p = pushout(theta, D);

    int next_len = i + 1 < cert.chain.size() ? cert.chain[i + 1].eta.hdeg + 3 : 2;
    auto next_base = base(i + 1, next_len);
    auto omega1 = syzygy_resolution(*next_base, {})->module;
    auto [lo, hi] = window_for(A, all_generators({&p.K, &omega1}), D);
    auto q = free_from_series(A, p.K.hilbert_window(lo, hi) - omega1.hilbert_window(lo, hi), lo, hi);
    if (!q) throw std::logic_error("transported pushout is not Ω¹(K) plus a free module");
    x_res = syzygy_resolution(*next_base, *q);
    out.chain.push_back({theta, x_res->module, p.ses_verified});
  }
  fill_trails(engine, out);
  auto check = check_certificate(engine, out.module, out);
  if (!check.pass) throw std::logic_error("transported certificate does not verify: " + check.describe());
  return out;
}

bool betti_recurrence_holds(Engine& engine, const ExtClass& eta, const GradedModule& K, int from, int to) {
  auto rm = engine.resolve(eta.source(), to + eta.hdeg);
  auto rk = engine.resolve(K, to + 1);
  for (int i = from; i <= to; ++i)
    if (rk->betti(i + 1) != rm->betti(i + eta.hdeg) - rm->betti(i)) return false;
  return true;
}

bool is_complete_intersection(const QuotientRing& ring) {
  long gens = std::count_if(ring.ideal_gens().begin(), ring.ideal_gens().end(),
                            [](const Polynomial& p) { return !p.is_zero(); });
  return gens == static_cast<long>(ring.num_vars()) - ring.krull_dim();
}

ApproximationResult mcm_approximation(Engine& engine, const GradedModule& m_in, int H, const SearchOptions& opts) {
  const auto& ring = m_in.ring();
  const auto& A = *ring;
  if (!is_complete_intersection(A)) throw std::invalid_argument("ring is not a recognized complete intersection");
  const int D = engine.config().max_degree;
  ApproximationResult res;
  auto r = engine.resolve(m_in, std::max(H, 2));
  const GradedModule& M = r->module;
  if (is_mcm(engine, M)) {
    res.Y = GradedModule::zero(ring);
    res.C = M;
    res.map = ModuleMap(ring, {}, M.generator_degrees());
  } else {
    res.C = GradedModule::free(ring, r->free_module(0));
    res.Y = GradedModule(r->d(2));
    res.map = r->d(1);
  }
  for (;;) {
    auto mt = settle(engine, res.Y, H);
    res.Y = mt.module;
    res.map = compose(res.map, mt.from_minimal);
    if (pd_within(engine, res.Y, H)) break;
    if (res.iterations >= H) {
      res.diagnostic = "iteration cap reached";
      return res;
    }
    std::string why;
    auto step = reduce_towards_mcm(engine, res.Y, H, opts, why);
    if (!step) {
      res.diagnostic = why;
      return res;
    }
    // C' = (C ⊕ K) / {(ι(y), -j(y))}
    const auto& K = step->p.K;
    const auto& j = step->p.inclusion;
    const auto& cg = res.C.generator_degrees();
    const auto& kg = K.generator_degrees();
    Shifts gens = cg;
    gens.insert(gens.end(), kg.begin(), kg.end());
    const auto& rc = res.C.presentation();
    const auto& rk = K.presentation();
    Shifts src = rc.source();
    src.insert(src.end(), rk.source().begin(), rk.source().end());
    src.insert(src.end(), res.Y.generator_degrees().begin(), res.Y.generator_degrees().end());
    ModuleMap rel(ring, src, gens);
    std::size_t nc = cg.size(), col = 0;
    for (std::size_t c = 0; c < rc.cols(); ++c, ++col)
      for (std::size_t i = 0; i < nc; ++i)
        if (!rc(i, c).is_zero()) rel.set(i, col, rc(i, c));
    for (std::size_t c = 0; c < rk.cols(); ++c, ++col)
      for (std::size_t i = 0; i < kg.size(); ++i)
        if (!rk(i, c).is_zero()) rel.set(nc + i, col, rk(i, c));
    for (std::size_t c = 0; c < res.map.cols(); ++c, ++col) {
      for (std::size_t i = 0; i < nc; ++i)
        if (!res.map(i, c).is_zero()) rel.set(i, col, res.map(i, c));
      for (std::size_t i = 0; i < kg.size(); ++i)
        if (!j(i, c).is_zero()) rel.set(nc + i, col, A.poly().neg(j(i, c)));
    }
    ModuleMap into(ring, kg, gens);
    for (std::size_t i = 0; i < kg.size(); ++i) into.set(nc + i, i, A.poly().constant(1));
    auto ct = minimalize_tracked(GradedModule(rel));
    res.C = ct.module;
    res.map = compose(ct.to_minimal, into);
    res.Y = K;
    ++res.iterations;
  }

  auto [lo, hi] = window_for(A, all_generators({&res.Y, &res.C, &M}), D);
  auto coker = minimalize(GradedModule(hconcat(res.C.presentation(), res.map)));
  std::ostringstream why;
  res.ses_verified = true;
  if (!is_module_map(res.map, res.Y, res.C) || !is_injective_on(res.map, res.Y, res.C, lo, hi)) {
    res.ses_verified = false;
    why << "Y -> C is not injective; ";
  }
  if (!is_isomorphic(coker, M, engine.config().seed).isomorphic()) {
    res.ses_verified = false;
    why << "C / Y is not M; ";
  }
  if (!(res.C.hilbert_window(lo, hi) == res.Y.hilbert_window(lo, hi) + M.hilbert_window(lo, hi))) {
    res.ses_verified = false;
    why << "Hilbert series not additive; ";
  }
  auto dc = depth(engine, res.C);
  res.c_is_mcm = dc.is_mcm;
  res.depth_c = dc.depth;
  res.pd_y = pd_within(engine, res.Y, H);
  res.ok = res.ses_verified && res.c_is_mcm && res.pd_y.has_value();
  res.diagnostic = res.ok ? "approximation verified" : why.str();
  return res;
}

ApproximationResult fid_hull(Engine& engine, const GradedModule& m_in, int H, const SearchOptions& opts) {
  const auto& ring = m_in.ring();
  const auto& A = *ring;
  if (!is_complete_intersection(A)) throw std::invalid_argument("ring is not a recognized complete intersection");
  const int D = engine.config().max_degree;
  ApproximationResult res;
  const GradedModule M = engine.resolve(m_in, H)->module;
  res.Y = M;
  res.map = ModuleMap::identity(ring, M.generator_degrees());
  for (;;) {
    auto mt = settle(engine, res.Y, H);
    res.Y = mt.module;
    res.map = compose(mt.to_minimal, res.map);
    if (pd_within(engine, res.Y, H)) break;
    if (res.iterations >= H) {
      res.diagnostic = "iteration cap reached";
      return res;
    }
    std::string why;
    auto step = reduce_towards_mcm(engine, res.Y, H, opts, why);
    if (!step) {
      res.diagnostic = why;
      return res;
    }
    res.map = compose(step->p.inclusion, res.map);
    res.Y = step->p.K;
    ++res.iterations;
  }
  res.C = minimalize(GradedModule(hconcat(res.Y.presentation(), res.map)));

  auto [lo, hi] = window_for(A, all_generators({&res.Y, &res.C, &M}), D);
  std::ostringstream why;
  res.ses_verified = true;
  if (!is_module_map(res.map, M, res.Y) || !is_injective_on(res.map, M, res.Y, lo, hi)) {
    res.ses_verified = false;
    why << "M -> Y is not injective; ";
  }
  if (!(res.Y.hilbert_window(lo, hi) == M.hilbert_window(lo, hi) + res.C.hilbert_window(lo, hi))) {
    res.ses_verified = false;
    why << "Hilbert series not additive; ";
  }
  auto dc = depth(engine, res.C);
  res.c_is_mcm = dc.is_mcm;
  res.depth_c = dc.depth;
  res.pd_y = pd_within(engine, res.Y, H);
  res.ok = res.ses_verified && res.c_is_mcm && res.pd_y.has_value();
  res.diagnostic = res.ok ? "hull verified" : why.str();
  return res;
}

TorTransferResult tor_transfer(Engine& engine, const GradedModule& x, const GradedModule& y, int H,
                               const SearchOptions& opts) {
  if (!is_complete_intersection(*x.ring())) throw std::invalid_argument("ring is not a recognized complete intersection");
  auto full = tor_table(engine, x, y, H);
  for (int i = H / 2 + 1; i <= H; ++i)
    if (!full.vanishes(i))
      throw std::invalid_argument("Tor_" + std::to_string(i) + "(X, Y) does not vanish in the top half of the window");
  const int h = H / 2;
  TorTransferResult res;
  GradedModule side[2] = {engine.resolve(x, H)->module, engine.resolve(y, H)->module};
  const int depth0[2] = {depth(engine, side[0]).depth, depth(engine, side[1]).depth};
  for (int round = 0; round < 4 * H; ++round) {
    int k = !pd_within(engine, side[0], H) ? 0 : !pd_within(engine, side[1], H) ? 1 : -1;
    if (k < 0) break;
    GradedModule& a = side[k];
    const GradedModule& b = side[1 - k];
    auto est = complexity(engine, a, H);
    if (!est.value) {
      res.diagnostic = "complexity not bounded within H";
      break;
    }
    Finder finder(engine, opts);
    auto c = finder.find(a, *est.value, depth(engine, a).depth, round);
    if (!c) {
      res.diagnostic = "no complexity-lowering class";
      break;
    }
    const int n = c->eta.hdeg;
    std::optional<int> chosen;
    for (int t = 1; t * n - 1 <= H; ++t) {
      auto om = engine.omega(a, t * n - 1);
      auto tt = k == 0 ? tor_table(engine, om, b, h) : tor_table(engine, b, om, h);
      bool zero = true;
      for (int i = 1; i <= h; ++i) zero = zero && tt.vanishes(i);
      if (zero) {
        chosen = t;
        break;
      }
    }
    if (!chosen) {
      res.diagnostic = "no power of the class makes the syzygy Tor-independent within H";
      break;
    }
    a = engine.resolve(pushout(power(c->eta, *chosen), engine.config().max_degree).K, H)->module;
  }
  res.X = side[0];
  res.Y = side[1];
  auto after = tor_table(engine, res.X, res.Y, h);
  for (int i = 1; i <= h; ++i) {
    res.tor_before.push_back(full.total(i));
    res.tor_after.push_back(after.total(i));
  }
  res.tor_preserved = res.tor_before == res.tor_after;
  res.depths_preserved = depth(engine, res.X).depth == depth0[0] && depth(engine, res.Y).depth == depth0[1];
  res.finite_pd = pd_within(engine, res.X, H) && pd_within(engine, res.Y, H);
  if (res.diagnostic.empty())
    res.diagnostic = res.tor_preserved && res.depths_preserved && res.finite_pd ? "transfer verified" : "transfer incomplete";
  return res;
}

VanishingVerdict vanishing_window_verdict(Engine& engine, const Certificate& cert, const HomologyTable& table,
                                          const GradedModule& n) {
  auto v = check_certificate(engine, cert.module, cert);
  if (!v.pass) throw std::invalid_argument("certificate invalid: " + v.describe());
  return vanishing_window_verdict(table, cert.gap_length(), ring_depth(engine, cert.module.ring()),
                                  depth(engine, cert.module).depth, depth(engine, n).depth);
}

}  // namespace homcx
