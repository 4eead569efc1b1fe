// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "homcx/cli/run.hpp"
#include "homcx/homalg.hpp"
#include "homcx/reducible.hpp"
#include "oracles.hpp"

using namespace homcx;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

/// Collects failed expectations; a criterion passes when none were recorded.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok && failures_.size() < 8) failures_.push_back(what);
    failed_ |= !ok;
  }
  bool passed() const { return !failed_; }
  int count() const { return count_; }
  std::string summary() const {
    std::string s;
    for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + f;
    return s;
  }
  void note(const std::string& n) { notes_ += (notes_.empty() ? "" : ", ") + n; }
  const std::string& notes() const { return notes_; }

 private:
  bool failed_ = false;
  int count_ = 0;
  std::vector<std::string> failures_;
  std::string notes_;
};

std::string show(const std::vector<long>& v) {
  std::string s;
  for (long x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "(" + s + ")";
}

std::optional<int> cx_of(Engine& eng, const GradedModule& m, int H) {
  return estimate_complexity(eng.resolve(m, H)->betti_table()).value;
}

bool free_of_rank(const GradedModule& m, std::size_t r) {
  return m.num_generators() == r && m.presentation().cols() == 0;
}

// ---------------------------------------------------------------------------

void criterion_periodic_module(Check& c) {
  auto t0 = Clock::now();
  Engine eng;
  auto G = fixtures::gasharov_ring();
  auto M = fixtures::gasharov_module(G);
  auto r = eng.resolve(M, 12);
  auto b = r->betti_table(12).betti;
  c.expect(b == std::vector<long>(13, 2), "betti " + show(b));
  auto period = detect_period(eng, M, 12);
  c.expect(period && period->period == 3, "period");
  auto found = search_certificate(eng, M);
  c.expect(found.certificate.has_value(), "no certificate: " + found.diagnostic);
  if (found.certificate) {
    const auto& cert = *found.certificate;
    c.expect(cert.chain.size() == 1, "chain length " + std::to_string(cert.chain.size()));
    c.expect(free_of_rank(cert.terminal(), 2), "K is not free of rank 2");
    c.expect(check_certificate(eng, M, cert).pass, "certificate does not re-verify");
  }
  double dt = seconds_since(t0);
  c.expect(dt < 60.0, "runtime " + std::to_string(dt) + " s");
  c.note("betti " + show(b) + ", period " + (period ? std::to_string(period->period) : "none"));
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << dt << " s";
  c.note(os.str());
}

void criterion_complete_intersection(Check& c) {
  Engine eng;
  auto C = fixtures::two_var_ring(5, "x2,y2");
  auto k = GradedModule::residue_field(C);
  auto oracle = oracle::monomial_algebra_betti_of_k(C->field(), 2, {{2, 0}, {0, 2}}, 10);
  auto b = eng.resolve(k, 10)->betti_table(10).betti;
  std::vector<long> expect;
  for (int i = 0; i <= 10; ++i) expect.push_back(i + 1);
  c.expect(oracle == expect, "dense oracle " + show(oracle));
  c.expect(b == oracle, "betti " + show(b));

  auto cx = estimate_complexity(eng.resolve(k, 12)->betti_table());
  c.expect(cx.value == 2 && cx.confident, "complexity " + cx.describe());

  auto found = search_certificate(eng, k);
  c.expect(found.certificate.has_value(), "no certificate: " + found.diagnostic);
  if (found.certificate) {
    const auto& cert = *found.certificate;
    std::vector<int> cxs;
    for (const auto& e : cert.cx_trail) cxs.push_back(e.value.value_or(-1));
    c.expect(cert.chain.size() == 2, "chain length " + std::to_string(cert.chain.size()));
    c.expect(cxs == std::vector<int>{2, 1, 0}, "complexity trail");
    c.expect(cert.depth_trail == std::vector<int>{0, 0, 0}, "depth trail");
    c.expect(check_certificate(eng, k, cert).pass, "certificate does not re-verify");
  }
  auto ext = ext_table(eng, k, k, 10);
  for (int n = 1; 2 * n <= 10; ++n) c.expect(!ext.vanishes(2 * n), "Ext^" + std::to_string(2 * n) + "(k,k) = 0");
  c.note("betti " + show(b) + ", cx 2, chain 2 -> 1 -> 0");
}

void criterion_vanishing_verdicts(Check& c) {
  Engine eng;
  auto C = fixtures::two_var_ring(5, "x2,y2");
  fixtures::Vars v{C->poly()};
  auto M = GradedModule::cyclic(C, {v(0)});
  auto N = GradedModule::cyclic(C, {v(1)});
  auto ext = ext_table(eng, M, N, 10);
  auto tor = tor_table(eng, M, N, 10);
  for (int i = 1; i <= 10; ++i) {
    c.expect(ext.vanishes(i), "Ext^" + std::to_string(i) + " != 0");
    c.expect(tor.vanishes(i), "Tor_" + std::to_string(i) + " != 0");
  }
  int dA = ring_depth(eng, C), dM = depth(eng, M).depth, dN = depth(eng, N).depth;
  c.expect(p_index(ext).value == 0 && !p_index(ext).at_least_H, "p = " + p_index(ext).describe());
  c.expect(q_index(tor).value == 0 && !q_index(tor).at_least_H, "q = " + q_index(tor).describe());
  c.expect(dA - dM == 0, "depth A - depth M");

  auto found = search_certificate(eng, M);
  c.expect(found.certificate.has_value(), "no certificate for M");
  bool certified = false;
  if (found.certificate) {
    certified = check_certificate(eng, M, *found.certificate).pass;
    auto ve = vanishing_window_verdict(eng, *found.certificate, ext, N);
    auto vt = vanishing_window_verdict(eng, *found.certificate, tor, N);
    c.expect(ve.finite && ve.consistent && ve.predicted_lo == 0, "Ext verdict " + ve.describe());
    c.expect(vt.finite && vt.consistent && vt.predicted_lo == 0, "Tor verdict " + vt.describe());
    c.note("window length " + std::to_string(found.certificate->gap_length()));
  }
  auto df = depth_formula_check(eng, M, N, certified, 10);
  c.expect(df.preconditions_met && df.holds, "depth formula " + df.describe());
  c.expect(df.depth_m + df.depth_n == 0 && df.depth_ring + df.depth_tensor == 0, "depth formula values");
  c.note("depths M " + std::to_string(dM) + ", N " + std::to_string(dN) + ", A " + std::to_string(dA));
}

void criterion_nonvanishing_control(Check& c) {
  Engine eng;
  auto X = fixtures::two_var_ring(5, "xy");
  fixtures::Vars v{X->poly()};
  auto M = GradedModule::cyclic(X, {v(0)});
  auto N = GradedModule::cyclic(X, {v(1)});
  auto tor = tor_table(eng, M, N, 10);
  // F_i = A(-i) with d_i = x for odd i, y for even i; over A/(y) = k[x] the
  // complex is k[x](-i) with maps x and 0 alternately, so Tor_{2j} = k in
  // degree 2j and Tor_{2j+1} = 0.
  for (int j = 1; j <= 4; ++j) {
    std::map<std::pair<int, int>, long> even, odd;
    for (const auto& [key, d] : tor.dims) {
      if (key.first == 2 * j) even[key] = d;
      if (key.first == 2 * j + 1) odd[key] = d;
    }
    c.expect(even == std::map<std::pair<int, int>, long>{{{2 * j, 2 * j}, 1}}, "Tor_" + std::to_string(2 * j));
    c.expect(odd.empty(), "Tor_" + std::to_string(2 * j + 1));
  }
  auto q = q_index(tor);
  c.expect(q.at_least_H, "q = " + q.describe());
  auto df = depth_formula_check(eng, M, N, true, 10);
  c.expect(!df.preconditions_met && !df.failed_preconditions.empty(), "depth formula preconditions reported as met");
  c.note("q " + q.describe());
}

/// Structural checks on one resolution; returns violations.
int structural_violations(Engine& eng, const GradedModule& m, int H, int D) {
  int bad = 0;
  auto r = eng.resolve(m, H);
  const auto& A = *m.ring();
  const auto& F = A.field();
  for (int i = 1; i <= r->length(); ++i) {
    bad += r->d(i).has_unit_entry();
    if (i < r->length()) bad += !compose(r->d(i), r->d(i + 1)).is_zero();
  }
  int lo = m.min_generator_degree().value_or(0) - 1;
  for (int i = 1; i < r->length(); ++i)
    for (int e = lo; e <= D; ++e) {
      auto di = r->d(i).degree_matrix(e);
      auto dn = r->d(i + 1).degree_matrix(e);
      bad += static_cast<long>(di.cols()) - static_cast<long>(rank(F, di)) != static_cast<long>(rank(F, dn));
    }
  int h = std::min(H, 6);
  auto ext = ext_table(eng, m, GradedModule::residue_field(m.ring()), h);
  for (int i = 0; i <= h; ++i) bad += ext.total(i) != r->betti(i);
  return bad;
}

void criterion_structure(Check& c) {
  Engine eng;
  const int D = 12;
  int resolutions = 0, pushouts = 0, links = 0;
  std::vector<std::pair<std::string, GradedModule>> modules;
  std::vector<int> bounds;
  for (const auto& fx : fixtures::module_zoo()) {
    modules.emplace_back(fx.name, fx.module);
    bounds.push_back(fx.H);
  }
  // Pushouts of basis classes in low degrees, with their modules resolved too.
  for (const auto& fx : fixtures::module_zoo()) {
    if (fx.name == "gasharov k") continue;
    for (int n = 1; n <= 3; ++n) {
      auto basis = ext_class_basis(eng, fx.module, n);
      for (std::size_t i = 0; i < basis.size() && i < 4; ++i) {
        auto p = pushout(basis[i]);
        ++pushouts;
        int lo = p.window_lo, hi = p.window_hi;
        c.expect(p.ses_verified, fx.name + ": pushout exactness");
        c.expect(p.K.hilbert_window(lo, hi) == fx.module.hilbert_window(lo, hi) + p.quotient.hilbert_window(lo, hi),
                 fx.name + ": Hilbert additivity");
        if (i == 0) {
          modules.emplace_back(fx.name + " pushout", p.K);
          bounds.push_back(std::min(fx.H, 6));
        }
      }
    }
    // Certificates found by the search, link by link.
    SearchOptions opts;
    opts.H = fx.H + 2;
    auto found = search_certificate(eng, fx.module, opts);
    if (!found.certificate) continue;
    const auto& cert = *found.certificate;
    c.expect(check_certificate(eng, fx.module, cert).pass, fx.name + ": certificate re-verification");
    for (const auto& link : cert.chain) {
      ++links;
      c.expect(betti_recurrence_holds(eng, link.eta, link.K, 1, cert.H - link.eta.hdeg),
               fx.name + ": Betti recurrence");
      modules.emplace_back(fx.name + " link", link.K);
      bounds.push_back(std::min(fx.H, 6));
    }
  }
  for (std::size_t i = 0; i < modules.size(); ++i) {
    ++resolutions;
    int bad = structural_violations(eng, modules[i].second, bounds[i], D);
    c.expect(bad == 0, modules[i].first + ": " + std::to_string(bad) + " violations");
  }
  c.note(std::to_string(resolutions) + " resolutions, " + std::to_string(pushouts) + " pushouts, " +
         std::to_string(links) + " certificate links");
}

void criterion_approximations(Check& c) {
  Engine eng;
  auto X = fixtures::two_var_ring(5, "xy");
  auto k = GradedModule::residue_field(X);
  auto a = mcm_approximation(eng, k, 10);
  c.expect(a.ok && a.ses_verified, "approximation: " + a.diagnostic);
  c.expect(a.depth_c == 1 && X->krull_dim() == 1 && a.c_is_mcm, "depth C = " + std::to_string(a.depth_c));
  c.expect(a.pd_y.has_value(), "no zero Betti number of Y within H = 10");
  auto h = fid_hull(eng, k, 10);
  c.expect(h.ok && h.ses_verified && h.c_is_mcm && h.pd_y.has_value(), "hull: " + h.diagnostic);

  int powers = 0;
  auto C = fixtures::two_var_ring(5, "x2,y2");
  auto L = fixtures::one_var_ring(5, 2);
  fixtures::Vars v{C->poly()};
  for (const auto& M : {GradedModule::residue_field(C), GradedModule::cyclic(C, {v(0)}), GradedModule::residue_field(L),
                        GradedModule::residue_field(X)}) {
    for (int n = 1; n <= 2; ++n)
      for (const auto& eta : ext_class_basis(eng, M, n)) {
        auto base = cx_of(eng, pushout(eta).K, 8);
        if (!base) continue;
        for (int t = 1; t <= 3; ++t) {
          auto cx = cx_of(eng, pushout(power(eta, t)).K, 8);
          ++powers;
          c.expect(cx && *cx <= *base, "cx of a power rises");
        }
      }
  }
  c.note("Y pd " + (a.pd_y ? std::to_string(*a.pd_y) : std::string("?")) + ", depth C " + std::to_string(a.depth_c) +
         ", " + std::to_string(powers) + " power checks");
}

void criterion_lemma_bookkeeping(Check& c) {
  Engine eng;
  auto C = fixtures::two_var_ring(5, "x2,y2");
  auto X = fixtures::two_var_ring(5, "xy");
  auto L = fixtures::one_var_ring(5, 2);
  auto Q = fixtures::two_var_ring(5, "xy,x2-y2");
  std::string counts;
  for (const auto& [name, ring] : std::vector<std::pair<std::string, RingPtr>>{
           {"x2,y2", C}, {"xy", X}, {"x2", L}, {"xy,x2-y2", Q}}) {
    fixtures::Vars v{ring->poly()};
    std::vector<GradedModule> mods{GradedModule::residue_field(ring), GradedModule::cyclic(ring, {v(0)})};
    int pairs = 0;
    for (const auto& M : mods) {
      std::vector<ExtClass> classes;
      for (int n = 1; n <= 2; ++n)
        for (const auto& e : ext_class_basis(eng, M, n))
          if (!is_zero_class(e) && classes.size() < 4) classes.push_back(e);
      for (const auto& t1 : classes)
        for (const auto& t2 : classes) {
          auto rep = product_bookkeeping(eng, t1, t2);
          ++pairs;
          bool nonneg = std::all_of(rep.free_ranks.begin(), rep.free_ranks.end(),
                                    [](const auto& kv) { return kv.second >= 0; });
          c.expect(rep.consistent && nonneg, name + ": " + rep.diagnostic);
        }
    }
    c.expect(pairs >= 5, name + ": only " + std::to_string(pairs) + " pairs");
    counts += (counts.empty() ? "" : ", ") + name + " " + std::to_string(pairs);
  }
  c.note("pairs per ring: " + counts);
}

void criterion_symmetry(Check& c) {
  Engine eng;
  const int H = 8;
  std::vector<std::vector<GradedModule>> pools;
  for (const auto& which : {"x2,y2", "xy", "xy,x2-y2"}) {
    auto R = fixtures::two_var_ring(5, which);
    fixtures::Vars v{R->poly()};
    auto k = GradedModule::residue_field(R);
    pools.push_back({k, GradedModule::cyclic(R, {v(0)}), GradedModule::cyclic(R, {v(1)}),
                     GradedModule::cyclic(R, {v.add(v(0), v(1))}), GradedModule::free(R, {0}), eng.omega(k, 1)});
  }
  auto L = fixtures::one_var_ring(5, 3);
  pools.push_back({GradedModule::residue_field(L), GradedModule::cyclic(L, {L->poly().pow(L->poly().variable(0), 2)}),
                   GradedModule::free(L, {0})});

  std::vector<std::pair<GradedModule, GradedModule>> pairs;
  for (const auto& pool : pools)
    for (std::size_t i = 0; i < pool.size(); ++i)
      for (std::size_t j = i + 1; j < pool.size(); ++j) pairs.emplace_back(pool[i], pool[j]);
  std::mt19937_64 rng(0x5eed);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  pairs.resize(std::min<std::size_t>(pairs.size(), 24));

  auto top_half_vanishes = [&](const GradedModule& a, const GradedModule& b) {
    auto t = ext_table(eng, a, b, H);
    for (int i = H / 2 + 1; i <= H; ++i)
      if (!t.vanishes(i)) return false;
    return true;
  };
  int agree = 0, both_vanish = 0;
  for (const auto& [m, n] : pairs) {
    bool mn = top_half_vanishes(m, n), nm = top_half_vanishes(n, m);
    c.expect(mn == nm, "asymmetric pair");
    agree += mn == nm;
    both_vanish += mn && nm;
  }
  c.expect(pairs.size() >= 20, "fewer than 20 pairs");
  c.note(std::to_string(agree) + "/" + std::to_string(pairs.size()) + " pairs agree, " + std::to_string(both_vanish) +
         " vanish on both sides");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_cli(Check& c) {
  using namespace homcx::cli;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(HOMCX_SESSIONS_DIR)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    auto s = parse_session(slurp(f));
    c.expect(same_ast(s, parse_session(print_session(s))), f.filename().string() + ": round trip");
    c.expect(run_session(s, {}).document.dump() == run_session(s, {}).document.dump(),
             f.filename().string() + ": output differs between runs");
  }

  auto session = parse_session(slurp(fs::path(HOMCX_SESSIONS_DIR) / "gasharov.hx"));
  auto base = fs::temp_directory_path() / ("homcx-acceptance-" + std::to_string(::getpid()));
  std::vector<double> cold, warm;
  Json cold_records, warm_records;
  for (int rep = 0; rep < 3; ++rep) {
    fs::remove_all(base);
    RunOptions opts;
    opts.cache_dir = base.string();
    auto t0 = Clock::now();
    auto a = run_session(session, opts);
    cold.push_back(seconds_since(t0));
    t0 = Clock::now();
    auto b = run_session(session, opts);
    warm.push_back(seconds_since(t0));
    cold_records = a.document.at("records");
    warm_records = b.document.at("records");
    c.expect(b.document.at("cache").at("misses") == 0, "warm run missed the cache");
  }
  fs::remove_all(base);
  c.expect(cold_records == warm_records, "warm records differ from cold records");
  std::sort(cold.begin(), cold.end());
  std::sort(warm.begin(), warm.end());
  double speedup = cold[1] / warm[1];
  c.expect(speedup >= 2.0, "warm speedup " + std::to_string(speedup));
  std::ostringstream os;
  os.precision(1);
  os << std::fixed << files.size() << " sessions, warm cache " << speedup << "x faster";
  c.note(os.str());
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    std::function<void(Check&)> run;
  };
  std::vector<Criterion> criteria{
      {1, "periodic module: Betti numbers, period, certificate", criterion_periodic_module},
      {2, "complete intersection: residue field", criterion_complete_intersection},
      {3, "vanishing verdicts over the complete intersection", criterion_vanishing_verdicts},
      {4, "non-vanishing control over k[x,y]/(xy)", criterion_nonvanishing_control},
      {5, "structural properties of resolutions, pushouts and links", criterion_structure},
      {6, "approximations and powers", criterion_approximations},
      {7, "extension-product bookkeeping", criterion_lemma_bookkeeping},
      {8, "Ext vanishing symmetry on Gorenstein rings", criterion_symmetry},
      {9, "CLI determinism, round trip and cache", criterion_cli},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    auto t0 = Clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::ostringstream line;
    line.precision(2);
    line << "criterion " << cr.id << " " << (c.passed() ? "PASS" : "FAIL") << ": " << cr.name << " ["
         << (c.passed() ? c.notes() : c.summary()) << "; " << c.count() << " checks, " << std::fixed
         << seconds_since(t0) << " s]";
    std::cout << line.str() << std::endl;
    failed += !c.passed();
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}
