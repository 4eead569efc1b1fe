#include "homcx/cli/run.hpp"

#include <sstream>

#include "homcx/cli/cache.hpp"
#include "homcx/homalg.hpp"
#include "homcx/reducible.hpp"

namespace homcx::cli {

namespace {

Json optional_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

Json module_json(const GradedModule& m) {
  const auto& P = m.ring()->poly();
  const auto& f = m.presentation();
  Json rows = Json::array();
  for (std::size_t i = 0; i < f.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < f.cols(); ++j) row.push_back(P.to_string(f(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"generator_degrees", f.target()}, {"relation_degrees", f.source()}, {"relations", rows}};
}

Json betti_json(const BettiTable& b) {
  Json graded = Json::array();
  for (const auto& [key, count] : b.graded) graded.push_back({key.first, key.second, count});
  return Json{{"betti", b.betti}, {"graded", graded}};
}

Json complexity_json(const ComplexityEstimate& c) {
  return Json{{"value", optional_int(c.value)},
              {"window", {c.n0, c.n1}},
              {"method", to_string(c.method)},
              {"confident", c.confident}};
}

Json table_json(const HomologyTable& t) {
  Json cells = Json::array();
  for (const auto& [key, dim] : t.dims) cells.push_back({key.first, key.second, dim});
  auto idx = sup_index(t);
  return Json{{"H", t.H},
              {"totals", t.totals},
              {"cells", cells},
              {"index", {{"value", optional_int(idx.value)}, {"at_least_H", idx.at_least_H}, {"text", idx.describe()}}}};
}

Json hilbert_json(const HilbertSeries& h) { return Json{{"start", h.start}, {"coefficients", h.coeffs}}; }

Json depth_value(int d) { return d == kInfiniteDepth ? Json("infinite") : Json(d); }

class Runner {
 public:
  Runner(const Session& s, const RunOptions& opts, std::shared_ptr<DiskCache> cache)
      : s_(s), cfg_(opts.config), engine_(opts.config, cache) {}

  Json record(const Command& c) {
    truncated_ = false;
    h_used_ = cfg_.max_hdeg;
    Json payload;
    bool failed = false;
    try {
      payload = dispatch(c);
    } catch (const std::exception& e) {
      payload = Json{{"error", c.loc.describe() + ": " + e.what()}};
      failed = true;
    }
    errors_ |= failed;
    return Json{{"command", print_statement(s_, c)},
                {"payload", std::move(payload)},
                {"provenance",
                 {{"max_degree", cfg_.max_degree}, {"max_hdeg", h_used_}, {"seed", cfg_.seed}, {"truncated", truncated_}}}};
  }

  bool errors() const { return errors_; }

 private:
  const Session& s_;
  Config cfg_;
  Engine engine_;
  bool truncated_ = false;
  bool errors_ = false;
  int h_used_ = 0;

  GradedModule arg(const Command& c, std::size_t i) const { return s_.module(c.args.at(i)); }

  static void same_ring(const GradedModule& a, const GradedModule& b) {
    if (!a.ring()->same_ring(*b.ring())) throw std::invalid_argument("the modules live over different rings");
  }

  Json dispatch(const Command& c) {
    switch (c.kind) {
      case CommandKind::Resolve: {
        h_used_ = c.number;
        auto r = engine_.resolve(arg(c, 0), c.number);
        auto j = betti_json(r->betti_table(c.number));
        j["pd"] = optional_int(r->projective_dimension());
        j["minimal_presentation"] = module_json(r->module);
        return j;
      }
      case CommandKind::Betti: {
        auto b = engine_.resolve(arg(c, 0), cfg_.max_hdeg)->betti_table(cfg_.max_hdeg);
        auto j = betti_json(b);
        j["complexity"] = complexity_json(estimate_complexity(b));
        return j;
      }
      case CommandKind::Ext:
      case CommandKind::Tor: {
        auto m = arg(c, 0), n = arg(c, 1);
        same_ring(m, n);
        auto t = c.kind == CommandKind::Ext ? ext_table(engine_, m, n, cfg_.max_hdeg)
                                             : tor_table(engine_, m, n, cfg_.max_hdeg);
        truncated_ = t.truncated;
        return table_json(t);
      }
      case CommandKind::Pushout: return pushout_payload(c);
      case CommandKind::Certify: return certify_payload(c);
      case CommandKind::Mcm: {
        auto a = mcm_approximation(engine_, arg(c, 0), cfg_.max_hdeg, search_options());
        return Json{{"ok", a.ok},
                    {"iterations", a.iterations},
                    {"Y", module_json(a.Y)},
                    {"C", module_json(a.C)},
                    {"depth_C", a.depth_c},
                    {"C_is_mcm", a.c_is_mcm},
                    {"pd_Y", optional_int(a.pd_y)},
                    {"ses_verified", a.ses_verified},
                    {"diagnostic", a.diagnostic}};
      }
      case CommandKind::Depth: {
        auto d = depth(engine_, arg(c, 0));
        return Json{{"depth", depth_value(d.depth)}, {"dim", d.dim}, {"is_mcm", d.is_mcm}};
      }
      case CommandKind::Period: {
        auto p = detect_period(engine_, arg(c, 0), cfg_.max_hdeg);
        if (!p) return Json{{"period", nullptr}, {"searched_up_to", cfg_.max_hdeg}};
        return Json{{"period", p->period}, {"shift", p->shift}, {"searched_up_to", cfg_.max_hdeg}};
      }
    }
    throw std::logic_error("unknown command");
  }

  SearchOptions search_options() const {
    SearchOptions o;
    o.H = cfg_.max_hdeg;
    return o;
  }

  Json class_json(const ExtClass& eta) {
    const auto& P = eta.target.ring()->poly();
    Json cocycle = Json::array();
    for (std::size_t i = 0; i < eta.cocycle.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < eta.cocycle.cols(); ++j) row.push_back(P.to_string(eta.cocycle(i, j)));
      cocycle.push_back(std::move(row));
    }
    return Json{{"hdeg", eta.hdeg}, {"internal_degree", eta.internal_degree}, {"cocycle", cocycle}};
  }

  Json pushout_payload(const Command& c) {
    auto m = arg(c, 0);
    auto basis = ext_class_basis(engine_, m, c.number);
    int j = c.class_index.value_or(0);
    if (j < 0 || j >= static_cast<int>(basis.size()))
      throw std::out_of_range("class " + std::to_string(j) + " requested but Ext^" + std::to_string(c.number) +
                              "(" + c.args[0] + ", " + c.args[0] + ") has " + std::to_string(basis.size()) + " basis classes in the window");
    auto po = pushout(basis[static_cast<std::size_t>(j)], cfg_.max_degree);
    auto top = po.K.ring()->is_artinian() ? po.window_hi : cfg_.max_degree;
    return Json{{"classes_available", basis.size()},
                {"class", class_json(basis[static_cast<std::size_t>(j)])},
                {"K", module_json(po.K)},
                {"K_hilbert", hilbert_json(po.K.hilbert_window(po.window_lo, top))},
                {"ses_verified", po.ses_verified},
                {"diagnostic", po.diagnostic}};
  }

  Json certify_payload(const Command& c) {
    auto m = arg(c, 0);
    auto res = search_certificate(engine_, m, search_options());
    Json j{{"found", res.certificate.has_value()},
           {"classes_tried", res.classes_tried},
           {"diagnostic", res.diagnostic}};
    if (!res.certificate) {
      j["best_cx"] = optional_int(res.best_cx);
      return j;
    }
    const auto& cert = *res.certificate;
    Json links = Json::array();
    for (const auto& link : cert.chain)
      links.push_back({{"class", class_json(link.eta)}, {"K", module_json(link.K)}, {"ses_verified", link.ses_verified}});
    Json cx = Json::array();
    for (const auto& e : cert.cx_trail) cx.push_back(complexity_json(e));
    Json depths = Json::array();
    for (int d : cert.depth_trail) depths.push_back(depth_value(d));
    j["chain_length"] = cert.chain.size();
    j["chain"] = links;
    j["cx_trail"] = cx;
    j["depth_trail"] = depths;
    j["terminal_pd"] = cert.terminal_pd;
    j["gap_length"] = cert.gap_length();
    j["H"] = cert.H;
    j["verdict"] = check_certificate(engine_, m, cert).describe();
    return j;
  }
};

void render_value(std::ostringstream& os, const Json& v, const std::string& indent) {
  for (auto it = v.begin(); it != v.end(); ++it) {
    const auto& x = it.value();
    if (x.is_object()) {
      os << indent << it.key() << ":\n";
      render_value(os, x, indent + "  ");
    } else if (x.is_array() && !x.empty() && x.front().is_object()) {
      int k = 0;
      for (const auto& item : x) {
        os << indent << it.key() << "[" << k++ << "]:\n";
        render_value(os, item, indent + "  ");
      }
    } else {
      os << indent << it.key() << ": " << (x.is_string() ? x.get<std::string>() : x.dump()) << "\n";
    }
  }
}

}  // namespace

RunOutput run_session(const Session& s, const RunOptions& opts) {
  std::shared_ptr<DiskCache> cache;
  if (opts.cache_dir) cache = std::make_shared<DiskCache>(*opts.cache_dir);
  Runner runner(s, opts, cache);
  Json records = Json::array();
  for (const auto* c : s.commands()) records.push_back(runner.record(*c));

  RunOutput out;
  out.had_errors = runner.errors();
  out.document = Json{{"schema", kSchema},
                      {"config",
                       {{"max_degree", opts.config.max_degree},
                        {"max_hdeg", opts.config.max_hdeg},
                        {"seed", opts.config.seed}}},
                      {"records", std::move(records)},
                      {"cache",
                       {{"enabled", cache != nullptr},
                        {"hits", cache ? cache->hits() : 0},
                        {"misses", cache ? cache->misses() : 0}}}};
  if (cache) out.warnings = cache->warnings();
  return out;
}

std::string render_text(const Json& document) {
  std::ostringstream os;
  for (const auto& rec : document.at("records")) {
    os << "> " << rec.at("command").get<std::string>() << "\n";
    const auto& payload = rec.at("payload");
    if (payload.contains("betti")) {
      os << "  betti:";
      for (const auto& b : payload.at("betti")) os << " " << b.dump();
      os << "\n";
    }
    Json rest = Json::object();
    for (auto it = payload.begin(); it != payload.end(); ++it)
      if (it.key() != "betti" && it.key() != "graded") rest[it.key()] = it.value();
    render_value(os, rest, "  ");
    const auto& p = rec.at("provenance");
    os << "  [D=" << p.at("max_degree").dump() << " H=" << p.at("max_hdeg").dump() << " seed=" << p.at("seed").dump()
       << (p.at("truncated").get<bool>() ? " truncated" : "") << "]\n";
  }
  const auto& cache = document.at("cache");
  if (cache.at("enabled").get<bool>())
    os << "cache: " << cache.at("hits").dump() << " hits, " << cache.at("misses").dump() << " misses\n";
  return os.str();
}

}  // namespace homcx::cli
