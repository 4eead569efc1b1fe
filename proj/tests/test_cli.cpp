#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "fixtures.hpp"
#include "homcx/cli/cache.hpp"
#include "homcx/cli/run.hpp"

using namespace homcx;
using namespace homcx::cli;
namespace fs = std::filesystem;

namespace {

const char* kGasharov =
    "ring A = GF(7)[x1,x2,x3,x4] / <x1^2,x2^2,x3^2,x4^2,x3*x4,x1*x4+x2*x4,2*x1*x3+x2*x3>; "
    "module M = coker [[x1,2*x3+x4],[0,x2]]; resolve M to 12; betti M; certify M;";

std::vector<fs::path> fixture_sessions() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(HOMCX_SESSIONS_DIR)) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParseError parse_failure(const std::string& text) {
  try {
    parse_session(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("parse succeeded: " << text);
  return ParseError({}, "");
}

fs::path scratch_dir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("homcx-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

bool same_resolution(const Resolution& a, const Resolution& b) {
  if (!(a.module.presentation() == b.module.presentation()) || a.diffs.size() != b.diffs.size() ||
      a.max_degree != b.max_degree)
    return false;
  for (std::size_t i = 0; i < a.diffs.size(); ++i)
    if (!(a.diffs[i] == b.diffs[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("parse the periodic-module session") {
  auto s = parse_session(kGasharov);
  CHECK(s.count_rings() == 1);
  CHECK(s.count_modules() == 1);
  REQUIRE(s.commands().size() == 3);
  CHECK(s.commands()[0]->kind == CommandKind::Resolve);
  CHECK(s.commands()[0]->number == 12);
  CHECK(s.commands()[2]->kind == CommandKind::Certify);

  auto M = s.module("M");
  CHECK(M.generator_degrees() == Shifts{0, 0});
  CHECK(M.presentation().source() == Shifts{1, 1});
  CHECK(M.presentation() == fixtures::gasharov_module(fixtures::gasharov_ring()).presentation());
}

TEST_CASE("empty and comment-only input") {
  CHECK(parse_session("").statements.empty());
  CHECK(parse_session("  # nothing here\n\n").statements.empty());
}

TEST_CASE("parse errors carry locations") {
  auto e = parse_failure("betti M;");
  CHECK(e.location().line == 1);
  CHECK(e.location().column == 7);
  CHECK(std::string(e.what()).find("undeclared identifier 'M'") != std::string::npos);

  e = parse_failure("ring A = GF(5)[x,y] / <x^2>\nbetti A;");
  CHECK(e.location().line == 2);
  CHECK(e.location().column == 1);
  CHECK(e.expected() == std::vector<std::string>{"';'"});

  e = parse_failure("ring A = GF(5)[x,y] / <x^2>;\nmodule M = coker [[x, y + x^2]];");
  CHECK(e.location().line == 2);
  CHECK(e.location().column == 23);
  CHECK(std::string(e.what()).find("non-homogeneous") != std::string::npos);

  e = parse_failure("ring A = GF(5)[x,y] / <x^2 + y>;");
  CHECK(e.location().column == 24);

  e = parse_failure("ring A = GF(6)[x] / <>;");
  CHECK(e.location().column == 13);

  e = parse_failure("ring A = GF(5)[x,y] / <>;\nmodule M = coker [[x, y], [y, x^2]];");
  CHECK(std::string(e.what()).find("inconsistent") != std::string::npos);

  e = parse_failure("ring A = GF(5)[x] / <>;\nring A = GF(5)[y] / <>;");
  CHECK(e.location().line == 2);
  CHECK(e.location().column == 6);

  e = parse_failure("module M = coker [[1]];");
  CHECK(std::string(e.what()).find("before any ring") != std::string::npos);

  e = parse_failure("ring A = GF(5)[x] / <>; pushout A deg 1 x;");
  CHECK(e.expected() == std::vector<std::string>{"'class'", "';'"});

  e = parse_failure("ring A = GF(5)[x] / <z>;");
  CHECK(std::string(e.what()).find("unknown variable 'z'") != std::string::npos);
}

TEST_CASE("degree inference") {
  auto s = parse_session("ring A = GF(5)[x,y] / <x^2>; module N = coker [[x, y^2], [0, 0]];");
  auto N = s.module("N");
  CHECK(N.generator_degrees() == Shifts{0, 0});
  CHECK(N.presentation().source() == Shifts{1, 2});

  // A second generator tied to the first through a linear entry.
  s = parse_session("ring A = GF(5)[x,y] / <>; module N = coker [[y, 0], [x^2, x]];");
  N = s.module("N");
  CHECK(N.generator_degrees() == Shifts{1, 0});
  CHECK(N.presentation().source() == Shifts{2, 1});

  // Entries are read modulo the ideal, so x^2 imposes nothing here.
  s = parse_session("ring A = GF(5)[x,y] / <x^2>; module N = coker [[x^2, y]];");
  CHECK(s.module("N").presentation().source() == Shifts{0, 1});

  // A ring name denotes the free module of rank one.
  CHECK(s.module("A").generator_degrees() == Shifts{0});
}

TEST_CASE("parse, print, parse is the identity on every fixture session") {
  auto files = fixture_sessions();
  REQUIRE(files.size() >= 5);
  for (const auto& f : files) {
    CAPTURE(f.filename().string());
    auto a = parse_session(slurp(f));
    auto text = print_session(a);
    auto b = parse_session(text);
    CHECK(same_ast(a, b));
    CHECK(print_session(b) == text);
  }
  auto a = parse_session("ring R = GF(3)[a,b] / <-(a - b)^2 + 2*a*b, a^3>; module Q = coker [[a + b, -b]];");
  CHECK(same_ast(a, parse_session(print_session(a))));
  CHECK_FALSE(same_ast(a, parse_session("ring R = GF(3)[a,b] / <a^2 + b^2, a^3>; module Q = coker [[a + b, b]];")));
}

TEST_CASE("run the periodic-module session") {
  RunOptions opts;
  auto out = run_session(parse_session(kGasharov), opts);
  CHECK_FALSE(out.had_errors);
  const auto& recs = out.document.at("records");
  REQUIRE(recs.size() == 3);
  CHECK(recs[0].at("command") == "resolve M to 12;");
  CHECK(recs[0].at("payload").at("betti") == std::vector<long>(13, 2));
  CHECK(recs[1].at("payload").at("betti") == std::vector<long>(13, 2));
  CHECK(recs[1].at("payload").at("complexity").at("value") == 1);
  const auto& cert = recs[2].at("payload");
  CHECK(cert.at("found") == true);
  CHECK(cert.at("chain_length") == 1);
  CHECK(cert.at("verdict") == "pass");
  CHECK(cert.at("chain")[0].at("K").at("generator_degrees").size() == 2);
  CHECK(cert.at("chain")[0].at("K").at("relation_degrees").empty());
  for (const auto& r : recs) {
    const auto& p = r.at("provenance");
    CHECK(p.at("max_degree") == opts.config.max_degree);
    CHECK(p.at("seed") == opts.config.seed);
    CHECK(p.at("truncated") == false);
  }
  CHECK(recs[0].at("provenance").at("max_hdeg") == 12);
  CHECK(out.document.at("schema") == kSchema);
}

TEST_CASE("run: free module, errors and ring mismatch") {
  auto out = run_session(parse_session("ring A = GF(5)[x,y] / <x*y>; resolve A to 5;"), {});
  const auto& p = out.document.at("records")[0].at("payload");
  CHECK(p.at("betti") == std::vector<long>{1, 0, 0, 0, 0, 0});
  CHECK(p.at("pd") == 0);
  CHECK(out.document.at("records")[0].at("provenance").at("max_hdeg") == 5);

  out = run_session(parse_session("ring A = GF(5)[x] / <>;\npushout A deg 1;\ndepth A;"), {});
  CHECK(out.had_errors);
  const auto& recs = out.document.at("records");
  REQUIRE(recs.size() == 2);
  auto msg = recs[0].at("payload").at("error").get<std::string>();
  CHECK(msg.rfind("line 2, column 1:", 0) == 0);
  CHECK(recs[1].at("payload").at("depth") == 1);

  out = run_session(parse_session("ring A = GF(5)[x] / <>; ring B = GF(7)[x] / <>; tor A B;"), {});
  CHECK(out.had_errors);
}

TEST_CASE("cache round trip, misses and corruption") {
  auto dir = scratch_dir("cache");
  auto A = fixtures::two_var_ring(5, "x2,y2");
  auto k = GradedModule::residue_field(A);
  DiskCache cache(dir);
  CHECK_FALSE(cache.load(k, 6, 16).has_value());
  CHECK(cache.misses() == 1);

  auto r = resolution(k, 6, 16);
  cache.save(k, 6, r);
  auto back = cache.load(k, 6, 16);
  REQUIRE(back.has_value());
  CHECK(same_resolution(*back, r));
  CHECK(cache.hits() == 1);

  CHECK_FALSE(cache.load(k, 6, 20).has_value());
  CHECK_FALSE(cache.load(k, 7, 16).has_value());
  CHECK(cache.path_for(k, 6, 16) != cache.path_for(k, 6, 20));

  // Flip one byte in the body; the checksum rejects the file.
  auto path = cache.path_for(k, 6, 16);
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(20);
    f.put('\x7f');
  }
  CHECK_FALSE(cache.load(k, 6, 16).has_value());
  REQUIRE(cache.warnings().size() == 1);
  CHECK(cache.warnings()[0].find("checksum") != std::string::npos);

  // A session over the corrupt entry recomputes, warns and rewrites it.
  fs::resize_file(path, 10);
  RunOptions opts;
  opts.cache_dir = dir.string();
  opts.config.max_hdeg = 6;
  auto out = run_session(parse_session("ring A = GF(5)[x,y] / <x^2, y^2>; module k = coker [[x, y]]; betti k;"), opts);
  CHECK_FALSE(out.had_errors);
  CHECK(out.warnings.size() == 1);
  CHECK(out.document.at("records")[0].at("payload").at("betti") == std::vector<long>{1, 2, 3, 4, 5, 6, 7});
  DiskCache again(dir);
  CHECK(again.load(k, 6, 16).has_value());
  fs::remove_all(dir);
}

TEST_CASE("deterministic JSON and warm-cache records") {
  auto dir = scratch_dir("det");
  for (const auto& f : fixture_sessions()) {
    CAPTURE(f.filename().string());
    auto s = parse_session(slurp(f));
    auto a = run_session(s, {}).document.dump(2);
    auto b = run_session(s, {}).document.dump(2);
    CHECK(a == b);
    CHECK(Json::parse(a).dump(2) == a);

    RunOptions cached;
    cached.cache_dir = (dir / f.stem()).string();
    auto cold = run_session(s, cached).document;
    auto warm = run_session(s, cached).document;
    CHECK(cold.at("records") == warm.at("records"));
    CHECK(cold.at("records") == Json::parse(a).at("records"));
    CHECK(warm.at("cache").at("misses") == 0);
    CHECK(warm.at("cache").at("hits").get<long>() > 0);
    CHECK(render_text(Json::parse(cold.dump())) == render_text(cold));
  }
  fs::remove_all(dir);
}
