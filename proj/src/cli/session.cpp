#include "homcx/cli/session.hpp"

#include <cctype>
#include <limits>
#include <map>
#include <sstream>

namespace homcx::cli {

std::string Location::describe() const {
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string error_text(const Location& loc, const std::string& message, const std::vector<std::string>& expected) {
  std::string s = loc.describe() + ": " + message;
  if (!expected.empty()) s += " (expected " + join(expected, " or ") + ")";
  return s;
}

enum class Tok { Ident, Int, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Location loc;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  Location here;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++here.line;
        here.column = 1;
      } else {
        ++here.column;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.loc = here;
    std::size_t j = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Int;
    } else if (std::string("()[]<>,;*^+-/=").find(c) != std::string::npos) {
      j = i + 1;
      t.kind = Tok::Sym;
    } else {
      throw ParseError(here, std::string("unexpected character '") + c + "'");
    }
    t.text = src.substr(i, j - i);
    advance(j - i);
    out.push_back(std::move(t));
  }
  Token end;
  end.loc = here;
  out.push_back(end);
  return out;
}

const std::map<std::string, CommandKind> kCommands = {
    {"resolve", CommandKind::Resolve}, {"betti", CommandKind::Betti},     {"ext", CommandKind::Ext},
    {"tor", CommandKind::Tor},         {"pushout", CommandKind::Pushout}, {"certify", CommandKind::Certify},
    {"mcm", CommandKind::Mcm},         {"depth", CommandKind::Depth},     {"period", CommandKind::Period}};

std::vector<std::string> statement_starters() {
  std::vector<std::string> v{"'ring'", "'module'"};
  for (const auto& [k, _] : kCommands) v.push_back("'" + k + "'");
  return v;
}

int arity(CommandKind k) { return k == CommandKind::Ext || k == CommandKind::Tor ? 2 : 1; }

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  Session run() {
    Session s;
    while (peek().kind != Tok::End) s.statements.push_back(statement());
    return s;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, bool> ids_;  // name -> is a ring
  const RingDecl* ring_ = nullptr;
  std::vector<RingDecl> rings_;     // copies for variable lookup
  std::map<std::string, std::size_t> var_index_;

  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  static std::string show(const Token& t) { return t.kind == Tok::End ? "end of input" : "'" + t.text + "'"; }

  [[noreturn]] void fail(const std::vector<std::string>& expected) const {
    throw ParseError(peek().loc, "unexpected " + show(peek()), expected);
  }

  bool at_sym(const std::string& s) const { return peek().kind == Tok::Sym && peek().text == s; }
  bool at_word(const std::string& s) const { return peek().kind == Tok::Ident && peek().text == s; }

  Token sym(const std::string& s) {
    if (!at_sym(s)) fail({"'" + s + "'"});
    return take();
  }
  Token word(const std::string& s) {
    if (!at_word(s)) fail({"'" + s + "'"});
    return take();
  }
  Token ident() {
    if (peek().kind != Tok::Ident) fail({"identifier"});
    return take();
  }
  long long integer(long long max = std::numeric_limits<int>::max()) {
    if (peek().kind != Tok::Int) fail({"integer"});
    auto t = take();
    if (t.text.size() > 12 || std::stoll(t.text) > max) throw ParseError(t.loc, "integer " + t.text + " is too large");
    return std::stoll(t.text);
  }

  Statement statement() {
    if (at_word("ring")) return ring_decl();
    if (at_word("module")) return module_decl();
    if (peek().kind == Tok::Ident && kCommands.count(peek().text)) return command();
    fail(statement_starters());
  }

  void declare(const Token& name, bool is_ring) {
    if (ids_.count(name.text)) throw ParseError(name.loc, "identifier '" + name.text + "' is already declared");
    if (kCommands.count(name.text) || name.text == "ring" || name.text == "module")
      throw ParseError(name.loc, "'" + name.text + "' is a keyword");
    ids_[name.text] = is_ring;
  }

  RingDecl ring_decl() {
    RingDecl d;
    d.loc = word("ring").loc;
    auto name = ident();
    d.name = name.text;
    sym("=");
    auto gf = word("GF");
    sym("(");
    auto ploc = peek().loc;
    d.p = static_cast<std::uint32_t>(integer(std::numeric_limits<std::uint32_t>::max()));
    sym(")");
    std::optional<PrimeField> field;
    try {
      field.emplace(d.p);
    } catch (const std::invalid_argument& e) {
      throw ParseError(ploc, e.what());
    }
    (void)gf;
    sym("[");
    var_index_.clear();
    for (;;) {
      auto v = ident();
      if (var_index_.count(v.text)) throw ParseError(v.loc, "variable '" + v.text + "' repeated");
      var_index_[v.text] = d.vars.size();
      d.vars.push_back(v.text);
      if (at_sym(",")) {
        take();
        continue;
      }
      if (at_sym("]")) break;
      fail({"','", "']'"});
    }
    sym("]");
    PolynomialRing R(*field, d.vars);
    if (at_sym("/")) {
      take();
      sym("<");
      if (!at_sym(">")) {
        for (;;) {
          auto loc = peek().loc;
          auto f = poly(R);
          if (!f.is_zero() && !f.is_homogeneous()) throw ParseError(loc, "non-homogeneous ideal generator");
          d.ideal.push_back(std::move(f));
          if (at_sym(",")) {
            take();
            continue;
          }
          if (at_sym(">")) break;
          fail({"','", "'>'"});
        }
      }
      sym(">");
    }
    sym(";");
    declare(name, true);
    d.ring = std::make_shared<const QuotientRing>(R, d.ideal);
    rings_.push_back(d);
    ring_ = &rings_.back();
    return d;
  }

  ModuleDecl module_decl() {
    ModuleDecl d;
    d.loc = word("module").loc;
    auto name = ident();
    d.name = name.text;
    if (!ring_) throw ParseError(d.loc, "module declared before any ring");
    d.ring = ring_->name;
    const auto& A = ring_->ring;
    sym("=");
    word("coker");
    std::vector<std::vector<Location>> locs;
    sym("[");
    for (;;) {
      sym("[");
      d.matrix.emplace_back();
      locs.emplace_back();
      for (;;) {
        locs.back().push_back(peek().loc);
        d.matrix.back().push_back(poly(A->poly()));
        if (at_sym(",")) {
          take();
          continue;
        }
        if (at_sym("]")) break;
        fail({"','", "']'"});
      }
      auto close = sym("]");
      if (d.matrix.back().size() != d.matrix.front().size())
        throw ParseError(close.loc, "matrix rows have different lengths");
      if (at_sym(",")) {
        take();
        continue;
      }
      if (at_sym("]")) break;
      fail({"','", "']'"});
    }
    sym("]");
    sym(";");
    declare(name, false);
    d.module = build_module(A, d.matrix, locs);
    return d;
  }

  static GradedModule build_module(const RingPtr& A, const std::vector<std::vector<Polynomial>>& m,
                                   const std::vector<std::vector<Location>>& locs) {
    const std::size_t rows = m.size(), cols = m.front().size();
    std::vector<std::vector<Polynomial>> nf(rows, std::vector<Polynomial>(cols));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        if (!m[i][j].is_zero() && !m[i][j].is_homogeneous()) throw ParseError(locs[i][j], "non-homogeneous entry");
        nf[i][j] = A->normal_form(m[i][j]);
      }
    // Nodes 0..rows-1 are generators, rows.. are relations; an entry of
    // degree e ties b_j = g_i + e.
    std::vector<std::optional<int>> deg(rows + cols);
    std::vector<std::vector<int>> comp_rows;
    for (std::size_t start = 0; start < rows + cols; ++start) {
      if (deg[start]) continue;
      deg[start] = 0;
      std::vector<std::size_t> stack{start}, members{start};
      while (!stack.empty()) {
        auto u = stack.back();
        stack.pop_back();
        auto visit = [&](std::size_t i, std::size_t j, std::size_t v, int want) {
          if (!deg[v]) {
            deg[v] = want;
            stack.push_back(v);
            members.push_back(v);
          } else if (*deg[v] != want) {
            throw ParseError(locs[i][j], "entry degree is inconsistent with the rest of the matrix");
          }
        };
        if (u < rows) {
          for (std::size_t j = 0; j < cols; ++j)
            if (auto e = nf[u][j].homogeneous_degree()) visit(u, j, rows + j, *deg[u] + *e);
        } else {
          std::size_t j = u - rows;
          for (std::size_t i = 0; i < rows; ++i)
            if (auto e = nf[i][j].homogeneous_degree()) visit(i, j, i, *deg[u] - *e);
        }
      }
      int low = std::numeric_limits<int>::max();
      for (auto v : members)
        if (v < rows) low = std::min(low, *deg[v]);
      if (low == std::numeric_limits<int>::max()) low = 0;
      for (auto v : members) *deg[v] -= low;
    }
    Shifts g, b;
    for (std::size_t i = 0; i < rows; ++i) g.push_back(*deg[i]);
    for (std::size_t j = 0; j < cols; ++j) b.push_back(*deg[rows + j]);
    std::vector<Polynomial> entries;
    for (const auto& row : nf) entries.insert(entries.end(), row.begin(), row.end());
    return GradedModule(ModuleMap(A, b, g, entries));
  }

  Command command() {
    Command c;
    auto head = take();
    c.loc = head.loc;
    c.kind = kCommands.at(head.text);
    for (int k = 0; k < arity(c.kind); ++k) {
      auto id = ident();
      if (!ids_.count(id.text)) throw ParseError(id.loc, "undeclared identifier '" + id.text + "'");
      c.args.push_back(id.text);
    }
    if (c.kind == CommandKind::Resolve) {
      word("to");
      c.number = static_cast<int>(integer(1000));
    } else if (c.kind == CommandKind::Pushout) {
      word("deg");
      c.number = static_cast<int>(integer(1000));
      if (c.number < 1) throw ParseError(toks_[pos_ - 1].loc, "pushout degree must be at least 1");
      if (at_word("class")) {
        take();
        c.class_index = static_cast<int>(integer());
      }
    }
    if (!at_sym(";")) {
      if (c.kind == CommandKind::Pushout && !c.class_index) fail({"'class'", "';'"});
      fail({"';'"});
    }
    take();
    return c;
  }

  // poly := ['-'] term { ('+' | '-') term }
  Polynomial poly(const PolynomialRing& R) {
    bool negate = false;
    if (at_sym("-")) {
      take();
      negate = true;
    }
    auto acc = term(R);
    if (negate) acc = R.neg(acc);
    while (at_sym("+") || at_sym("-")) {
      bool minus = take().text == "-";
      auto t = term(R);
      acc = minus ? R.sub(acc, t) : R.add(acc, t);
    }
    return acc;
  }

  // term := factor { '*' factor }
  Polynomial term(const PolynomialRing& R) {
    auto acc = factor(R);
    while (at_sym("*")) {
      take();
      acc = R.mul(acc, factor(R));
    }
    return acc;
  }

  // factor := INT | VAR ['^' INT] | '(' poly ')' ['^' INT]
  Polynomial factor(const PolynomialRing& R) {
    Polynomial base;
    if (peek().kind == Tok::Int) {
      auto t = take();
      std::int64_t v = 0;
      for (char ch : t.text) v = (v * 10 + (ch - '0')) % R.field().characteristic();
      return R.constant(v);
    }
    if (peek().kind == Tok::Ident) {
      auto t = take();
      auto it = var_index_.find(t.text);
      if (it == var_index_.end()) throw ParseError(t.loc, "unknown variable '" + t.text + "'");
      base = R.variable(it->second);
    } else if (at_sym("(")) {
      take();
      base = poly(R);
      sym(")");
    } else {
      fail({"integer", "variable", "'('"});
    }
    if (at_sym("^")) {
      take();
      base = R.pow(base, static_cast<unsigned>(integer(1000)));
    }
    return base;
  }
};

std::string print_poly(const PolynomialRing& R, const Polynomial& f) {
  // The ring printer writes sums with spaces around signs, which the
  // grammar reads back to the same polynomial.
  return R.to_string(f);
}

}  // namespace

ParseError::ParseError(Location loc, const std::string& message, std::vector<std::string> expected)
    : std::runtime_error(error_text(loc, message, expected)), loc_(loc), expected_(std::move(expected)) {}

std::string to_string(CommandKind k) {
  for (const auto& [name, kind] : kCommands)
    if (kind == k) return name;
  return "?";
}

Session parse_session(const std::string& text) { return Parser(text).run(); }

std::vector<const Command*> Session::commands() const {
  std::vector<const Command*> out;
  for (const auto& st : statements)
    if (auto c = std::get_if<Command>(&st)) out.push_back(c);
  return out;
}

std::size_t Session::count_rings() const {
  std::size_t n = 0;
  for (const auto& st : statements) n += std::holds_alternative<RingDecl>(st);
  return n;
}

std::size_t Session::count_modules() const {
  std::size_t n = 0;
  for (const auto& st : statements) n += std::holds_alternative<ModuleDecl>(st);
  return n;
}

GradedModule Session::module(const std::string& id) const {
  for (const auto& st : statements) {
    if (auto m = std::get_if<ModuleDecl>(&st); m && m->name == id) return m->module;
    if (auto r = std::get_if<RingDecl>(&st); r && r->name == id) return GradedModule::free(r->ring, {0});
  }
  throw std::out_of_range("undeclared identifier '" + id + "'");
}

std::string print_statement(const Session& s, const Statement& st) {
  std::ostringstream os;
  if (auto r = std::get_if<RingDecl>(&st)) {
    os << "ring " << r->name << " = GF(" << r->p << ")[" << join(r->vars, ",") << "] / <";
    for (std::size_t i = 0; i < r->ideal.size(); ++i) os << (i ? ", " : "") << print_poly(r->ring->poly(), r->ideal[i]);
    os << ">;";
  } else if (auto m = std::get_if<ModuleDecl>(&st)) {
    const PolynomialRing* R = nullptr;
    for (const auto& other : s.statements)
      if (auto rr = std::get_if<RingDecl>(&other); rr && rr->name == m->ring) R = &rr->ring->poly();
    os << "module " << m->name << " = coker [";
    for (std::size_t i = 0; i < m->matrix.size(); ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m->matrix[i].size(); ++j) os << (j ? ", " : "") << print_poly(*R, m->matrix[i][j]);
      os << "]";
    }
    os << "];";
  } else {
    const auto& c = std::get<Command>(st);
    os << to_string(c.kind);
    for (const auto& a : c.args) os << " " << a;
    if (c.kind == CommandKind::Resolve) os << " to " << c.number;
    if (c.kind == CommandKind::Pushout) {
      os << " deg " << c.number;
      if (c.class_index) os << " class " << *c.class_index;
    }
    os << ";";
  }
  return os.str();
}

std::string print_session(const Session& s) {
  std::string out;
  for (const auto& st : s.statements) out += print_statement(s, st) + "\n";
  return out;
}

bool same_ast(const Session& a, const Session& b) {
  if (a.statements.size() != b.statements.size()) return false;
  for (std::size_t i = 0; i < a.statements.size(); ++i) {
    const auto& x = a.statements[i];
    const auto& y = b.statements[i];
    if (x.index() != y.index()) return false;
    if (auto r = std::get_if<RingDecl>(&x)) {
      const auto& q = std::get<RingDecl>(y);
      if (r->name != q.name || r->p != q.p || r->vars != q.vars || r->ideal != q.ideal) return false;
    } else if (auto m = std::get_if<ModuleDecl>(&x)) {
      const auto& q = std::get<ModuleDecl>(y);
      if (m->name != q.name || m->ring != q.ring || m->matrix != q.matrix) return false;
    } else {
      const auto& c = std::get<Command>(x);
      const auto& q = std::get<Command>(y);
      if (c.kind != q.kind || c.args != q.args || c.number != q.number || c.class_index != q.class_index)
        return false;
    }
  }
  return true;
}

}  // namespace homcx::cli
