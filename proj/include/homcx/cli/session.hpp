#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "homcx/graded_module.hpp"

namespace homcx::cli {

struct Location {
  int line = 1, column = 1;
  std::string describe() const;
};

/// Syntax or semantic error at a source location. `expected` lists the
/// tokens that would have been accepted, when that is meaningful.
class ParseError : public std::runtime_error {
 public:
  ParseError(Location loc, const std::string& message, std::vector<std::string> expected = {});
  const Location& location() const { return loc_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  Location loc_;
  std::vector<std::string> expected_;
};

struct RingDecl {
  std::string name;
  std::uint32_t p = 2;
  std::vector<std::string> vars;
  std::vector<Polynomial> ideal;
  RingPtr ring;
  Location loc;
};

/// `module M = coker [[...], ...];` over the most recently declared ring.
/// Generator and relation degrees are inferred from the entry degrees, the
/// lowest generator of each connected block sitting in degree 0.
struct ModuleDecl {
  std::string name;
  std::string ring;
  std::vector<std::vector<Polynomial>> matrix;  // row-major
  GradedModule module;
  Location loc;
};

enum class CommandKind { Resolve, Betti, Ext, Tor, Pushout, Certify, Mcm, Depth, Period };

struct Command {
  CommandKind kind = CommandKind::Betti;
  std::vector<std::string> args;  // module or ring identifiers
  int number = 0;                 // H for resolve, n for pushout
  std::optional<int> class_index;
  Location loc;
};

using Statement = std::variant<RingDecl, ModuleDecl, Command>;

struct Session {
  std::vector<Statement> statements;

  std::vector<const Command*> commands() const;
  std::size_t count_rings() const;
  std::size_t count_modules() const;
  /// A ring identifier denotes the ring as a free module of rank one.
  GradedModule module(const std::string& id) const;
};

Session parse_session(const std::string& text);
std::string print_session(const Session& s);
std::string print_statement(const Session& s, const Statement& st);

/// Equality of syntax trees, ignoring locations.
bool same_ast(const Session& a, const Session& b);

std::string to_string(CommandKind k);

}  // namespace homcx::cli
