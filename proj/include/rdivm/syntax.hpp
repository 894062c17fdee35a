#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rdivm/core.hpp"
#include "rdivm/graph.hpp"

namespace rdivm {

// ---- completed core form ----------------------------------------------------

struct Term {
  enum class Kind : std::uint8_t { Const, Var };
  Kind kind = Kind::Var;
  std::uint32_t id = 0;  // node id for Const, dense per-clause index for Var

  static Term constant(Node n) { return {Kind::Const, n}; }
  static Term var(std::uint32_t i) { return {Kind::Var, i}; }
  bool is_var() const { return kind == Kind::Var; }
  auto operator<=>(const Term&) const = default;
};

// Relational atom over a symbol, or an equality between two terms.
struct Atom {
  std::optional<Symbol> rel;  // nullopt: equality
  Term a, b;
  bool is_eq() const { return !rel.has_value(); }
  auto operator<=>(const Atom&) const = default;
};

struct Literal {
  Tag tag = Tag::Single;  // Plus is only meaningful on relational atoms
  Atom atom;
  auto operator<=>(const Literal&) const = default;
};

// One disjunct: a conjunction of literals.
struct CBody {
  std::vector<Literal> lits;
  auto operator<=>(const CBody&) const = default;
};

// Completed clause for one view symbol. The head is implicitly (V0, V1);
// bodies are the disjuncts in source order. Variable indices are dense per
// clause: 0 and 1 are the head, body-only variables start at 2.
struct Clause {
  std::vector<CBody> bodies;
  std::uint32_t arity = 2;
  auto operator<=>(const Clause&) const = default;
};

// Completed program: one clause per intensional symbol. EDB symbols are the
// body symbols that have no clause.
struct Program {
  std::map<Symbol, Clause> clauses;
  std::set<Symbol> edb;

  bool is_intensional(const Symbol& s) const { return clauses.count(s) != 0; }
  bool operator==(const Program&) const = default;
};

// ---- raw core form (named variables and constants, pre-interning) -----------

struct RawTerm {
  enum class Kind : std::uint8_t { Const, Var };
  Kind kind = Kind::Var;
  std::string text;
  auto operator<=>(const RawTerm&) const = default;
};

struct RawAtom {
  std::optional<Symbol> rel;  // nullopt: equality
  RawTerm a, b;
};

struct RawLiteral {
  Tag tag = Tag::Single;
  RawAtom atom;
};

// One conjunction with an explicit head; alternation lives at the list level.
struct RawClause {
  Symbol head_sym;
  RawTerm h1, h2;
  std::vector<RawLiteral> body;
};

// ---- surface form ------------------------------------------------------------

struct SrcPos {
  int line = 0, col = 0;
};

// Path expression over edge labels: symbols composed with inverse, closure,
// star, alternation and concatenation.
struct PathExpr {
  enum class Kind : std::uint8_t { Sym, Inv, Plus, Star, Alt, Seq };
  Kind kind = Kind::Sym;
  Symbol sym;                  // Kind::Sym
  std::vector<PathExpr> args;  // unary: 1 element; Alt/Seq: 2+
  SrcPos pos;
};

struct SurfaceTerm {
  bool is_var = false;
  std::string text;
  SrcPos pos;
};

// Body conjunct: a path expression applied to two terms, or an equality.
struct SurfaceAtom {
  std::optional<PathExpr> path;  // nullopt: equality
  SurfaceTerm a, b;
  SrcPos pos;
};

struct SurfaceClause {
  Symbol head;
  SurfaceTerm h1, h2;
  std::vector<SurfaceAtom> body;  // empty: fact
  SrcPos pos;
};

struct SurfaceProgram {
  std::vector<SurfaceClause> clauses;
};

// ---- operations ---------------------------------------------------------------

// Parse `.rd` text. Throws ParseError with line/col on malformed input.
SurfaceProgram parse_program(std::string_view text);

// Lower surface operators to core literals: inverse swaps arguments, star
// splits into an equality disjunct and a closure disjunct, alternation and
// concatenation expand by cartesian product in source order. Closure and star
// apply to (possibly inverted) symbols only; compound operands are errors.
std::vector<RawClause> compile_surface(const SurfaceProgram& p);

// Group raw clauses by head symbol under the canonical head (V0, V1): head
// constants become prepended equalities, duplicate head variables become an
// equality between V0 and V1, and body variables are renamed in first-
// occurrence order starting at index 2. Constants are interned into nodes.
Program normalize(const std::vector<RawClause>& raw, NodeTable& nodes);

// Every disjunct of every clause must bind both head variables (equalities
// count as occurrences). Throws ValidationError naming the symbol, the
// disjunct index and the missing variable.
void check_safety(const Program& p);

std::set<RelKey> symbols_of(const CBody& body);
std::set<RelKey> symbols_of(const Clause& c);
std::set<Symbol> bare_symbols(const Clause& c);

// Flatten a completed program back to one raw clause per disjunct, with
// canonical V0..Vn variable names. normalize(denormalize(p)) == p.
std::vector<RawClause> denormalize(const Program& p, const NodeTable& nodes);

// Reparseable surface text of a completed program, one clause per disjunct.
std::string print_program(const Program& p, const NodeTable& nodes);
std::string print_literal(const Literal& lit, const NodeTable& nodes);

} // namespace rdivm
