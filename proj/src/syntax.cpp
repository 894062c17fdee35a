#include "rdivm/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "rdivm/errors.hpp"

namespace rdivm {

namespace {

using Conj = std::vector<RawLiteral>;

RawTerm raw_of(const SurfaceTerm& t) {
  return {t.is_var ? RawTerm::Kind::Var : RawTerm::Kind::Const, t.text};
}

// Closure and star operands must reduce to a plain or inverted symbol; the
// core form has no tag for compound expressions.
std::pair<Symbol, bool> symbol_operand(const PathExpr& e, bool swapped) {
  if (e.kind == PathExpr::Kind::Sym) return {e.sym, swapped};
  if (e.kind == PathExpr::Kind::Inv) return symbol_operand(e.args[0], !swapped);
  throw ValidationError("closure/star operand must be an edge symbol at line " +
                        std::to_string(e.pos.line) + ", col " + std::to_string(e.pos.col));
}

std::vector<Conj> product(std::vector<Conj> acc, const std::vector<Conj>& alts) {
  std::vector<Conj> out;
  out.reserve(acc.size() * alts.size());
  for (const Conj& left : acc)
    for (const Conj& right : alts) {
      Conj c = left;
      c.insert(c.end(), right.begin(), right.end());
      out.push_back(std::move(c));
    }
  return out;
}

RawLiteral rel_lit(Tag tag, const Symbol& s, RawTerm a, RawTerm b) {
  return {tag, RawAtom{s, std::move(a), std::move(b)}};
}

RawLiteral eq_lit(RawTerm a, RawTerm b) {
  return {Tag::Single, RawAtom{std::nullopt, std::move(a), std::move(b)}};
}

// DNF of one path conjunct e(a, b). Alternative order is source order; star
// puts its empty-path disjunct first.
std::vector<Conj> compile_expr(const PathExpr& e, const RawTerm& a, const RawTerm& b,
                               int& fresh) {
  switch (e.kind) {
    case PathExpr::Kind::Sym:
      return {{rel_lit(Tag::Single, e.sym, a, b)}};
    case PathExpr::Kind::Inv:
      return compile_expr(e.args[0], b, a, fresh);
    case PathExpr::Kind::Plus: {
      auto [sym, swapped] = symbol_operand(e.args[0], false);
      return {{rel_lit(Tag::Plus, sym, swapped ? b : a, swapped ? a : b)}};
    }
    case PathExpr::Kind::Star: {
      auto [sym, swapped] = symbol_operand(e.args[0], false);
      return {{eq_lit(a, b)}, {rel_lit(Tag::Plus, sym, swapped ? b : a, swapped ? a : b)}};
    }
    case PathExpr::Kind::Alt: {
      std::vector<Conj> out;
      for (const PathExpr& arg : e.args) {
        auto part = compile_expr(arg, a, b, fresh);
        out.insert(out.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
      }
      return out;
    }
    case PathExpr::Kind::Seq: {
      std::vector<Conj> acc{{}};
      RawTerm cur = a;
      for (std::size_t i = 0; i < e.args.size(); i++) {
        RawTerm next = (i + 1 == e.args.size())
                           ? b
                           : RawTerm{RawTerm::Kind::Var, "#" + std::to_string(fresh++)};
        acc = product(std::move(acc), compile_expr(e.args[i], cur, next, fresh));
        cur = next;
      }
      return acc;
    }
  }
  throw InternalError("unhandled path expression kind");
}

} // namespace

std::vector<RawClause> compile_surface(const SurfaceProgram& p) {
  std::vector<RawClause> out;
  for (const SurfaceClause& sc : p.clauses) {
    int fresh = 1;
    std::vector<Conj> acc{{}};
    for (const SurfaceAtom& atom : sc.body) {
      RawTerm a = raw_of(atom.a);
      RawTerm b = raw_of(atom.b);
      if (!atom.path.has_value()) {
        acc = product(std::move(acc), {{eq_lit(a, b)}});
      } else {
        acc = product(std::move(acc), compile_expr(*atom.path, a, b, fresh));
      }
    }
    for (Conj& c : acc)
      out.push_back(RawClause{sc.head, raw_of(sc.h1), raw_of(sc.h2), std::move(c)});
  }
  return out;
}

Program normalize(const std::vector<RawClause>& raw, NodeTable& nodes) {
  Program p;
  for (const RawClause& rc : raw) {
    CBody body;
    std::map<std::string, std::uint32_t> varmap;
    std::uint32_t next = 2;

    // Head slots: constants and duplicate variables become leading equalities
    // against the canonical head variables.
    for (std::uint32_t slot = 0; slot < 2; slot++) {
      const RawTerm& t = slot == 0 ? rc.h1 : rc.h2;
      if (t.kind == RawTerm::Kind::Const) {
        body.lits.push_back(Literal{
            Tag::Single,
            Atom{std::nullopt, Term::constant(nodes.intern(t.text)), Term::var(slot)}});
      } else {
        auto [it, fresh] = varmap.try_emplace(t.text, slot);
        if (!fresh)
          body.lits.push_back(Literal{
              Tag::Single, Atom{std::nullopt, Term::var(it->second), Term::var(slot)}});
      }
    }

    auto map_term = [&](const RawTerm& t) -> Term {
      if (t.kind == RawTerm::Kind::Const) return Term::constant(nodes.intern(t.text));
      auto [it, fresh] = varmap.try_emplace(t.text, next);
      if (fresh) next++;
      return Term::var(it->second);
    };

    for (const RawLiteral& rl : rc.body) {
      if (rl.tag == Tag::Plus && !rl.atom.rel.has_value())
        throw ValidationError("closure tag on an equality atom in clause '" +
                              rc.head_sym.name + "'");
      body.lits.push_back(
          Literal{rl.tag, Atom{rl.atom.rel, map_term(rl.atom.a), map_term(rl.atom.b)}});
    }

    Clause& cl = p.clauses[rc.head_sym];
    cl.bodies.push_back(std::move(body));
    cl.arity = std::max(cl.arity, next);
  }

  for (const auto& [sym, cl] : p.clauses)
    for (const CBody& b : cl.bodies)
      for (const Literal& lit : b.lits)
        if (lit.atom.rel && !p.clauses.count(*lit.atom.rel)) p.edb.insert(*lit.atom.rel);

  return p;
}

void check_safety(const Program& p) {
  for (const auto& [sym, cl] : p.clauses) {
    for (std::size_t i = 0; i < cl.bodies.size(); i++) {
      bool has[2] = {false, false};
      for (const Literal& lit : cl.bodies[i].lits)
        for (const Term& t : {lit.atom.a, lit.atom.b})
          if (t.is_var() && t.id < 2) has[t.id] = true;
      for (std::uint32_t v = 0; v < 2; v++)
        if (!has[v])
          throw ValidationError("unsafe head variable V" + std::to_string(v) +
                                " in clause '" + sym.name + "', disjunct " +
                                std::to_string(i));
    }
  }
}

std::set<RelKey> symbols_of(const CBody& body) {
  std::set<RelKey> out;
  for (const Literal& lit : body.lits)
    if (lit.atom.rel) out.insert(RelKey{*lit.atom.rel, lit.tag});
  return out;
}

std::set<RelKey> symbols_of(const Clause& c) {
  std::set<RelKey> out;
  for (const CBody& b : c.bodies)
    for (const RelKey& k : symbols_of(b)) out.insert(k);
  return out;
}

std::set<Symbol> bare_symbols(const Clause& c) {
  std::set<Symbol> out;
  for (const RelKey& k : symbols_of(c)) out.insert(k.sym);
  return out;
}

namespace {

std::string var_name(std::uint32_t i) { return "V" + std::to_string(i); }

bool bare_printable(const std::string& name) {
  if (name.empty()) return false;
  if (!std::islower(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
  return std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

std::string const_text(const std::string& name) {
  if (bare_printable(name)) return name;
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

RawTerm raw_term_of(const Term& t, const NodeTable& nodes) {
  if (t.is_var()) return {RawTerm::Kind::Var, var_name(t.id)};
  return {RawTerm::Kind::Const, nodes.name(t.id)};
}

std::string term_text(const Term& t, const NodeTable& nodes) {
  if (t.is_var()) return var_name(t.id);
  return const_text(nodes.name(t.id));
}

} // namespace

std::vector<RawClause> denormalize(const Program& p, const NodeTable& nodes) {
  std::vector<RawClause> out;
  for (const auto& [sym, cl] : p.clauses) {
    for (const CBody& body : cl.bodies) {
      RawClause rc{sym,
                   {RawTerm::Kind::Var, "V0"},
                   {RawTerm::Kind::Var, "V1"},
                   {}};
      for (const Literal& lit : body.lits)
        rc.body.push_back(RawLiteral{
            lit.tag, RawAtom{lit.atom.rel, raw_term_of(lit.atom.a, nodes),
                             raw_term_of(lit.atom.b, nodes)}});
      out.push_back(std::move(rc));
    }
  }
  return out;
}

std::string print_literal(const Literal& lit, const NodeTable& nodes) {
  std::ostringstream os;
  if (lit.atom.is_eq()) {
    os << term_text(lit.atom.a, nodes) << " = " << term_text(lit.atom.b, nodes);
  } else {
    os << lit.atom.rel->name << (lit.tag == Tag::Plus ? "+" : "") << "("
       << term_text(lit.atom.a, nodes) << ", " << term_text(lit.atom.b, nodes) << ")";
  }
  return os.str();
}

std::string print_program(const Program& p, const NodeTable& nodes) {
  std::ostringstream os;
  for (const auto& [sym, cl] : p.clauses) {
    for (const CBody& body : cl.bodies) {
      os << sym.name << "(V0, V1)";
      if (!body.lits.empty()) {
        os << " :- ";
        for (std::size_t i = 0; i < body.lits.size(); i++) {
          if (i) os << ", ";
          os << print_literal(body.lits[i], nodes);
        }
      }
      os << ".\n";
    }
  }
  return os.str();
}

} // namespace rdivm
