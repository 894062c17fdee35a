#include "rdivm/engine.hpp"

#include <algorithm>
#include <map>

#include "rdivm/closure.hpp"
#include "rdivm/errors.hpp"
#include "rdivm/log.hpp"
#include "rdivm/semantics.hpp"

namespace rdivm {

std::vector<MaskedBody> body_mask(const CBody& body) {
  std::vector<MaskedBody> rows;
  for (std::size_t i = 0; i < body.lits.size(); i++) {
    if (body.lits[i].atom.is_eq()) continue;
    MaskedBody row;
    for (std::size_t j = 0; j < body.lits.size(); j++) {
      const Literal& lit = body.lits[j];
      MaskTag m;
      if (lit.atom.is_eq()) {
        m = MaskTag::Full;
      } else if (j == i) {
        m = MaskTag::Delta;
      } else {
        m = j < i ? MaskTag::Full : MaskTag::Base;
      }
      row.lits.emplace_back(m, lit);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::vector<Substitution> merged(std::vector<Substitution> a,
                                 std::vector<Substitution> b) {
  a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

} // namespace

std::vector<Substitution> match_delta_atom(const LRel& g, const EDelta& d,
                                           const EvalEnv& env, MaskTag m,
                                           const Literal& lit, const Substitution& s) {
  static const EGraph kEmpty;
  if (lit.atom.is_eq()) return match_atom(kEmpty, env, lit.atom, s);
  RelKey k{*lit.atom.rel, lit.tag};
  switch (m) {
    case MaskTag::Base:
      return match_atom(g.at(k), env, lit.atom, s);
    case MaskTag::Delta:
      return match_atom(d.add().at(k), env, lit.atom, s);
    case MaskTag::Full:
      return merged(match_atom(g.at(k), env, lit.atom, s),
                    match_atom(d.add().at(k), env, lit.atom, s));
  }
  throw InternalError("unhandled mask tag");
}

std::vector<Substitution> match_delta_body(const LRel& g, const EDelta& d,
                                           const EvalEnv& env, const MaskedBody& mb,
                                           std::uint32_t arity) {
  static const EGraph kEmpty;
  std::vector<Substitution> cur{Substitution(arity)};
  for (const auto& [m, lit] : mb.lits) {
    if (lit.atom.is_eq()) {
      cur = match_step(kEmpty, env, lit.atom, cur);
    } else {
      RelKey k{*lit.atom.rel, lit.tag};
      std::vector<Substitution> nxt;
      if (m != MaskTag::Delta) nxt = match_step(g.at(k), env, lit.atom, cur);
      if (m != MaskTag::Base)
        nxt = merged(std::move(nxt), match_step(d.add().at(k), env, lit.atom, cur));
      cur = std::move(nxt);
    }
    if (cur.empty()) break;
  }
  return cur;
}

namespace {

// Applied edge set of one key without materializing the whole graph.
EGraph applied_at(const LRel& g, const EDelta& d, const RelKey& k) {
  return eg_union(eg_diff(g.at(k), d.del().at(k)), d.add().at(k));
}

} // namespace

EDelta fwd_or_clause_base(const LRel& g, const EDelta& d, const EvalEnv& env,
                          const Symbol& s, const Clause& c) {
  if (env.stats) env.stats->base_evals++;
  LRel applied = apply_update(g, d);
  std::vector<Edge> heads;
  for (const CBody& body : c.bodies)
    for (const Substitution& m : match_body(applied, env, body, c.arity))
      heads.push_back(ground_head(m, Term::var(0), Term::var(1)));
  EGraph derived(std::move(heads));
  auto [plus, minus] = lrel_diff(applied.at(s, Tag::Single), derived);
  return modify(d, s, Tag::Single, plus, minus);
}

EDelta fwd_or_clause_delta(const LRel& g, const EDelta& d, const EvalEnv& env,
                           const Symbol& s, const Clause& c) {
  if (env.stats) env.stats->delta_evals++;
  std::vector<Edge> heads;
  for (const CBody& body : c.bodies)
    for (const MaskedBody& row : body_mask(body))
      for (const Substitution& m : match_delta_body(g, d, env, row, c.arity))
        heads.push_back(ground_head(m, Term::var(0), Term::var(1)));
  EGraph fresh = eg_diff(EGraph(std::move(heads)), applied_at(g, d, {s, Tag::Single}));
  return modify(d, s, Tag::Single, fresh, EGraph{});
}

EDelta fwd_or_clause(const LRel& g, const std::set<Symbol>& support, const EDelta& d,
                     const EvalEnv& env, const Symbol& s, const Clause& c) {
  bool fallback = support.count(s) == 0;
  if (!fallback)
    for (const RelKey& k : symbols_of(c))
      if (!d.del().at(k).empty()) {
        fallback = true;
        break;
      }
  return fallback ? fwd_or_clause_base(g, d, env, s, c)
                  : fwd_or_clause_delta(g, d, env, s, c);
}

std::vector<Symbol> stratify(const Program& p) {
  std::map<Symbol, std::set<Symbol>> deps;  // intensional body deps, unprocessed
  std::map<Symbol, std::set<Symbol>> rdeps;
  for (const auto& [sym, cl] : p.clauses) {
    deps[sym];
    for (const Symbol& b : bare_symbols(cl))
      if (p.is_intensional(b)) {
        deps[sym].insert(b);
        rdeps[b].insert(sym);
      }
  }

  std::set<Symbol> ready;
  for (const auto& [sym, ds] : deps)
    if (ds.empty()) ready.insert(sym);

  std::vector<Symbol> order;
  std::set<Symbol> done;
  while (!ready.empty()) {
    Symbol s = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(s);
    done.insert(s);
    for (const Symbol& up : rdeps[s]) {
      deps[up].erase(s);
      if (deps[up].empty() && !done.count(up)) ready.insert(up);
    }
  }

  if (order.size() < p.clauses.size()) {
    // Walk the leftover dependency graph until a symbol repeats.
    Symbol start;
    for (const auto& [sym, ds] : deps)
      if (!ds.empty()) {
        start = sym;
        break;
      }
    std::vector<Symbol> path{start};
    std::set<Symbol> seen{start};
    Symbol cur = start;
    for (;;) {
      Symbol next = *deps[cur].begin();
      path.push_back(next);
      if (seen.count(next)) break;
      seen.insert(next);
      cur = next;
    }
    std::string msg = "recursive view dependencies: ";
    for (std::size_t i = 0; i < path.size(); i++) {
      if (i) msg += " -> ";
      msg += path[i].name;
    }
    throw ValidationError(msg);
  }
  return order;
}

std::set<Symbol> full_support(const Program& p) {
  std::set<Symbol> s = p.edb;
  for (const auto& [sym, cl] : p.clauses) s.insert(sym);
  return s;
}

bool well_formed_slice(const Program& p, const std::set<Symbol>& syms) {
  for (const Symbol& s : syms) {
    auto it = p.clauses.find(s);
    if (it == p.clauses.end()) continue;
    for (const Symbol& b : bare_symbols(it->second))
      if (!syms.count(b)) return false;
  }
  return true;
}

namespace {

std::set<Symbol> bare_of_keys(const std::set<RelKey>& keys) {
  std::set<Symbol> out;
  for (const RelKey& k : keys) out.insert(k.sym);
  return out;
}

void check_disjoint(const EDelta& d, const char* where) {
  for (const auto& [k, dg] : d.del().entries())
    if (!eg_inter(d.add().at(k), dg).empty())
      throw InternalError(std::string("delta add/del overlap after ") + where +
                          " on key " + k.sym.name);
}

struct DebugChecker {
  const Program& p;
  const LRel& g;
  const std::set<Symbol>& support;
  const EvalEnv& env;

  void entry(const EDelta& d, const std::set<RelKey>& processed, const Symbol& s,
             const Clause& c) const {
    std::set<Symbol> bare = bare_of_keys(processed);
    if (!well_formed_slice(p, bare))
      throw InternalError("H2: processed symbols are not a well-formed slice before '" +
                          s.name + "'");
    for (const RelKey& k : d.keys())
      if (!processed.count(k))
        throw InternalError("H3: delta touches unprocessed key " + k.sym.name +
                            (k.tag == Tag::Plus ? "+" : "") + " before '" + s.name + "'");
    for (const Symbol& b : bare_symbols(c))
      if (!bare.count(b))
        throw InternalError("H4: clause '" + s.name + "' reads unprocessed symbol '" +
                            b.name + "'");
    std::set<Symbol> views;
    for (const Symbol& b : bare)
      if (p.is_intensional(b)) views.insert(b);
    if (!sat_delta(g, d, env, p, views))
      throw InternalError("H5: applied graph violates a processed clause before '" +
                          s.name + "'");
  }

  void exit(const EDelta& before, const EDelta& after, const std::set<RelKey>& processed,
            const Symbol& s) const {
    check_disjoint(after, "fwd_or_clause");
    std::set<RelKey> allowed = before.keys();
    allowed.insert({s, Tag::Single});
    allowed.insert({s, Tag::Plus});
    for (const RelKey& k : after.keys())
      if (!allowed.count(k))
        throw InternalError("delta gained unrelated key " + k.sym.name + " processing '" +
                            s.name + "'");
    LRel applied = apply_update(g, after);
    if (!is_closure(applied.at(s, Tag::Single), applied.at(s, Tag::Plus)))
      throw InternalError("closure entry for '" + s.name + "' is stale after processing");
    for (const RelKey& k : processed)
      if (k.tag == Tag::Single &&
          !is_closure(applied.at(k.sym, Tag::Single), applied.at(k.sym, Tag::Plus)))
        throw InternalError("closure entry for processed '" + k.sym.name +
                            "' broke while processing '" + s.name + "'");
  }
};

} // namespace

EDelta fwd_program(const Program& p, const LRel& g, const std::set<Symbol>& support,
                   EDelta d, std::set<RelKey> processed, const std::vector<Symbol>& todo,
                   const EvalEnv& env) {
  DebugChecker dbg{p, g, support, env};
  if (env.debug) {
    std::set<Symbol> views;
    for (const Symbol& s : support)
      if (p.is_intensional(s)) views.insert(s);
    if (!sat_program(g, env, p, views))
      throw InternalError("H1: input graph violates a supported clause");
  }

  for (const Symbol& s : todo) {
    auto it = p.clauses.find(s);
    if (it == p.clauses.end())
      throw ValidationError("symbol '" + s.name + "' scheduled but has no clause");
    const Clause& c = it->second;
    if (env.debug) dbg.entry(d, processed, s, c);
    EDelta next = fwd_or_clause(g, support, d, env, s, c);
    next = compute_closures(g, next, s, env);
    if (env.debug) dbg.exit(d, next, processed, s);
    d = std::move(next);
    processed.insert({s, Tag::Single});
    processed.insert({s, Tag::Plus});
  }

  if (env.debug) {
    std::set<Symbol> views;
    for (const RelKey& k : processed)
      if (p.is_intensional(k.sym)) views.insert(k.sym);
    if (!sat_delta(g, d, env, p, views))
      throw InternalError("applied result violates a processed clause");
  }
  return d;
}

LRel materialize(const Program& p, const LRel& g, const EvalEnv& env) {
  check_safety(p);
  std::vector<Symbol> todo = stratify(p);
  std::set<RelKey> processed;
  for (const Symbol& s : p.edb) {
    processed.insert({s, Tag::Single});
    processed.insert({s, Tag::Plus});
  }
  for (const Symbol& s : g.bare_symbols())
    if (!p.is_intensional(s)) {
      processed.insert({s, Tag::Single});
      processed.insert({s, Tag::Plus});
    }
  EDelta out = fwd_program(p, g, p.edb, EDelta{}, std::move(processed), todo, env);
  return apply_update(g, out);
}

EDelta maintain(const Program& p, const LRel& g, const std::set<Symbol>& support,
                const EDelta& d, const EvalEnv& env) {
  for (const RelKey& k : d.keys()) {
    if (p.is_intensional(k.sym))
      throw ValidationError("update touches view symbol '" + k.sym.name + "'");
    if (k.tag == Tag::Plus)
      throw ValidationError("update touches closure entry '" + k.sym.name +
                            "+' (closure entries are derived)");
  }

  EDelta fixed = d;
  for (const Symbol& s : bare_of_keys(d.keys()))
    fixed = compute_closures(g, fixed, s, env);

  std::set<RelKey> processed;
  auto mark = [&](const Symbol& s) {
    processed.insert({s, Tag::Single});
    processed.insert({s, Tag::Plus});
  };
  for (const Symbol& s : p.edb) mark(s);
  for (const Symbol& s : g.bare_symbols())
    if (!p.is_intensional(s)) mark(s);
  for (const RelKey& k : d.keys()) mark(k.sym);

  std::vector<Symbol> todo = stratify(p);
  return fwd_program(p, g, support, std::move(fixed), std::move(processed), todo, env);
}

} // namespace rdivm
