#include "rdivm/semantics.hpp"

#include <algorithm>
#include <atomic>

#include "rdivm/closure.hpp"
#include "rdivm/errors.hpp"

namespace rdivm {

namespace {

Node value_of(const Term& t, const Grounding& eta) {
  return t.is_var() ? eta[t.id] : t.id;
}

bool holds(const LRel& g, const Literal& lit, const Grounding& eta) {
  Node a = value_of(lit.atom.a, eta);
  Node b = value_of(lit.atom.b, eta);
  if (lit.atom.is_eq()) return a == b;
  return g.at(*lit.atom.rel, lit.tag).contains({a, b});
}

bool body_holds(const LRel& g, const CBody& body, const Grounding& eta) {
  for (const Literal& lit : body.lits)
    if (!holds(g, lit, eta)) return false;
  return true;
}

// Grounding space size, or nullopt on overflow past the budget.
std::uint64_t grounding_count(const EvalEnv& env, std::uint32_t arity) {
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < arity; i++) {
    if (env.universe != 0 && total > env.enum_budget / env.universe + 1)
      return env.enum_budget + 1;
    total *= env.universe;
  }
  return total;
}

// eta for enumeration index k: slot 0 varies slowest.
Grounding eta_at(std::uint64_t k, std::uint32_t arity, std::uint32_t universe) {
  Grounding eta(arity, 0);
  for (std::uint32_t i = arity; i-- > 0;) {
    eta[i] = static_cast<Node>(k % universe);
    k /= universe;
  }
  return eta;
}

bool clause_violated_at(const LRel& g, const Symbol& s, const Clause& c,
                        const Grounding& eta) {
  for (const CBody& body : c.bodies)
    if (body_holds(g, body, eta))
      return !g.at(s, Tag::Single).contains({eta[0], eta[1]});
  return false;
}

void check_budget(const LRel&, const EvalEnv& env, const Clause& c) {
  if (grounding_count(env, c.arity) > env.enum_budget)
    throw BudgetError("grounding enumeration " + std::to_string(env.universe) + "^" +
                      std::to_string(c.arity) + " exceeds budget " +
                      std::to_string(env.enum_budget));
}

} // namespace

bool sat_literal(const LRel& g, const Literal& lit) {
  if (lit.atom.a.is_var() || lit.atom.b.is_var())
    throw InternalError("sat_literal on a non-ground literal");
  return holds(g, lit, {});
}

bool sat_body(const LRel& g, const CBody& body) {
  for (const Literal& lit : body.lits)
    if (!sat_literal(g, lit)) return false;
  return true;
}

bool sat_clause(const LRel& g, const EvalEnv& env, const Symbol& s, const Clause& c) {
  check_budget(g, env, c);
  if (env.universe == 0) return true;
  std::uint64_t total = grounding_count(env, c.arity);

  std::atomic<bool> ok{true};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1024) if (env.parallel)
#endif
  for (std::uint64_t k = 0; k < total; k++) {
    if (!ok.load(std::memory_order_relaxed)) continue;
    if (clause_violated_at(g, s, c, eta_at(k, c.arity, env.universe)))
      ok.store(false, std::memory_order_relaxed);
  }
  return ok.load();
}

std::optional<Grounding> sat_clause_counterexample(const LRel& g, const EvalEnv& env,
                                                   const Symbol& s, const Clause& c) {
  check_budget(g, env, c);
  if (env.universe == 0) return std::nullopt;
  std::uint64_t total = grounding_count(env, c.arity);
  for (std::uint64_t k = 0; k < total; k++) {
    Grounding eta = eta_at(k, c.arity, env.universe);
    if (clause_violated_at(g, s, c, eta)) return eta;
  }
  return std::nullopt;
}

bool sat_program(const LRel& g, const EvalEnv& env, const Program& p,
                 const std::set<Symbol>& syms) {
  for (const Symbol& s : syms) {
    auto it = p.clauses.find(s);
    if (it == p.clauses.end()) continue;  // extensional: nothing to check
    if (!sat_clause(g, env, s, it->second)) return false;
  }
  return true;
}

bool sat_delta(const LRel& g, const EDelta& d, const EvalEnv& env, const Program& p,
               const std::set<Symbol>& syms) {
  return sat_program(apply_update(g, d), env, p, syms);
}

LRel brute_force_model(const Program& p, const LRel& g_edb, const EvalEnv& env) {
  // Local dependency order; deliberately not the engine's stratifier.
  std::vector<Symbol> order;
  std::set<Symbol> done;
  while (order.size() < p.clauses.size()) {
    bool progress = false;
    for (const auto& [sym, cl] : p.clauses) {
      if (done.count(sym)) continue;
      bool ready = true;
      for (const Symbol& dep : bare_symbols(cl))
        if (p.is_intensional(dep) && !done.count(dep)) ready = false;
      if (ready) {
        order.push_back(sym);
        done.insert(sym);
        progress = true;
      }
    }
    if (!progress) throw ValidationError("program has recursive view dependencies");
  }

  LRel model;
  for (const Symbol& s : g_edb.bare_symbols()) {
    const EGraph& single = g_edb.at(s, Tag::Single);
    model.set({s, Tag::Single}, single);
    model.set({s, Tag::Plus}, closure_by_paths(single));
  }

  for (const Symbol& s : order) {
    const Clause& c = p.clauses.at(s);
    check_budget(model, env, c);
    std::uint64_t total = grounding_count(env, c.arity);
    std::vector<Edge> derived;
    if (env.universe != 0) {
      for (std::uint64_t k = 0; k < total; k++) {
        Grounding eta = eta_at(k, c.arity, env.universe);
        for (const CBody& body : c.bodies)
          if (body_holds(model, body, eta)) {
            derived.emplace_back(eta[0], eta[1]);
            break;
          }
      }
    }
    EGraph rel(std::move(derived));
    model.set({s, Tag::Plus}, closure_by_paths(rel));
    model.set({s, Tag::Single}, std::move(rel));
  }
  return model;
}

} // namespace rdivm
