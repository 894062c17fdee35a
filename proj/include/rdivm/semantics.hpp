#pragma once

#include <optional>
#include <set>

#include "rdivm/eval.hpp"
#include "rdivm/graph.hpp"
#include "rdivm/matching.hpp"
#include "rdivm/syntax.hpp"

namespace rdivm {

// Ground literal satisfaction. pre: both terms are constants.
bool sat_literal(const LRel& g, const Literal& lit);

// Ground conjunction satisfaction. pre: ground.
bool sat_body(const LRel& g, const CBody& body);

// Universal satisfaction of one clause: every grounding of the clause's
// variables that satisfies some disjunct must have its head fact in
// (s, Single). Enumerates universe^arity groundings; throws BudgetError when
// that exceeds env.enum_budget.
bool sat_clause(const LRel& g, const EvalEnv& env, const Symbol& s, const Clause& c);

// Lexicographically smallest failing grounding, if any.
std::optional<Grounding> sat_clause_counterexample(const LRel& g, const EvalEnv& env,
                                                   const Symbol& s, const Clause& c);

// Clause satisfaction for every intensional symbol in syms.
bool sat_program(const LRel& g, const EvalEnv& env, const Program& p,
                 const std::set<Symbol>& syms);

// sat_program on the applied graph.
bool sat_delta(const LRel& g, const EDelta& d, const EvalEnv& env, const Program& p,
               const std::set<Symbol>& syms);

// Reference model by stratum-at-a-time grounding enumeration: no indexing, no
// incremental reasoning, closures re-derived by path search. Independent of
// the matching and engine modules.
LRel brute_force_model(const Program& p, const LRel& g_edb, const EvalEnv& env);

} // namespace rdivm
