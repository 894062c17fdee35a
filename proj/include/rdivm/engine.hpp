#pragma once

#include <set>
#include <vector>

#include "rdivm/eval.hpp"
#include "rdivm/graph.hpp"
#include "rdivm/matching.hpp"
#include "rdivm/syntax.hpp"

namespace rdivm {

enum class MaskTag : std::uint8_t { Base, Delta, Full };

// One row of the delta factoring of a body: literals left of the diagonal
// read the updated relation (Full), the diagonal literal reads the additions
// (Delta), literals right of it read the original relation (Base). Equality
// literals are Full in every row and never sit on the diagonal.
struct MaskedBody {
  std::vector<std::pair<MaskTag, Literal>> lits;
};

// One row per relational literal, in literal order. A body with no
// relational literals has no rows.
std::vector<MaskedBody> body_mask(const CBody& body);

// Extensions of s against the edge sets the mask selects: Base reads g,
// Delta reads d.add, Full reads both. Equality atoms are mask-independent.
std::vector<Substitution> match_delta_atom(const LRel& g, const EDelta& d,
                                           const EvalEnv& env, MaskTag m,
                                           const Literal& lit, const Substitution& s);

// Left-to-right fold of match_delta_atom over one masked row.
std::vector<Substitution> match_delta_body(const LRel& g, const EDelta& d,
                                           const EvalEnv& env, const MaskedBody& mb,
                                           std::uint32_t arity);

// Full re-derivation: rewrite (s, Single) of the applied graph to exactly the
// heads derivable from it. May retract facts.
EDelta fwd_or_clause_base(const LRel& g, const EDelta& d, const EvalEnv& env,
                          const Symbol& s, const Clause& c);

// Incremental derivation over the delta factoring: additions only.
EDelta fwd_or_clause_delta(const LRel& g, const EDelta& d, const EvalEnv& env,
                           const Symbol& s, const Clause& c);

// Dispatch: the incremental path requires s to be supported and the delta to
// hold no deletions for any (symbol, tag) the clause body reads.
EDelta fwd_or_clause(const LRel& g, const std::set<Symbol>& support, const EDelta& d,
                     const EvalEnv& env, const Symbol& s, const Clause& c);

// View symbols in dependency order, ties broken by name. Throws
// ValidationError listing one cycle when views are mutually recursive.
std::vector<Symbol> stratify(const Program& p);

// Every symbol of the program: the support set once a materialization exists.
std::set<Symbol> full_support(const Program& p);

// Is syms closed under clause body dependencies?
bool well_formed_slice(const Program& p, const std::set<Symbol>& syms);

// Walk todo in order: evaluate each clause against (g, d), re-derive its
// closure entry, and mark it processed. env.debug additionally verifies the
// run's hypotheses at every step and the soundness of the result.
EDelta fwd_program(const Program& p, const LRel& g, const std::set<Symbol>& support,
                   EDelta d, std::set<RelKey> processed, const std::vector<Symbol>& todo,
                   const EvalEnv& env);

// First-ever evaluation: derive every view over an extensional graph whose
// closure entries are in place. Returns the full model.
LRel materialize(const Program& p, const LRel& g, const EvalEnv& env);

// Incremental maintenance: fold an extensional update into a delta covering
// every affected view and closure entry. apply_update(g, result) equals the
// from-scratch materialization of the updated extensional graph.
EDelta maintain(const Program& p, const LRel& g, const std::set<Symbol>& support,
                const EDelta& d, const EvalEnv& env);

} // namespace rdivm
