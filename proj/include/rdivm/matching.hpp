#pragma once

#include <vector>

#include "rdivm/eval.hpp"
#include "rdivm/graph.hpp"
#include "rdivm/syntax.hpp"

namespace rdivm {

inline constexpr Node kUnbound = 0xFFFF'FFFFu;

// Partial assignment over a clause's dense variable space.
struct Substitution {
  std::vector<Node> slots;

  Substitution() = default;
  explicit Substitution(std::uint32_t arity) : slots(arity, kUnbound) {}

  bool bound(std::uint32_t v) const { return slots[v] != kUnbound; }
  auto operator<=>(const Substitution&) const = default;
};

// Total assignment: slot i is the value of Vi.
using Grounding = std::vector<Node>;

// All minimal extensions of s satisfying the atom against the given edge set.
// Equality atoms ignore the edge set; with both sides unbound they enumerate
// the node universe (diagnostic-logged). Sorted and deduplicated.
std::vector<Substitution> match_atom(const EGraph& edges, const EvalEnv& env,
                                     const Atom& atom, const Substitution& s);

// One fold step: extensions of every substitution in cur, merged canonically.
// Parallel over cur when env.parallel is set and cur is large.
std::vector<Substitution> match_step(const EGraph& edges, const EvalEnv& env,
                                     const Atom& atom,
                                     const std::vector<Substitution>& cur);

// Left-to-right fold of match_atom over the body's literals, starting from
// the empty substitution of the given arity.
std::vector<Substitution> match_body(const LRel& g, const EvalEnv& env,
                                     const CBody& body, std::uint32_t arity);

// Resolve a head (h1, h2) under a substitution that binds its variables.
// An unbound head variable means a safety check was bypassed: InternalError.
Edge ground_head(const Substitution& s, const Term& h1, const Term& h2);

// Replace every variable by its grounding value.
Clause ground_clause(const Grounding& eta, const Clause& c);

} // namespace rdivm
