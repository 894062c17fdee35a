#pragma once

#include <optional>

#include "rdivm/eval.hpp"
#include "rdivm/graph.hpp"

namespace rdivm {

// All pairs (x, y) with a directed path of length >= 1 from x to y.
// Per-source BFS over an adjacency index, parallel over sources when
// env.parallel is set. Output is canonical either way.
EGraph transitive_closure(const EGraph& g, const EvalEnv& env = {});

// Reference implementation: semi-naive iteration of the relational join to a
// fixpoint. Kept serial and simple; tests and the kernel benchmark compare
// the BFS kernel against it.
EGraph transitive_closure_serial(const EGraph& g);

// Oracle-side closure by exhaustive depth-first path search. Shares no code
// with the kernels above; backs is_closure and the brute-force model.
EGraph closure_by_paths(const EGraph& g);

// Does g_plus equal the set of path-connected pairs of g_single?
bool is_closure(const EGraph& g_single, const EGraph& g_plus);

struct WfViolation {
  Symbol sym;
  Edge edge;
  bool extra;  // true: closure edge with no witnessing path; false: missing pair
};

// Well-formedness: every symbol's Plus entry equals the closure of its Single
// entry. wf_violation reports the first offending edge in key order.
bool wf_graph(const LRel& g);
std::optional<WfViolation> wf_violation(const LRel& g);

// Re-derive (s, Plus) from the applied (s, Single) and fold the change into d.
// Additions-only changes take the incremental path when env.incremental_closure
// is set; any deletion forces a full recompute.
EDelta compute_closures(const LRel& g, const EDelta& d, const Symbol& s,
                        const EvalEnv& env = {});

// Copy of g with every symbol's Plus entry set to the closure of its Single
// entry. Makes any relation store well-formed.
LRel close_all(const LRel& g, const EvalEnv& env = {});

} // namespace rdivm
