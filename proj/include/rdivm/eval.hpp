#pragma once

#include <cstdint>

namespace rdivm {

struct EngineStats {
  std::uint64_t base_evals = 0;           // clause evaluations via the full rewrite path
  std::uint64_t delta_evals = 0;          // clause evaluations via the incremental path
  std::uint64_t closures_full = 0;        // closure entries recomputed from scratch
  std::uint64_t closures_incremental = 0; // closure entries maintained from additions
  std::uint64_t eq_enumerations = 0;      // Eq atoms matched with both sides unbound
};

struct EvalEnv {
  // Node universe size. Groundings and unbound Eq atoms range over [0, universe).
  std::uint32_t universe = 0;
  // Cap on |universe|^arity grounding enumerations in the satisfaction oracle.
  std::uint64_t enum_budget = 10'000'000;
  // Check engine hypotheses and well-formedness at every step (costly).
  bool debug = false;
  // Use the OpenMP kernels. Results are identical with or without.
  bool parallel = true;
  // Maintain closures from additions-only deltas instead of recomputing.
  bool incremental_closure = false;
  EngineStats* stats = nullptr;
};

} // namespace rdivm
