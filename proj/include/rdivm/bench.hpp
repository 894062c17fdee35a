#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "rdivm/engine.hpp"
#include "rdivm/eval.hpp"
#include "rdivm/graph.hpp"
#include "rdivm/syntax.hpp"

namespace rdivm {

using Rng = std::mt19937_64;

enum class DegreePreset { Uniform, Zipf };

// Workload parameters for the full-recompute vs incremental comparison.
struct BenchConfig {
  std::uint32_t node_count = 1000;
  std::uint32_t symbol_count = 27;
  double density = 1.2;  // total edges ~ node_count * density
  DegreePreset preset = DegreePreset::Uniform;
  std::uint32_t workload_size = 10;
  std::vector<double> rho_supp = {0.05, 0.10, 0.15, 0.20, 0.25};
  std::uint32_t repetitions = 5;
  std::uint64_t seed = 7;
};

// Strict JSON loader: unknown keys are rejected.
BenchConfig load_bench_config(std::istream& in);
BenchConfig load_bench_config_file(const std::string& path);

struct BenchRow {
  std::string query;
  double rho_supp = 0;
  double rho_pct = 0;
  double fvm_ms = 0;
  double ivm_ms = 0;
  bool outputs_equal = false;
};

// One row per (query, rho_supp) pair, in workload order. Each row times a
// from-scratch rematerialization against incremental maintenance of the same
// update and cross-checks that both yield the same model.
std::vector<BenchRow> run_bench(const BenchConfig& cfg, const EvalEnv& env,
                                std::ostream* progress = nullptr);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

// Extensional store with Single entries only; closures are the caller's job.
LRel gen_graph(std::uint32_t nodes, const std::vector<Symbol>& symbols,
               double density, DegreePreset preset, Rng& rng);

// Random stratified program over the given extensional symbols: safe by
// construction, acyclic by construction (each view reads only earlier ones).
Program gen_program(const std::vector<Symbol>& edb, std::uint32_t views, Rng& rng);

// Move a fraction of the extensional symbols out of the base store and into a
// pending addition: pick ceil(rho_supp * |edb|) symbols, their entire edge
// sets become the delta. rho_pct reports 100 * |delta| / |base| in edges.
struct SupportSample {
  LRel base;     // Single entries only
  EDelta delta;  // additions only, Single entries only
  double rho_pct = 0;
};
SupportSample sample_support_delta(const LRel& edb_single,
                                   const std::vector<Symbol>& symbols,
                                   double rho_supp, Rng& rng);

// Size bounds for the small random instances the differential suites consume.
struct GenConfig {
  std::uint32_t max_nodes = 5;
  std::uint32_t max_edb = 4;
  std::uint32_t max_views = 3;
  std::uint32_t max_literals = 3;
};

struct Instance {
  Program program;
  LRel graph;  // extensional, well-formed (Plus entries in place)
  std::uint32_t universe = 0;
};

Instance random_instance(const GenConfig& cfg, Rng& rng);

// Extensional update for an instance: a few additions, plus (optionally) a
// few deletions of present edges. Disjoint per key by construction.
EDelta random_update(const Instance& inst, bool with_deletions, Rng& rng);

} // namespace rdivm
