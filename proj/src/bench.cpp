#include "rdivm/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rdivm/closure.hpp"
#include "rdivm/errors.hpp"

namespace rdivm {

namespace {

std::uint32_t pick(Rng& rng, std::uint32_t n) {  // pre: n > 0
  return static_cast<std::uint32_t>(rng() % n);
}

double unit(Rng& rng) { return std::ldexp(static_cast<double>(rng() >> 11), -53); }

bool chance(Rng& rng, double p) { return unit(rng) < p; }

Literal rel(const Symbol& s, std::uint32_t va, std::uint32_t vb) {
  return {Tag::Single, Atom{s, Term::var(va), Term::var(vb)}};
}

Literal eq_vars(std::uint32_t va, std::uint32_t vb) {
  return {Tag::Single, Atom{std::nullopt, Term::var(va), Term::var(vb)}};
}

Literal eq_const(Node c, std::uint32_t v) {
  return {Tag::Single, Atom{std::nullopt, Term::constant(c), Term::var(v)}};
}

// Disjunct shapes. Each binds both head variables, so any mix is safe.
enum class Shape : std::uint8_t {
  Direct,     // r1(V0, V1)
  Inverse,    // r1(V1, V0)
  Chain2,     // r1(V0, V2), r2(V2, V1)
  Chain3,     // r1(V0, V2), r2(V2, V3), r3(V3, V1)
  Monitor,    // r1(V0, V1), r2(V2, V0), r2(V2, V1)
  Mutual,     // r1(V0, V1), r2(V1, V0)
  CommonSrc,  // r1(V2, V0), r2(V2, V1)
  EqJoin,     // r1(V0, V2), V2 = V1
  Fact,       // c1 = V0, c2 = V1
  Diag,       // V0 = V1
};

std::uint32_t shape_literals(Shape s) {
  switch (s) {
    case Shape::Direct:
    case Shape::Inverse:
    case Shape::Diag: return 1;
    case Shape::Chain2:
    case Shape::Mutual:
    case Shape::CommonSrc:
    case Shape::EqJoin:
    case Shape::Fact: return 2;
    case Shape::Chain3:
    case Shape::Monitor: return 3;
  }
  return 0;
}

CBody make_body(Shape shape, const std::vector<Symbol>& pool, std::uint32_t universe,
                double plus_prob, Rng& rng) {
  auto sym = [&] { return pool[pick(rng, static_cast<std::uint32_t>(pool.size()))]; };
  CBody b;
  switch (shape) {
    case Shape::Direct: b.lits = {rel(sym(), 0, 1)}; break;
    case Shape::Inverse: b.lits = {rel(sym(), 1, 0)}; break;
    case Shape::Chain2: b.lits = {rel(sym(), 0, 2), rel(sym(), 2, 1)}; break;
    case Shape::Chain3:
      b.lits = {rel(sym(), 0, 2), rel(sym(), 2, 3), rel(sym(), 3, 1)};
      break;
    case Shape::Monitor: {
      Symbol watch = sym();
      b.lits = {rel(sym(), 0, 1), rel(watch, 2, 0), rel(watch, 2, 1)};
      break;
    }
    case Shape::Mutual: b.lits = {rel(sym(), 0, 1), rel(sym(), 1, 0)}; break;
    case Shape::CommonSrc: b.lits = {rel(sym(), 2, 0), rel(sym(), 2, 1)}; break;
    case Shape::EqJoin: b.lits = {rel(sym(), 0, 2), eq_vars(2, 1)}; break;
    case Shape::Fact:
      b.lits = {eq_const(pick(rng, universe), 0), eq_const(pick(rng, universe), 1)};
      break;
    case Shape::Diag: b.lits = {eq_vars(0, 1)}; break;
  }
  for (Literal& l : b.lits)
    if (!l.atom.is_eq() && chance(rng, plus_prob)) l.tag = Tag::Plus;
  return b;
}

std::uint32_t body_arity(const CBody& b) {
  std::uint32_t a = 2;
  for (const Literal& l : b.lits) {
    if (l.atom.a.is_var()) a = std::max(a, l.atom.a.id + 1);
    if (l.atom.b.is_var()) a = std::max(a, l.atom.b.id + 1);
  }
  return a;
}

Clause make_clause(const std::vector<Shape>& shapes, const std::vector<Symbol>& pool,
                   std::uint32_t universe, std::uint32_t disjuncts,
                   std::uint32_t max_literals, double plus_prob, Rng& rng) {
  Clause c;
  for (std::uint32_t i = 0; i < disjuncts; i++) {
    Shape s;
    do {
      s = shapes[pick(rng, static_cast<std::uint32_t>(shapes.size()))];
    } while (shape_literals(s) > max_literals);
    CBody b = make_body(s, pool, universe, plus_prob, rng);
    c.arity = std::max(c.arity, body_arity(b));
    c.bodies.push_back(std::move(b));
  }
  return c;
}

} // namespace

LRel gen_graph(std::uint32_t nodes, const std::vector<Symbol>& symbols,
               double density, DegreePreset preset, Rng& rng) {
  if (nodes == 0 || symbols.empty())
    throw ValidationError("graph generator needs nodes and symbols");

  // Source sampling by cumulative weight: flat for Uniform, 1/rank for Zipf.
  std::vector<double> cum(nodes);
  double total = 0;
  for (std::uint32_t i = 0; i < nodes; i++) {
    total += preset == DegreePreset::Zipf ? 1.0 / (i + 1) : 1.0;
    cum[i] = total;
  }
  auto draw_src = [&] {
    double u = unit(rng) * total;
    return static_cast<Node>(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
  };

  auto want = static_cast<std::uint64_t>(std::llround(density * nodes));
  std::map<Symbol, std::vector<Edge>> buf;
  for (std::uint64_t e = 0; e < want; e++) {
    Symbol s = symbols[pick(rng, static_cast<std::uint32_t>(symbols.size()))];
    buf[s].emplace_back(draw_src(), pick(rng, nodes));
  }

  LRel out;
  for (auto& [s, edges] : buf) out.set({s, Tag::Single}, EGraph(std::move(edges)));
  return out;
}

Program gen_program(const std::vector<Symbol>& edb, std::uint32_t views, Rng& rng) {
  static const std::vector<Shape> kBenchShapes = {
      Shape::Direct, Shape::Chain2,    Shape::Chain3, Shape::Monitor,
      Shape::Mutual, Shape::CommonSrc, Shape::EqJoin,
  };
  Program p;
  p.edb.insert(edb.begin(), edb.end());
  std::vector<Symbol> prior;
  for (std::uint32_t i = 0; i < views; i++) {
    std::vector<Symbol> pool = edb;
    // Later views read earlier ones about a third of the time.
    if (!prior.empty() && chance(rng, 0.35))
      pool.insert(pool.end(), prior.begin(), prior.end());
    std::uint32_t disjuncts = chance(rng, 0.3) ? 2 : 1;
    Clause c = make_clause(kBenchShapes, pool, 1, disjuncts, 3, 0.25, rng);
    p.clauses.emplace(Symbol{"v" + std::to_string(i)}, std::move(c));
    prior.push_back({"v" + std::to_string(i)});
  }
  return p;
}

SupportSample sample_support_delta(const LRel& edb_single,
                                   const std::vector<Symbol>& symbols,
                                   double rho_supp, Rng& rng) {
  auto n = static_cast<std::uint32_t>(symbols.size());
  auto k = static_cast<std::uint32_t>(std::ceil(rho_supp * n));
  k = std::clamp<std::uint32_t>(k, 1, n > 1 ? n - 1 : 1);

  std::vector<std::uint32_t> order(n);
  for (std::uint32_t i = 0; i < n; i++) order[i] = i;
  for (std::uint32_t i = n - 1; i > 0; i--)
    std::swap(order[i], order[pick(rng, i + 1)]);

  std::set<std::uint32_t> sampled(order.begin(), order.begin() + k);
  SupportSample smp;
  LRel add;
  std::size_t base_edges = 0, delta_edges = 0;
  for (std::uint32_t i = 0; i < n; i++) {
    const EGraph& g = edb_single.at(symbols[i], Tag::Single);
    if (sampled.count(i)) {
      add.set({symbols[i], Tag::Single}, g);
      delta_edges += g.size();
    } else {
      smp.base.set({symbols[i], Tag::Single}, g);
      base_edges += g.size();
    }
  }
  smp.delta = EDelta::checked(std::move(add), {});
  smp.rho_pct = base_edges ? 100.0 * static_cast<double>(delta_edges) /
                                 static_cast<double>(base_edges)
                           : 0.0;
  return smp;
}

Instance random_instance(const GenConfig& cfg, Rng& rng) {
  static const std::vector<Shape> kAllShapes = {
      Shape::Direct, Shape::Inverse, Shape::Chain2,    Shape::Chain3, Shape::Monitor,
      Shape::Mutual, Shape::EqJoin,  Shape::CommonSrc, Shape::Fact,   Shape::Diag,
  };
  Instance inst;
  inst.universe = 2 + pick(rng, std::max(cfg.max_nodes, 2u) - 1);
  std::uint32_t n_edb = 1 + pick(rng, cfg.max_edb);
  std::uint32_t n_views = 1 + pick(rng, cfg.max_views);

  std::vector<Symbol> edb;
  for (std::uint32_t i = 0; i < n_edb; i++) edb.push_back({"e" + std::to_string(i)});
  inst.program.edb.insert(edb.begin(), edb.end());

  for (const Symbol& s : edb) {
    std::uint32_t m = pick(rng, 2 * inst.universe + 1);
    std::vector<Edge> edges;
    for (std::uint32_t j = 0; j < m; j++)
      edges.emplace_back(pick(rng, inst.universe), pick(rng, inst.universe));
    if (!edges.empty()) inst.graph.set({s, Tag::Single}, EGraph(std::move(edges)));
  }
  inst.graph = close_all(inst.graph);

  std::vector<Symbol> pool = edb;
  for (std::uint32_t i = 0; i < n_views; i++) {
    std::uint32_t disjuncts = chance(rng, 0.35) ? 2 : 1;
    Clause c = make_clause(kAllShapes, pool, inst.universe, disjuncts,
                           cfg.max_literals, 0.3, rng);
    Symbol v{"v" + std::to_string(i)};
    inst.program.clauses.emplace(v, std::move(c));
    pool.push_back(v);
  }
  return inst;
}

EDelta random_update(const Instance& inst, bool with_deletions, Rng& rng) {
  std::vector<Symbol> edb(inst.program.edb.begin(), inst.program.edb.end());
  LRel add, del;
  std::uint32_t k_add = pick(rng, 4);
  for (std::uint32_t i = 0; i < k_add; i++) {
    const Symbol& s = edb[pick(rng, static_cast<std::uint32_t>(edb.size()))];
    add.insert_edge({s, Tag::Single},
                    {pick(rng, inst.universe), pick(rng, inst.universe)});
  }
  if (with_deletions) {
    std::uint32_t k_del = 1 + pick(rng, 3);
    for (std::uint32_t i = 0; i < k_del; i++) {
      const Symbol& s = edb[pick(rng, static_cast<std::uint32_t>(edb.size()))];
      const EGraph& g = inst.graph.at(s, Tag::Single);
      if (g.empty()) continue;
      Edge e = g.edges()[pick(rng, static_cast<std::uint32_t>(g.size()))];
      if (add.at(s, Tag::Single).contains(e)) continue;
      del.insert_edge({s, Tag::Single}, e);
    }
  }
  return EDelta::checked(std::move(add), std::move(del));
}

BenchConfig load_bench_config(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bench config: ") + e.what());
  }
  static const std::set<std::string> known = {
      "node_count", "symbol_count", "density",     "preset",
      "workload_size", "rho_supp",  "repetitions", "seed",
  };
  for (const auto& [key, val] : j.items())
    if (!known.count(key))
      throw ValidationError("bench config: unknown key '" + key + "'");

  BenchConfig cfg;
  try {
    if (j.contains("node_count")) cfg.node_count = j["node_count"].get<std::uint32_t>();
    if (j.contains("symbol_count"))
      cfg.symbol_count = j["symbol_count"].get<std::uint32_t>();
    if (j.contains("density")) cfg.density = j["density"].get<double>();
    if (j.contains("preset")) {
      std::string p = j["preset"].get<std::string>();
      if (p == "uniform") cfg.preset = DegreePreset::Uniform;
      else if (p == "zipf") cfg.preset = DegreePreset::Zipf;
      else throw ValidationError("bench config: preset must be uniform or zipf");
    }
    if (j.contains("workload_size"))
      cfg.workload_size = j["workload_size"].get<std::uint32_t>();
    if (j.contains("rho_supp")) cfg.rho_supp = j["rho_supp"].get<std::vector<double>>();
    if (j.contains("repetitions"))
      cfg.repetitions = j["repetitions"].get<std::uint32_t>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bench config: ") + e.what());
  }

  if (cfg.node_count == 0 || cfg.symbol_count == 0 || cfg.workload_size == 0 ||
      cfg.repetitions == 0)
    throw ValidationError("bench config: counts must be positive");
  if (cfg.rho_supp.empty())
    throw ValidationError("bench config: rho_supp must be non-empty");
  for (double r : cfg.rho_supp)
    if (!(r > 0.0 && r <= 1.0))
      throw ValidationError("bench config: rho_supp values must be in (0, 1]");
  return cfg;
}

BenchConfig load_bench_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open bench config: " + path);
  return load_bench_config(in);
}

namespace {

double median_ms(const std::function<void()>& fn, std::uint32_t reps) {
  fn();  // warmup, untimed
  std::vector<double> times;
  times.reserve(reps);
  for (std::uint32_t i = 0; i < reps; i++) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

} // namespace

std::vector<BenchRow> run_bench(const BenchConfig& cfg, const EvalEnv& env,
                                std::ostream* progress) {
  Rng rng(cfg.seed);
  std::vector<Symbol> syms;
  for (std::uint32_t i = 0; i < cfg.symbol_count; i++) {
    char name[8];
    std::snprintf(name, sizeof name, "e%02u", i);
    syms.push_back({name});
  }

  LRel edb_single = gen_graph(cfg.node_count, syms, cfg.density, cfg.preset, rng);

  EvalEnv benv = env;
  benv.universe = cfg.node_count;
  benv.debug = false;  // hypothesis checks enumerate groundings; off at this scale

  std::vector<BenchRow> rows;
  for (std::uint32_t q = 0; q < cfg.workload_size; q++) {
    Program p = gen_program(syms, 2 + pick(rng, 2), rng);
    std::set<Symbol> support = full_support(p);
    for (double rho : cfg.rho_supp) {
      SupportSample smp = sample_support_delta(edb_single, syms, rho, rng);
      LRel base = close_all(smp.base, benv);
      LRel matd = materialize(p, base, benv);
      LRel updated_single = apply_update(smp.base, smp.delta);

      LRel fvm_result;
      EDelta ivm_delta;
      BenchRow row;
      row.query = "q" + std::to_string(q);
      row.rho_supp = rho;
      row.rho_pct = smp.rho_pct;
      row.fvm_ms = median_ms(
          [&] { fvm_result = materialize(p, close_all(updated_single, benv), benv); },
          cfg.repetitions);
      row.ivm_ms = median_ms(
          [&] { ivm_delta = maintain(p, matd, support, smp.delta, benv); },
          cfg.repetitions);
      row.outputs_equal = apply_update(matd, ivm_delta) == fvm_result;
      if (progress)
        *progress << row.query << " rho_supp=" << rho << " fvm=" << row.fvm_ms
                  << "ms ivm=" << row.ivm_ms << "ms equal="
                  << (row.outputs_equal ? "true" : "false") << "\n";
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "query,rho_supp,rho_pct,fvm_ms,ivm_ms,time_gain_ms,ratio_gain_pct,"
         "outputs_equal\n";
  for (const BenchRow& r : rows) {
    double gain = r.fvm_ms - r.ivm_ms;
    double ratio = r.fvm_ms > 0 ? 100.0 * (1.0 - r.ivm_ms / r.fvm_ms) : 0.0;
    char line[256];
    std::snprintf(line, sizeof line, "%s,%.2f,%.3f,%.3f,%.3f,%.3f,%.2f,%s\n",
                  r.query.c_str(), r.rho_supp, r.rho_pct, r.fvm_ms, r.ivm_ms, gain,
                  ratio, r.outputs_equal ? "true" : "false");
    out << line;
  }
}

} // namespace rdivm
