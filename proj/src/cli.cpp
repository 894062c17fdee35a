#include "rdivm/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "rdivm/bench.hpp"
#include "rdivm/closure.hpp"
#include "rdivm/engine.hpp"
#include "rdivm/errors.hpp"
#include "rdivm/io.hpp"
#include "rdivm/semantics.hpp"

namespace rdivm {

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

EvalEnv env_of(const CliOptions& opt) {
  EvalEnv env;
  env.enum_budget = opt.enum_budget;
  env.debug = opt.debug;
  env.parallel = !opt.serial;
  env.incremental_closure = opt.incremental_closure;
  return env;
}

// Route results to the --out file when given, stdout otherwise.
int with_output(const CliOptions& opt, std::ostream& out,
                const std::function<void(std::ostream&)>& write) {
  if (opt.out_path.empty()) {
    write(out);
    return 0;
  }
  std::ofstream f(opt.out_path);
  if (!f) throw ValidationError("cannot open output file: " + opt.out_path);
  write(f);
  return 0;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

// Graph entries for symbols the program defines as views are a conflict when
// the input is meant to be extensional.
void reject_view_entries(const Program& p, const Database& db) {
  for (const Symbol& s : db.rel.bare_symbols())
    if (p.is_intensional(s))
      throw ValidationError("symbol '" + s.name +
                            "' has a clause but also appears in the graph");
}

// Extensional slice of a store: drop view entries, keep Single edges only.
LRel extensional_single(const Program& p, const LRel& g) {
  LRel out;
  for (const auto& [k, edges] : g.entries())
    if (!p.is_intensional(k.sym) && k.tag == Tag::Single) out.set(k, edges);
  return out;
}

// Per-key change summary: `label[+]: +adds -dels`, sorted by key.
void print_delta_summary(std::ostream& err, const EDelta& d) {
  for (const RelKey& k : d.keys()) {
    std::string label = k.sym.name + (k.tag == Tag::Plus ? "+" : "");
    err << label << ": +" << d.add().at(k).size() << " -" << d.del().at(k).size()
        << "\n";
  }
}

struct Loaded {
  Database db;
  Program program;
  EvalEnv env;
};

Loaded load_common(const CliOptions& opt) {
  require(!opt.program_path.empty(), "a --program file is required");
  require(!opt.graph_path.empty(), "a --graph file is required");
  Loaded l;
  l.env = env_of(opt);
  l.db = load_edges_file(opt.graph_path, l.env);
  l.program = load_program_file(opt.program_path, l.db.nodes);
  return l;
}

// Updates may introduce new node names, so the universe is only known after
// every batch is parsed.
std::vector<EDelta> load_updates(const CliOptions& opt, NodeTable& nodes) {
  std::vector<EDelta> batches;
  for (const std::string& path : opt.update_paths)
    batches.push_back(load_update_file(path, nodes));
  return batches;
}

// Materialize if the store is purely extensional; trust it as a model
// otherwise (debug mode re-verifies either way).
LRel ensure_model(const Program& p, const LRel& g, const EvalEnv& env) {
  bool has_views = false;
  for (const Symbol& s : g.bare_symbols())
    if (p.is_intensional(s)) has_views = true;
  return has_views ? g : materialize(p, g, env);
}

} // namespace

int cmd_check(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require(!opt.program_path.empty(), "a --program file is required");
    NodeTable nodes;
    Program p = load_program_file(opt.program_path, nodes);
    std::vector<Symbol> order = stratify(p);
    return with_output(opt, out, [&](std::ostream& o) {
      o << "% strata:";
      for (const Symbol& s : order) o << " " << s.name;
      o << "\n" << print_program(p, nodes);
    });
  });
}

int cmd_materialize(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Loaded l = load_common(opt);
    reject_view_entries(l.program, l.db);
    l.env.universe = l.db.nodes.size();
    LRel model = materialize(l.program, l.db.rel, l.env);
    return with_output(opt, out, [&](std::ostream& o) {
      save_edges(o, Database{l.db.nodes, model});
    });
  });
}

int cmd_update(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Loaded l = load_common(opt);
    require(!opt.update_paths.empty(), "at least one --update file is required");
    std::vector<EDelta> batches = load_updates(opt, l.db.nodes);
    l.env.universe = l.db.nodes.size();

    LRel model = ensure_model(l.program, l.db.rel, l.env);
    std::set<Symbol> support = full_support(l.program);
    std::size_t batch_no = 0;
    for (const EDelta& d : batches) {
      EDelta change = maintain(l.program, model, support, d, l.env);
      model = apply_update(model, change);
      err << "batch " << ++batch_no << ":\n";
      print_delta_summary(err, change);
    }
    return with_output(opt, out, [&](std::ostream& o) {
      save_edges(o, Database{l.db.nodes, model});
    });
  });
}

int cmd_query(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Loaded l = load_common(opt);
    require(!opt.query_symbol.empty(), "a symbol to query is required");
    std::vector<EDelta> batches = load_updates(opt, l.db.nodes);
    l.env.universe = l.db.nodes.size();

    Symbol q{opt.query_symbol};
    require(l.program.is_intensional(q) || l.program.edb.count(q) ||
                l.db.rel.bare_symbols().count(q),
            "unknown symbol '" + q.name + "'");

    LRel model = ensure_model(l.program, l.db.rel, l.env);
    std::set<Symbol> support = full_support(l.program);
    for (const EDelta& d : batches)
      model = apply_update(model, maintain(l.program, model, support, d, l.env));

    std::vector<std::string> lines;
    for (Edge e : model.at(q, opt.query_tag).edges())
      lines.push_back(l.db.nodes.name(e.first) + "\t" + l.db.nodes.name(e.second));
    std::sort(lines.begin(), lines.end());
    return with_output(opt, out, [&](std::ostream& o) {
      for (const std::string& line : lines) o << line << "\n";
    });
  });
}

int cmd_oracle(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Loaded l = load_common(opt);
    std::vector<EDelta> batches = load_updates(opt, l.db.nodes);
    l.env.universe = l.db.nodes.size();

    LRel edb = extensional_single(l.program, l.db.rel);
    for (const EDelta& d : batches) edb = apply_update(edb, d);
    LRel model = brute_force_model(l.program, edb, l.env);
    return with_output(opt, out, [&](std::ostream& o) {
      save_edges(o, Database{l.db.nodes, model});
    });
  });
}

int cmd_bench(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    BenchConfig cfg = opt.bench_config_path.empty()
                          ? BenchConfig{}
                          : load_bench_config_file(opt.bench_config_path);
    if (opt.seed_set) cfg.seed = opt.seed;
    std::vector<BenchRow> rows = run_bench(cfg, env_of(opt), &err);
    for (const BenchRow& r : rows)
      if (!r.outputs_equal)
        throw InternalError("bench row " + r.query +
                            ": incremental and full results diverged");
    return with_output(opt, out,
                       [&](std::ostream& o) { write_bench_csv(o, rows); });
  });
}

} // namespace rdivm
