#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rdivm/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Regular-path views over labeled graphs: materialization, "
               "incremental maintenance, and a brute-force reference"};
  app.require_subcommand(1);

  rdivm::CliOptions opt;
  std::string tag_str = "single";
  int rc = 0;

  auto add_eval_flags = [&](CLI::App* c) {
    c->add_option("-o,--out", opt.out_path, "output file (default: stdout)");
    c->add_flag("--debug-hypotheses", opt.debug,
                "verify engine hypotheses at every step (slow)");
    c->add_option("--enum-budget", opt.enum_budget,
                  "grounding enumeration budget for satisfaction checks");
    c->add_flag("--serial", opt.serial, "disable parallel kernels");
    c->add_flag("--incremental-closure", opt.incremental_closure,
                "reuse closure rows unreachable from added edges");
  };
  auto add_program = [&](CLI::App* c) {
    c->add_option("-p,--program", opt.program_path, "view definitions (.rd)")
        ->required();
  };
  auto add_graph = [&](CLI::App* c) {
    c->add_option("-g,--graph", opt.graph_path, "edge file (src<TAB>label<TAB>dst)")
        ->required();
  };
  auto add_updates = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("-u,--update", opt.update_paths,
                            "update batch file, one +/- edge per line (repeatable)");
    if (required) o->required();
  };

  CLI::App* check = app.add_subcommand(
      "check", "parse and normalize a program, print its core form");
  add_program(check);
  check->add_option("-o,--out", opt.out_path, "output file (default: stdout)");
  check->callback([&] { rc = rdivm::cmd_check(opt, std::cout, std::cerr); });

  CLI::App* mat = app.add_subcommand(
      "materialize", "derive every view over an extensional graph");
  add_program(mat);
  add_graph(mat);
  add_eval_flags(mat);
  mat->callback([&] { rc = rdivm::cmd_materialize(opt, std::cout, std::cerr); });

  CLI::App* upd = app.add_subcommand(
      "update", "fold update batches into a materialized store incrementally");
  add_program(upd);
  add_graph(upd);
  add_updates(upd, true);
  add_eval_flags(upd);
  upd->callback([&] { rc = rdivm::cmd_update(opt, std::cout, std::cerr); });

  CLI::App* qry = app.add_subcommand(
      "query", "print one relation of the (updated) model");
  add_program(qry);
  add_graph(qry);
  add_updates(qry, false);
  add_eval_flags(qry);
  qry->add_option("symbol", opt.query_symbol, "relation symbol to print")->required();
  qry->add_option("--tag", tag_str, "single (default) or plus")
      ->check(CLI::IsMember({"single", "plus"}));
  qry->callback([&] {
    opt.query_tag = tag_str == "plus" ? rdivm::Tag::Plus : rdivm::Tag::Single;
    rc = rdivm::cmd_query(opt, std::cout, std::cerr);
  });

  CLI::App* orc = app.add_subcommand(
      "oracle", "derive the model by brute-force grounding enumeration");
  add_program(orc);
  add_graph(orc);
  add_updates(orc, false);
  orc->add_option("-o,--out", opt.out_path, "output file (default: stdout)");
  orc->add_option("--enum-budget", opt.enum_budget,
                  "grounding enumeration budget");
  orc->callback([&] { rc = rdivm::cmd_oracle(opt, std::cout, std::cerr); });

  CLI::App* ben = app.add_subcommand(
      "bench", "compare full rematerialization against incremental maintenance");
  ben->add_option("-c,--config", opt.bench_config_path, "workload config (.json)");
  ben->add_option("-o,--out", opt.out_path, "CSV output file (default: stdout)");
  auto* seed_opt = ben->add_option("--seed", opt.seed, "override the config seed");
  ben->add_flag("--serial", opt.serial, "disable parallel kernels");
  ben->callback([&] {
    opt.seed_set = seed_opt->count() > 0;
    rc = rdivm::cmd_bench(opt, std::cout, std::cerr);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return rc;
}
