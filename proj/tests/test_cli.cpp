#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "rdivm/cli.hpp"
#include "rdivm/io.hpp"

using namespace rdivm;
using rdivm::testing::eg;
using rdivm::testing::fixture;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream f(path);
  REQUIRE(f.good());
  f << text;
  return path;
}

struct Run {
  int rc;
  std::string out;
  std::string err;
};

Run run(int (*cmd)(const CliOptions&, std::ostream&, std::ostream&),
        const CliOptions& opt) {
  std::ostringstream out, err;
  int rc = cmd(opt, out, err);
  return {rc, out.str(), err.str()};
}

} // namespace

TEST_CASE("check prints the strata comment and the normalized program") {
  CliOptions opt;
  opt.program_path = fixture("detectable.rd");
  Run r = run(cmd_check, opt);
  CHECK(r.rc == 0);
  CHECK(r.out.rfind("% strata: detectable\n", 0) == 0);
  CHECK(r.out.find("detectable(V0, V1) :- s(V0, V1), m(V2, V0), m(V2, V1).") !=
        std::string::npos);

  opt.program_path = fixture("fraud.rd");
  Run f = run(cmd_check, opt);
  CHECK(f.rc == 0);
  CHECK(f.out.find("% strata: cmonitored secures stransfer pstransfer suspect\n") !=
        std::string::npos);
}

TEST_CASE("missing inputs are rejected with exit 1 and an error prefix") {
  SUBCASE("no program path") {
    Run r = run(cmd_check, CliOptions{});
    CHECK(r.rc == 1);
    CHECK(r.err.rfind("error: ", 0) == 0);
    CHECK(r.err.find("--program") != std::string::npos);
  }
  SUBCASE("nonexistent program file") {
    CliOptions opt;
    opt.program_path = "/nonexistent/x.rd";
    Run r = run(cmd_check, opt);
    CHECK(r.rc == 1);
    CHECK(r.err.find("cannot open") != std::string::npos);
  }
  SUBCASE("nonexistent graph file") {
    CliOptions opt;
    opt.program_path = fixture("detectable.rd");
    opt.graph_path = "/nonexistent/x.edges";
    Run r = run(cmd_materialize, opt);
    CHECK(r.rc == 1);
    CHECK(r.err.find("cannot open") != std::string::npos);
  }
  SUBCASE("update without batches") {
    CliOptions opt;
    opt.program_path = fixture("detectable.rd");
    opt.graph_path = fixture("detectable_base.edges");
    Run r = run(cmd_update, opt);
    CHECK(r.rc == 1);
    CHECK(r.err.find("--update") != std::string::npos);
  }
}

TEST_CASE("materialize derives the view and serializes a reloadable store") {
  CliOptions opt;
  opt.program_path = fixture("detectable.rd");
  opt.graph_path = fixture("detectable_base.edges");
  Run r = run(cmd_materialize, opt);
  REQUIRE(r.rc == 0);

  std::istringstream back(r.out);
  Database db = load_edges(back);
  auto n = [&](const char* name) { return db.nodes.find(name).value(); };
  CHECK(db.rel.at(Symbol{"detectable"}, Tag::Single) ==
        eg({{n("n6"), n("n0")}, {n("n3"), n("n0")}}));
  // Closure entries ride along and pass the well-formedness check on reload.
  CHECK(db.rel.keys().count({Symbol{"detectable"}, Tag::Plus}) == 1);
}

TEST_CASE("materialize rejects graphs that already carry view entries") {
  CliOptions opt;
  opt.program_path = fixture("detectable.rd");
  opt.graph_path = write_temp("rdivm_cli_viewgraph.edges",
                              "n0\ts\tn1\nn0\tdetectable\tn1\n");
  Run r = run(cmd_materialize, opt);
  CHECK(r.rc == 1);
  CHECK(r.err.find("has a clause but also appears") != std::string::npos);
}

TEST_CASE("update maintains the view, reports batches, and matches the oracle") {
  CliOptions opt;
  opt.program_path = fixture("detectable.rd");
  opt.graph_path = fixture("detectable_base.edges");
  opt.update_paths = {fixture("detectable_update.upd")};

  Run upd = run(cmd_update, opt);
  REQUIRE(upd.rc == 0);
  CHECK(upd.err.find("batch 1:\n") != std::string::npos);
  CHECK(upd.err.find("detectable: +3 -0") != std::string::npos);
  CHECK(upd.err.find("m: +2 -0") != std::string::npos);
  CHECK(upd.err.find("s: +1 -0") != std::string::npos);

  Run orc = run(cmd_oracle, opt);
  REQUIRE(orc.rc == 0);
  CHECK(upd.out == orc.out);
}

TEST_CASE("update refuses batches that touch view symbols") {
  CliOptions opt;
  opt.program_path = fixture("detectable.rd");
  opt.graph_path = fixture("detectable_base.edges");
  opt.update_paths = {
      write_temp("rdivm_cli_viewtouch.upd", "+\tn0\tdetectable\tn1\n")};
  Run r = run(cmd_update, opt);
  CHECK(r.rc == 1);
  CHECK(r.err.find("view symbol") != std::string::npos);
}

TEST_CASE("query prints sorted name pairs") {
  CliOptions opt;
  opt.program_path = fixture("detectable.rd");
  opt.graph_path = fixture("detectable_base.edges");
  opt.query_symbol = "detectable";

  SUBCASE("base store") {
    Run r = run(cmd_query, opt);
    CHECK(r.rc == 0);
    CHECK(r.out == "n3\tn0\nn6\tn0\n");
  }
  SUBCASE("after an update batch") {
    opt.update_paths = {fixture("detectable_update.upd")};
    Run r = run(cmd_query, opt);
    CHECK(r.rc == 0);
    CHECK(r.out == "n0\tn2\nn0\tn5\nn2\tn0\nn3\tn0\nn6\tn0\n");
  }
  SUBCASE("closure tag") {
    // The base s-edges form one strongly connected component over five nodes,
    // so the closure is the full 5x5 square.
    opt.query_symbol = "s";
    opt.query_tag = Tag::Plus;
    Run r = run(cmd_query, opt);
    CHECK(r.rc == 0);
    std::size_t lines = 0;
    for (char c : r.out)
      if (c == '\n') lines++;
    CHECK(lines == 25);
    CHECK(r.out.find("n0\tn0\n") != std::string::npos);
  }
  SUBCASE("unknown symbol") {
    opt.query_symbol = "nosuch";
    Run r = run(cmd_query, opt);
    CHECK(r.rc == 1);
    CHECK(r.err.find("unknown symbol 'nosuch'") != std::string::npos);
  }
}

TEST_CASE("results route to --out when given") {
  CliOptions opt;
  opt.program_path = fixture("detectable.rd");
  opt.graph_path = fixture("detectable_base.edges");
  opt.query_symbol = "detectable";
  opt.out_path =
      (std::filesystem::temp_directory_path() / "rdivm_cli_out.txt").string();

  Run r = run(cmd_query, opt);
  REQUIRE(r.rc == 0);
  CHECK(r.out.empty());
  std::ifstream f(opt.out_path);
  std::stringstream buf;
  buf << f.rdbuf();
  CHECK(buf.str() == "n3\tn0\nn6\tn0\n");

  opt.out_path = "/nonexistent/dir/out.txt";
  Run bad = run(cmd_query, opt);
  CHECK(bad.rc == 1);
  CHECK(bad.err.find("cannot open output file") != std::string::npos);
}

TEST_CASE("bench runs a small config end to end") {
  CliOptions opt;
  opt.bench_config_path = write_temp("rdivm_cli_bench.json",
                                     R"({"node_count": 40, "symbol_count": 4,
        "density": 1.0, "workload_size": 1, "rho_supp": [0.2],
        "repetitions": 1, "seed": 5})");
  Run r = run(cmd_bench, opt);
  REQUIRE(r.rc == 0);
  CHECK(r.out.rfind("query,rho_supp,rho_pct,fvm_ms,ivm_ms,time_gain_ms,"
                    "ratio_gain_pct,outputs_equal\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : r.out)
    if (c == '\n') lines++;
  CHECK(lines == 2);  // header + one row
  CHECK(!r.err.empty());

  opt.bench_config_path = "/nonexistent/bench.json";
  Run bad = run(cmd_bench, opt);
  CHECK(bad.rc == 1);
}
