#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "rdivm/closure.hpp"
#include "rdivm/errors.hpp"

using namespace rdivm;
using rdivm::testing::eg;

TEST_CASE("transitive closure basics") {
  EvalEnv env;
  CHECK(transitive_closure({}, env).empty());
  CHECK(transitive_closure(eg({{0, 1}}), env) == eg({{0, 1}}));

  SUBCASE("chain") {
    CHECK(transitive_closure(eg({{0, 1}, {1, 2}}), env) ==
          eg({{0, 1}, {0, 2}, {1, 2}}));
  }
  SUBCASE("two-cycle reaches everything including itself") {
    CHECK(transitive_closure(eg({{0, 1}, {1, 0}}), env) ==
          eg({{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  }
  SUBCASE("self-loop") {
    CHECK(transitive_closure(eg({{3, 3}}), env) == eg({{3, 3}}));
  }
}

TEST_CASE("closure contains the graph, is transitive and idempotent") {
  std::mt19937_64 rng(5);
  EvalEnv env;
  for (int t = 0; t < 60; t++) {
    std::vector<Edge> es;
    Node n = 2 + rng() % 5;
    for (Node a = 0; a < n; a++)
      for (Node b = 0; b < n; b++)
        if (rng() % 100 < 30) es.emplace_back(a, b);
    EGraph g(std::move(es));
    EGraph c = transitive_closure(g, env);
    CHECK(eg_diff(g, c).empty());
    for (Edge e : c.edges())
      for (Edge f : c.from(e.second)) CHECK(c.contains({e.first, f.second}));
    CHECK(transitive_closure(c, env) == c);
  }
}

TEST_CASE("the three closure implementations agree") {
  std::mt19937_64 rng(11);
  EvalEnv env;
  for (int t = 0; t < 120; t++) {
    std::vector<Edge> es;
    Node n = 1 + rng() % 6;
    for (Node a = 0; a < n; a++)
      for (Node b = 0; b < n; b++)
        if (rng() % 100 < 35) es.emplace_back(a, b);
    EGraph g(std::move(es));
    EGraph bfs = transitive_closure(g, env);
    CHECK(bfs == transitive_closure_serial(g));
    CHECK(bfs == closure_by_paths(g));
    CHECK(is_closure(g, bfs));
  }
}

TEST_CASE("wf_violation reports the first bad closure entry") {
  Symbol s{"s"};
  LRel g;
  g.set({s, Tag::Single}, eg({{0, 1}, {1, 2}}));

  SUBCASE("well-formed") {
    g.set({s, Tag::Plus}, eg({{0, 1}, {0, 2}, {1, 2}}));
    CHECK(wf_graph(g));
    CHECK(!wf_violation(g).has_value());
  }
  SUBCASE("missing edge") {
    g.set({s, Tag::Plus}, eg({{0, 1}, {1, 2}}));
    auto v = wf_violation(g);
    REQUIRE(v.has_value());
    CHECK(v->sym == s);
    CHECK(v->edge == Edge{0, 2});
    CHECK(!v->extra);
  }
  SUBCASE("extra edge") {
    g.set({s, Tag::Plus}, eg({{0, 1}, {0, 2}, {1, 2}, {2, 0}}));
    auto v = wf_violation(g);
    REQUIRE(v.has_value());
    CHECK(v->edge == Edge{2, 0});
    CHECK(v->extra);
  }
}

TEST_CASE("compute_closures rewrites the Plus entry to match the new Single") {
  Symbol s{"s"};
  LRel g;
  g.set({s, Tag::Single}, eg({{0, 1}}));
  g.set({s, Tag::Plus}, eg({{0, 1}}));

  SUBCASE("additions extend the closure") {
    LRel add;
    add.set({s, Tag::Single}, eg({{1, 2}}));
    EDelta d = EDelta::checked(add, {});
    EvalEnv env;
    EDelta out = compute_closures(g, d, s, env);
    CHECK(out.add().at(s, Tag::Plus) == eg({{0, 2}, {1, 2}}));
    CHECK(out.del().at(s, Tag::Plus).empty());
    CHECK(apply_update(g, out).at(s, Tag::Plus) == eg({{0, 1}, {0, 2}, {1, 2}}));
  }
  SUBCASE("deletions shrink the closure") {
    LRel del;
    del.set({s, Tag::Single}, eg({{0, 1}}));
    EDelta d = EDelta::checked({}, del);
    EvalEnv env;
    EDelta out = compute_closures(g, d, s, env);
    CHECK(out.del().at(s, Tag::Plus) == eg({{0, 1}}));
    CHECK(apply_update(g, out).at(s, Tag::Plus).empty());
  }
}

TEST_CASE("incremental closure path matches the full recompute") {
  std::mt19937_64 rng(31);
  EvalEnv inc;
  inc.incremental_closure = true;
  inc.debug = true;  // the engine itself cross-checks divergence
  EvalEnv full;
  Symbol s{"s"};

  for (int t = 0; t < 80; t++) {
    Node n = 2 + rng() % 6;
    std::vector<Edge> es, extra;
    for (Node a = 0; a < n; a++)
      for (Node b = 0; b < n; b++) {
        if (rng() % 100 < 25) es.emplace_back(a, b);
        else if (rng() % 100 < 10) extra.emplace_back(a, b);
      }
    LRel g;
    EGraph base(std::move(es));
    g.set({s, Tag::Single}, base);
    g.set({s, Tag::Plus}, transitive_closure(base, full));

    LRel add;
    add.set({s, Tag::Single}, EGraph(std::move(extra)));
    EDelta d = EDelta::checked(add, {});

    EngineStats stats;
    inc.stats = &stats;
    EDelta fast = compute_closures(g, d, s, inc);
    EDelta slow = compute_closures(g, d, s, full);
    CHECK(fast == slow);
    if (!d.add().at(s, Tag::Single).empty()) CHECK(stats.closures_incremental == 1);
  }
}

TEST_CASE("close_all makes every symbol well-formed") {
  LRel g;
  g.set({Symbol{"a"}, Tag::Single}, eg({{0, 1}, {1, 2}}));
  g.set({Symbol{"b"}, Tag::Single}, eg({{2, 0}}));
  LRel closed = close_all(g);
  CHECK(wf_graph(closed));
  CHECK(closed.at(Symbol{"a"}, Tag::Plus) == eg({{0, 1}, {0, 2}, {1, 2}}));
  CHECK(closed.at(Symbol{"b"}, Tag::Plus) == eg({{2, 0}}));
}
