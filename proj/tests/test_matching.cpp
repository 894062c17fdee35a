#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "rdivm/bench.hpp"
#include "rdivm/closure.hpp"
#include "rdivm/errors.hpp"
#include "rdivm/matching.hpp"

using namespace rdivm;
using rdivm::testing::eg;

namespace {

Substitution sub(std::vector<Node> slots) {
  Substitution s;
  s.slots = std::move(slots);
  return s;
}

Atom rel(const char* sym, Term a, Term b) { return {Symbol{sym}, a, b}; }

const Node U = kUnbound;

} // namespace

TEST_CASE("match_atom over a relational atom") {
  EGraph g = eg({{0, 1}, {0, 2}, {2, 2}});
  EvalEnv env;

  SUBCASE("both variables unbound: every edge") {
    auto out = match_atom(g, env, rel("s", Term::var(0), Term::var(1)),
                          Substitution(2));
    CHECK(out == std::vector<Substitution>{sub({0, 1}), sub({0, 2}), sub({2, 2})});
  }
  SUBCASE("bound source narrows to its run") {
    auto out = match_atom(g, env, rel("s", Term::var(0), Term::var(1)),
                          sub({0, U}));
    CHECK(out == std::vector<Substitution>{sub({0, 1}), sub({0, 2})});
  }
  SUBCASE("bound target scans") {
    auto out = match_atom(g, env, rel("s", Term::var(0), Term::var(1)),
                          sub({U, 2}));
    CHECK(out == std::vector<Substitution>{sub({0, 2}), sub({2, 2})});
  }
  SUBCASE("constants must hit an edge") {
    auto hit = match_atom(g, env, rel("s", Term::constant(0), Term::constant(2)),
                          Substitution(1));
    CHECK(hit.size() == 1);
    auto miss = match_atom(g, env, rel("s", Term::constant(1), Term::constant(0)),
                           Substitution(1));
    CHECK(miss.empty());
  }
  SUBCASE("repeated variable takes the diagonal") {
    auto out = match_atom(g, env, rel("s", Term::var(0), Term::var(0)),
                          Substitution(1));
    CHECK(out == std::vector<Substitution>{sub({2})});
  }
  SUBCASE("constant source with variable target") {
    auto out = match_atom(g, env, rel("s", Term::constant(0), Term::var(0)),
                          Substitution(1));
    CHECK(out == std::vector<Substitution>{sub({1}), sub({2})});
  }
}

TEST_CASE("match_atom over equality atoms") {
  EvalEnv env;
  env.universe = 3;
  Atom eq{std::nullopt, Term::var(0), Term::var(1)};

  SUBCASE("one side bound propagates") {
    auto out = match_atom({}, env, eq, sub({2, U}));
    CHECK(out == std::vector<Substitution>{sub({2, 2})});
  }
  SUBCASE("both bound filters") {
    CHECK(match_atom({}, env, eq, sub({1, 1})).size() == 1);
    CHECK(match_atom({}, env, eq, sub({1, 2})).empty());
  }
  SUBCASE("both unbound enumerates the universe") {
    auto out = match_atom({}, env, eq, Substitution(2));
    CHECK(out == std::vector<Substitution>{sub({0, 0}), sub({1, 1}), sub({2, 2})});
  }
  SUBCASE("constant against unbound variable binds it") {
    Atom ceq{std::nullopt, Term::constant(2), Term::var(0)};
    auto out = match_atom({}, env, ceq, Substitution(1));
    CHECK(out == std::vector<Substitution>{sub({2})});
  }
}

TEST_CASE("match_body joins left to right") {
  LRel g;
  g.set({Symbol{"p"}, Tag::Single}, eg({{0, 1}, {1, 2}}));
  g.set({Symbol{"q"}, Tag::Single}, eg({{1, 5}, {2, 5}, {3, 5}}));
  EvalEnv env;

  CBody chain{{
      {Tag::Single, rel("p", Term::var(0), Term::var(2))},
      {Tag::Single, rel("q", Term::var(2), Term::var(1))},
  }};
  auto out = match_body(g, env, chain, 3);
  CHECK(out == std::vector<Substitution>{sub({0, 5, 1}), sub({1, 5, 2})});
}

TEST_CASE("match_body respects the Plus tag") {
  LRel g;
  g.set({Symbol{"p"}, Tag::Single}, eg({{0, 1}, {1, 2}}));
  g = close_all(g);
  EvalEnv env;

  CBody direct{{{Tag::Plus, rel("p", Term::var(0), Term::var(1))}}};
  auto out = match_body(g, env, direct, 2);
  CHECK(out == std::vector<Substitution>{sub({0, 1}), sub({0, 2}), sub({1, 2})});
}

TEST_CASE("match results are invariant under literal permutation") {
  Rng rng(77);
  GenConfig cfg;
  int interesting = 0;
  for (int t = 0; t < 100; t++) {
    Instance inst = random_instance(cfg, rng);
    EvalEnv env;
    env.universe = inst.universe;
    for (const auto& [sym, cl] : inst.program.clauses) {
      for (const CBody& body : cl.bodies) {
        if (body.lits.size() < 2) continue;
        CBody shuffled = body;
        std::reverse(shuffled.lits.begin(), shuffled.lits.end());
        auto a = match_body(inst.graph, env, body, cl.arity);
        auto b = match_body(inst.graph, env, shuffled, cl.arity);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
        if (!a.empty()) interesting++;
      }
    }
  }
  CHECK(interesting > 50);  // the suite must not pass vacuously
}

TEST_CASE("parallel and serial match_step agree on large frontiers") {
  Rng rng(13);
  std::vector<Edge> es;
  for (int i = 0; i < 4000; i++)
    es.emplace_back(static_cast<Node>(rng() % 200), static_cast<Node>(rng() % 200));
  LRel g;
  g.set({Symbol{"p"}, Tag::Single}, EGraph(std::move(es)));

  CBody chain{{
      {Tag::Single, rel("p", Term::var(0), Term::var(2))},
      {Tag::Single, rel("p", Term::var(2), Term::var(1))},
  }};
  EvalEnv par;
  EvalEnv ser;
  ser.parallel = false;
  auto a = match_body(g, par, chain, 3);
  auto b = match_body(g, ser, chain, 3);
  CHECK(a == b);
  CHECK(!a.empty());
}

TEST_CASE("ground_head needs bound variables") {
  CHECK(ground_head(sub({3, 7}), Term::var(0), Term::var(1)) == Edge{3, 7});
  CHECK(ground_head(sub({3, 7}), Term::constant(9), Term::var(0)) == Edge{9, 3});
  CHECK_THROWS_AS(ground_head(sub({3, U}), Term::var(0), Term::var(1)),
                  InternalError);
}

TEST_CASE("eq enumeration is counted in the stats") {
  EngineStats stats;
  EvalEnv env;
  env.universe = 5;
  env.stats = &stats;
  Atom eq{std::nullopt, Term::var(0), Term::var(1)};
  match_atom({}, env, eq, Substitution(2));
  CHECK(stats.eq_enumerations == 1);
}
