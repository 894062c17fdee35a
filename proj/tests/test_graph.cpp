#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "rdivm/errors.hpp"
#include "rdivm/graph.hpp"

using namespace rdivm;
using rdivm::testing::eg;

TEST_CASE("EGraph keeps edges sorted and unique") {
  EGraph g({{2, 1}, {0, 3}, {2, 1}, {0, 0}});
  std::vector<Edge> want = {{0, 0}, {0, 3}, {2, 1}};
  CHECK(std::vector<Edge>(g.edges().begin(), g.edges().end()) == want);
  CHECK(g.size() == 3);
  CHECK(g.contains({2, 1}));
  CHECK(!g.contains({1, 2}));

  g.insert({1, 7});
  CHECK(g.contains({1, 7}));
  CHECK(std::is_sorted(g.edges().begin(), g.edges().end()));
  g.insert({1, 7});
  CHECK(g.size() == 4);
}

TEST_CASE("EGraph::from returns the contiguous run of one source") {
  EGraph g({{0, 1}, {0, 4}, {2, 0}, {2, 2}, {5, 1}});
  auto run = g.from(2);
  REQUIRE(run.size() == 2);
  CHECK(run[0] == Edge{2, 0});
  CHECK(run[1] == Edge{2, 2});
  CHECK(g.from(1).empty());
  CHECK(g.from(9).empty());
}

TEST_CASE("edge set algebra") {
  EGraph a({{0, 1}, {1, 2}, {3, 3}});
  EGraph b({{1, 2}, {4, 0}});
  CHECK(eg_union(a, b) == eg({{0, 1}, {1, 2}, {3, 3}, {4, 0}}));
  CHECK(eg_diff(a, b) == eg({{0, 1}, {3, 3}}));
  CHECK(eg_inter(a, b) == eg({{1, 2}}));
  CHECK(eg_diff(a, a).empty());
  CHECK(eg_union(a, EGraph{}) == a);
}

TEST_CASE("LRel reads absent keys as empty and never stores empties") {
  LRel r;
  Symbol s{"s"};
  CHECK(r.at(s, Tag::Single).empty());
  r.set({s, Tag::Single}, eg({{0, 1}}));
  CHECK(r.at(s, Tag::Single).contains({0, 1}));
  CHECK(r.keys() == std::set<RelKey>{{s, Tag::Single}});
  CHECK(r.bare_symbols() == std::set<Symbol>{s});

  r.set({s, Tag::Single}, EGraph{});
  CHECK(r.empty());
  CHECK(r.keys().empty());
}

TEST_CASE("LRel::total_edges sums every entry") {
  LRel r;
  r.set({Symbol{"a"}, Tag::Single}, eg({{0, 1}, {1, 2}}));
  r.set({Symbol{"a"}, Tag::Plus}, eg({{0, 1}, {0, 2}, {1, 2}}));
  r.set({Symbol{"b"}, Tag::Single}, eg({{5, 5}}));
  CHECK(r.total_edges() == 6);
}

TEST_CASE("EDelta::checked rejects overlapping add and delete") {
  LRel add, del;
  add.set({Symbol{"s"}, Tag::Single}, eg({{0, 1}, {2, 2}}));
  del.set({Symbol{"s"}, Tag::Single}, eg({{2, 2}}));
  CHECK_THROWS_WITH_AS(EDelta::checked(add, del),
                       doctest::Contains("adds and deletes the same edge"),
                       ValidationError);

  del.set({Symbol{"s"}, Tag::Single}, eg({{3, 3}}));
  EDelta d = EDelta::checked(add, del);
  CHECK(d.add().at(Symbol{"s"}, Tag::Single).size() == 2);
  CHECK(d.del().at(Symbol{"s"}, Tag::Single).size() == 1);
  CHECK(d.keys() == std::set<RelKey>{{Symbol{"s"}, Tag::Single}});
}

TEST_CASE("apply_update applies (g minus del) union add pointwise") {
  Symbol s{"s"}, t{"t"};
  LRel g;
  g.set({s, Tag::Single}, eg({{0, 1}, {1, 2}}));

  LRel add, del;
  add.set({s, Tag::Single}, eg({{5, 5}}));
  add.set({t, Tag::Single}, eg({{9, 9}}));  // key absent from g
  del.set({s, Tag::Single}, eg({{1, 2}, {7, 7}}));  // deleting absent is a no-op
  EDelta d = EDelta::checked(add, del);

  LRel out = apply_update(g, d);
  CHECK(out.at(s, Tag::Single) == eg({{0, 1}, {5, 5}}));
  CHECK(out.at(t, Tag::Single) == eg({{9, 9}}));
}

TEST_CASE("modify folds a change into one key, additions winning") {
  Symbol s{"s"};
  LRel add, del;
  add.set({s, Tag::Single}, eg({{0, 1}}));
  del.set({s, Tag::Single}, eg({{2, 2}}));
  EDelta d = EDelta::checked(add, del);

  // Additions accumulate and win over every deletion, past or new: (2,2)
  // re-added leaves del, and deleting the previously added (0,1) is a no-op.
  EDelta out = modify(d, s, Tag::Single, eg({{2, 2}, {3, 3}}), eg({{0, 1}}));
  CHECK(out.add().at(s, Tag::Single) == eg({{0, 1}, {2, 2}, {3, 3}}));
  CHECK(out.del().at(s, Tag::Single).empty());
}

TEST_CASE("modify leaves other keys untouched") {
  Symbol s{"s"}, t{"t"};
  LRel add;
  add.set({t, Tag::Plus}, eg({{4, 4}}));
  EDelta d = EDelta::checked(add, {});
  EDelta out = modify(d, s, Tag::Single, eg({{1, 1}}), {});
  CHECK(out.add().at(t, Tag::Plus) == eg({{4, 4}}));
  CHECK(out.add().at(s, Tag::Single) == eg({{1, 1}}));
}

TEST_CASE("modify keeps add and del disjoint on random inputs") {
  std::mt19937_64 rng(21);
  auto sprinkle = [&](int max_edges) {
    std::vector<Edge> es;
    for (int i = 0; i < max_edges; i++)
      if (rng() % 2) es.emplace_back(rng() % 4, rng() % 4);
    return EGraph(std::move(es));
  };
  Symbol s{"s"};
  for (int i = 0; i < 200; i++) {
    EGraph a0 = sprinkle(4), d0 = eg_diff(sprinkle(4), a0);
    LRel add, del;
    add.set({s, Tag::Single}, a0);
    del.set({s, Tag::Single}, d0);
    EDelta d = EDelta::checked(add, del);
    EDelta out = modify(d, s, Tag::Single, sprinkle(4), sprinkle(4));
    CHECK(eg_inter(out.add().at(s, Tag::Single), out.del().at(s, Tag::Single))
              .empty());
  }
}

TEST_CASE("lrel_diff produces the rewrite from a to b") {
  EGraph a({{0, 1}, {1, 1}});
  EGraph b({{1, 1}, {2, 2}});
  auto [add, del] = lrel_diff(a, b);
  CHECK(add == eg({{2, 2}}));
  CHECK(del == eg({{0, 1}}));
  CHECK(eg_union(eg_diff(a, del), add) == b);
}

TEST_CASE("NodeTable interns densely and finds by name") {
  NodeTable t;
  CHECK(t.intern("alpha") == 0);
  CHECK(t.intern("beta") == 1);
  CHECK(t.intern("alpha") == 0);
  CHECK(t.size() == 2);
  CHECK(t.name(1) == "beta");
  CHECK(t.find("beta") == Node{1});
  CHECK(!t.find("gamma").has_value());
}
