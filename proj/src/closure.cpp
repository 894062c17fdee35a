#include "rdivm/closure.hpp"

#include <algorithm>
#include <set>

#include "rdivm/errors.hpp"

namespace rdivm {

namespace {

// Adjacency index over the sorted edge vector: per-source spans.
struct Adjacency {
  Node n = 0;  // 1 + max node id
  std::vector<std::uint32_t> offset;
  std::vector<Node> target;

  explicit Adjacency(const EGraph& g) {
    for (Edge e : g.edges()) n = std::max({n, e.first + 1, e.second + 1});
    offset.assign(n + 1, 0);
    for (Edge e : g.edges()) offset[e.first + 1]++;
    for (std::size_t i = 1; i < offset.size(); i++) offset[i] += offset[i - 1];
    target.reserve(g.size());
    for (Edge e : g.edges()) target.push_back(e.second);
  }

  std::span<const Node> out(Node u) const {
    return {target.data() + offset[u], target.data() + offset[u + 1]};
  }
};

// Nodes reachable from src by a path of length >= 1, ascending.
std::vector<Node> bfs_row(const Adjacency& adj, Node src) {
  std::vector<char> seen(adj.n, 0);
  std::vector<Node> queue;
  for (Node v : adj.out(src))
    if (!seen[v]) {
      seen[v] = 1;
      queue.push_back(v);
    }
  for (std::size_t i = 0; i < queue.size(); i++)
    for (Node w : adj.out(queue[i]))
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
  std::sort(queue.begin(), queue.end());
  return queue;
}

} // namespace

EGraph transitive_closure(const EGraph& g, const EvalEnv& env) {
  if (g.empty()) return {};
  Adjacency adj(g);

  std::vector<Node> sources;
  for (Node u = 0; u < adj.n; u++)
    if (!adj.out(u).empty()) sources.push_back(u);

  std::vector<std::vector<Node>> rows(sources.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (env.parallel)
#endif
  for (std::size_t i = 0; i < sources.size(); i++)
    rows[i] = bfs_row(adj, sources[i]);
#ifndef _OPENMP
  (void)env;
#endif

  std::vector<Edge> out;
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  out.reserve(total);
  for (std::size_t i = 0; i < sources.size(); i++)
    for (Node v : rows[i]) out.emplace_back(sources[i], v);
  return EGraph::from_sorted(std::move(out));
}

EGraph transitive_closure_serial(const EGraph& g) {
  EGraph result = g;
  EGraph frontier = g;
  while (!frontier.empty()) {
    std::vector<Edge> ext;
    for (Edge e : frontier.edges())
      for (Edge f : g.from(e.second)) ext.emplace_back(e.first, f.second);
    EGraph fresh = eg_diff(EGraph(std::move(ext)), result);
    result = eg_union(result, fresh);
    frontier = std::move(fresh);
  }
  return result;
}

EGraph closure_by_paths(const EGraph& g) {
  std::set<Node> nodes;
  for (Edge e : g.edges()) nodes.insert(e.first);

  std::vector<Edge> out;
  for (Node a : nodes) {
    // Depth-first walk of every simple path prefix out of a.
    std::set<Node> reached;
    std::vector<Node> stack{a};
    while (!stack.empty()) {
      Node u = stack.back();
      stack.pop_back();
      for (Edge e : g.from(u))
        if (reached.insert(e.second).second) stack.push_back(e.second);
    }
    for (Node b : reached) out.emplace_back(a, b);
  }
  return EGraph(std::move(out));
}

bool is_closure(const EGraph& g_single, const EGraph& g_plus) {
  return closure_by_paths(g_single) == g_plus;
}

bool wf_graph(const LRel& g) { return !wf_violation(g).has_value(); }

std::optional<WfViolation> wf_violation(const LRel& g) {
  for (const Symbol& s : g.bare_symbols()) {
    EGraph want = closure_by_paths(g.at(s, Tag::Single));
    const EGraph& have = g.at(s, Tag::Plus);
    if (want == have) continue;
    EGraph extra = eg_diff(have, want);
    if (!extra.empty()) return WfViolation{s, extra.edges()[0], true};
    EGraph missing = eg_diff(want, have);
    return WfViolation{s, missing.edges()[0], false};
  }
  return std::nullopt;
}

namespace {

// Closure after adding edges to a graph whose old closure is known. Only rows
// whose source can reach a new edge's source need recomputing.
EGraph closure_with_additions(const EGraph& updated_single, const EGraph& old_plus,
                              const EGraph& new_edges) {
  std::vector<Edge> rev;
  rev.reserve(updated_single.size());
  for (Edge e : updated_single.edges()) rev.emplace_back(e.second, e.first);
  EGraph reversed(std::move(rev));
  Adjacency radj(reversed);

  std::set<Node> affected;
  std::vector<Node> queue;
  for (Edge e : new_edges.edges())
    if (affected.insert(e.first).second) queue.push_back(e.first);
  for (std::size_t i = 0; i < queue.size(); i++) {
    if (queue[i] >= radj.n) continue;
    for (Node w : radj.out(queue[i]))
      if (affected.insert(w).second) queue.push_back(w);
  }

  Adjacency adj(updated_single);
  std::vector<Edge> out;
  out.reserve(old_plus.size() + new_edges.size());
  // Merge: recomputed rows for affected sources, old rows otherwise.
  auto old_edges = old_plus.edges();
  std::size_t i = 0;
  std::set<Node> srcs;
  for (Edge e : old_edges) srcs.insert(e.first);
  for (Node a : affected) srcs.insert(a);
  for (Node src : srcs) {
    while (i < old_edges.size() && old_edges[i].first < src) i++;
    if (affected.count(src)) {
      for (Node v : bfs_row(adj, src)) out.emplace_back(src, v);
      while (i < old_edges.size() && old_edges[i].first == src) i++;
    } else {
      while (i < old_edges.size() && old_edges[i].first == src)
        out.push_back(old_edges[i++]);
    }
  }
  return EGraph::from_sorted(std::move(out));
}

} // namespace

EDelta compute_closures(const LRel& g, const EDelta& d, const Symbol& s,
                        const EvalEnv& env) {
  RelKey ks{s, Tag::Single};
  RelKey kp{s, Tag::Plus};
  EGraph single =
      eg_union(eg_diff(g.at(ks), d.del().at(ks)), d.add().at(ks));
  EGraph plus = eg_union(eg_diff(g.at(kp), d.del().at(kp)), d.add().at(kp));

  bool adds_only = d.del().at(ks).empty() && d.del().at(kp).empty() &&
                   d.add().at(kp).empty();
  EGraph target;
  if (env.incremental_closure && adds_only && !d.add().at(ks).empty()) {
    target = closure_with_additions(single, plus, d.add().at(ks));
    if (env.stats) env.stats->closures_incremental++;
    if (env.debug && target != transitive_closure(single, env))
      throw InternalError("incremental closure diverged from full recompute for " +
                          s.name);
  } else {
    target = transitive_closure(single, env);
    if (env.stats) env.stats->closures_full++;
  }

  auto [add, del] = lrel_diff(plus, target);
  return modify(d, s, Tag::Plus, add, del);
}

LRel close_all(const LRel& g, const EvalEnv& env) {
  LRel out = g;
  for (const Symbol& s : g.bare_symbols())
    out.set({s, Tag::Plus}, transitive_closure(g.at(s, Tag::Single), env));
  return out;
}

} // namespace rdivm
