#include "rdivm/graph.hpp"

#include <algorithm>
#include <iterator>
#include <limits>

#include "rdivm/errors.hpp"

namespace rdivm {

EGraph::EGraph(std::vector<Edge> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

EGraph EGraph::from_sorted(std::vector<Edge> edges) {
  EGraph g;
  g.edges_ = std::move(edges);
  return g;
}

bool EGraph::contains(Edge e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::span<const Edge> EGraph::from(Node src) const {
  auto lo = std::lower_bound(edges_.begin(), edges_.end(), Edge{src, 0});
  auto hi = std::upper_bound(lo, edges_.end(),
                             Edge{src, std::numeric_limits<Node>::max()});
  return {std::to_address(lo), static_cast<std::size_t>(hi - lo)};
}

void EGraph::insert(Edge e) {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) edges_.insert(it, e);
}

EGraph eg_union(const EGraph& a, const EGraph& b) {
  std::vector<Edge> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.edges().begin(), a.edges().end(), b.edges().begin(),
                 b.edges().end(), std::back_inserter(out));
  return EGraph::from_sorted(std::move(out));
}

EGraph eg_diff(const EGraph& a, const EGraph& b) {
  std::vector<Edge> out;
  std::set_difference(a.edges().begin(), a.edges().end(), b.edges().begin(),
                      b.edges().end(), std::back_inserter(out));
  return EGraph::from_sorted(std::move(out));
}

EGraph eg_inter(const EGraph& a, const EGraph& b) {
  std::vector<Edge> out;
  std::set_intersection(a.edges().begin(), a.edges().end(), b.edges().begin(),
                        b.edges().end(), std::back_inserter(out));
  return EGraph::from_sorted(std::move(out));
}

const EGraph& LRel::at(const Symbol& s, Tag t) const { return at(RelKey{s, t}); }

const EGraph& LRel::at(const RelKey& k) const {
  static const EGraph kEmpty;
  auto it = rel_.find(k);
  return it == rel_.end() ? kEmpty : it->second;
}

void LRel::set(const RelKey& k, EGraph g) {
  if (g.empty())
    rel_.erase(k);
  else
    rel_.insert_or_assign(k, std::move(g));
}

void LRel::insert_edge(const RelKey& k, Edge e) { rel_[k].insert(e); }

std::set<RelKey> LRel::keys() const {
  std::set<RelKey> out;
  for (const auto& [k, _] : rel_) out.insert(k);
  return out;
}

std::set<Symbol> LRel::bare_symbols() const {
  std::set<Symbol> out;
  for (const auto& [k, _] : rel_) out.insert(k.sym);
  return out;
}

std::size_t LRel::total_edges() const {
  std::size_t n = 0;
  for (const auto& [_, g] : rel_) n += g.size();
  return n;
}

EDelta EDelta::checked(LRel add, LRel del) {
  for (const auto& [k, dg] : del.entries()) {
    EGraph overlap = eg_inter(add.at(k), dg);
    if (!overlap.empty()) {
      Edge e = overlap.edges()[0];
      throw ValidationError("delta adds and deletes the same edge: " + k.sym.name +
                            (k.tag == Tag::Plus ? "+" : "") + "(" +
                            std::to_string(e.first) + "," + std::to_string(e.second) + ")");
    }
  }
  return EDelta(std::move(add), std::move(del));
}

std::set<RelKey> EDelta::keys() const {
  std::set<RelKey> out = add_.keys();
  for (const auto& k : del_.keys()) out.insert(k);
  return out;
}

LRel apply_update(const LRel& g, const EDelta& d) {
  std::set<RelKey> ks = g.keys();
  for (const auto& k : d.keys()) ks.insert(k);
  LRel out;
  for (const auto& k : ks)
    out.set(k, eg_union(eg_diff(g.at(k), d.del().at(k)), d.add().at(k)));
  return out;
}

EDelta modify(const EDelta& d, const Symbol& s, Tag tag, const EGraph& g_plus,
              const EGraph& g_minus) {
  RelKey k{s, tag};
  LRel add = d.add();
  LRel del = d.del();
  EGraph new_add = eg_union(add.at(k), g_plus);
  EGraph new_del = eg_diff(eg_union(del.at(k), g_minus), new_add);
  add.set(k, std::move(new_add));
  del.set(k, std::move(new_del));
  return EDelta(std::move(add), std::move(del));
}

std::pair<EGraph, EGraph> lrel_diff(const EGraph& a, const EGraph& b) {
  return {eg_diff(b, a), eg_diff(a, b)};
}

Node NodeTable::intern(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  Node id = static_cast<Node>(names_.size());
  names_.push_back(name);
  index_.emplace(name, id);
  return id;
}

std::optional<Node> NodeTable::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& NodeTable::name(Node n) const { return names_.at(n); }

} // namespace rdivm
