#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rdivm/core.hpp"

namespace rdivm {

// Edge set of one labeled relation. Kept sorted and deduplicated so that
// iteration, comparison and set algebra are canonical.
class EGraph {
public:
  EGraph() = default;
  explicit EGraph(std::vector<Edge> edges);

  // pre: edges sorted and unique
  static EGraph from_sorted(std::vector<Edge> edges);

  bool contains(Edge e) const;
  bool empty() const { return edges_.empty(); }
  std::size_t size() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  // Edges with the given source: one contiguous run of the sorted order.
  std::span<const Edge> from(Node src) const;

  void insert(Edge e);

  auto operator<=>(const EGraph&) const = default;

private:
  std::vector<Edge> edges_;
};

EGraph eg_union(const EGraph& a, const EGraph& b);
EGraph eg_diff(const EGraph& a, const EGraph& b);
EGraph eg_inter(const EGraph& a, const EGraph& b);

// Labeled relation store: (symbol, tag) -> edge set. Entries are never empty,
// so an absent key reads as the empty relation and equality is structural.
class LRel {
public:
  const EGraph& at(const Symbol& s, Tag t) const;
  const EGraph& at(const RelKey& k) const;
  void set(const RelKey& k, EGraph g);
  void insert_edge(const RelKey& k, Edge e);

  bool empty() const { return rel_.empty(); }
  const std::map<RelKey, EGraph>& entries() const { return rel_; }
  std::set<RelKey> keys() const;
  std::set<Symbol> bare_symbols() const;
  std::size_t total_edges() const;

  bool operator==(const LRel&) const = default;

private:
  std::map<RelKey, EGraph> rel_;
};

// Pending update: additions and deletions, disjoint per (symbol, tag).
class EDelta {
public:
  EDelta() = default;

  // Validates disjointness; reports the first offending (symbol, tag, edge).
  static EDelta checked(LRel add, LRel del);

  const LRel& add() const { return add_; }
  const LRel& del() const { return del_; }
  bool empty() const { return add_.empty() && del_.empty(); }
  std::set<RelKey> keys() const;

  bool operator==(const EDelta&) const = default;

private:
  EDelta(LRel a, LRel d) : add_(std::move(a)), del_(std::move(d)) {}
  friend EDelta modify(const EDelta&, const Symbol&, Tag, const EGraph&, const EGraph&);
  LRel add_, del_;
};

// (g \ del) ∪ add, pointwise over keys.
LRel apply_update(const LRel& g, const EDelta& d);

// Record that relation (s, tag) gains g_plus and loses g_minus. Additions win
// over deletions, so the result is disjoint for any input. Other keys of d are
// untouched.
EDelta modify(const EDelta& d, const Symbol& s, Tag tag, const EGraph& g_plus,
              const EGraph& g_minus);

// Rewrite difference: the delta turning edge set a into edge set b.
// first = b \ a (additions), second = a \ b (deletions).
std::pair<EGraph, EGraph> lrel_diff(const EGraph& a, const EGraph& b);

// Interned node names. Ids are assigned densely in first-seen order.
class NodeTable {
public:
  Node intern(const std::string& name);
  std::optional<Node> find(const std::string& name) const;
  const std::string& name(Node n) const;
  std::uint32_t size() const { return static_cast<std::uint32_t>(names_.size()); }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Node> index_;
};

} // namespace rdivm
