#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>

namespace rdivm {

// Interned graph node. Ids are dense: the universe is [0, NodeTable::size()).
using Node = std::uint32_t;
using Edge = std::pair<Node, Node>;

struct Symbol {
  std::string name;
  auto operator<=>(const Symbol&) const = default;
};

// A relation literal reads either the relation itself or its transitive closure.
enum class Tag : std::uint8_t { Single, Plus };

struct RelKey {
  Symbol sym;
  Tag tag = Tag::Single;
  auto operator<=>(const RelKey&) const = default;
};

} // namespace rdivm
