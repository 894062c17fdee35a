#pragma once

#include <string>

#include "rdivm/graph.hpp"
#include "rdivm/io.hpp"

namespace rdivm::testing {

inline std::string fixture(const char* name) {
  return std::string(RDIVM_FIXTURES) + "/" + name;
}

// Node table whose names n0..n{count-1} intern to ids 0..count-1, so tests
// can mix raw node ids with parsed programs.
inline NodeTable table_for(std::uint32_t count) {
  NodeTable t;
  for (std::uint32_t i = 0; i < count; i++) t.intern("n" + std::to_string(i));
  return t;
}

inline EGraph eg(std::vector<Edge> edges) { return EGraph(std::move(edges)); }

} // namespace rdivm::testing
