#pragma once

#include <iosfwd>
#include <string>

#include "rdivm/eval.hpp"
#include "rdivm/graph.hpp"
#include "rdivm/syntax.hpp"

namespace rdivm {

struct Database {
  NodeTable nodes;
  LRel rel;
};

// Edge file format: one `src<TAB>label<TAB>dst` per line, `#` comments.
// A trailing `+` on the label marks a closure entry. Files carrying closure
// entries are validated against wf_graph; files without any get every
// closure computed on load, so the result is always well-formed.
Database load_edges(std::istream& in, const EvalEnv& env = {});
Database load_edges_file(const std::string& path, const EvalEnv& env = {});

// Lines sorted lexicographically; closure entries serialized with `label+`.
void save_edges(std::ostream& out, const Database& db);
void save_edges_file(const std::string& path, const Database& db);

// Update file format: `+<TAB>src<TAB>label<TAB>dst` or `-<TAB>...`, one batch
// per file. Labels are plain relation symbols (closure entries are derived,
// never written by hand). Adding and deleting the same edge is an error.
// Unknown node names extend the universe.
EDelta load_update(std::istream& in, NodeTable& nodes);
EDelta load_update_file(const std::string& path, NodeTable& nodes);

// Parse + compile + normalize + safety-check program text against the
// database's node table.
Program load_program(std::string_view text, NodeTable& nodes);
Program load_program_file(const std::string& path, NodeTable& nodes);

} // namespace rdivm
