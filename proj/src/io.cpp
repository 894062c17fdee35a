#include "rdivm/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "rdivm/closure.hpp"
#include "rdivm/errors.hpp"

namespace rdivm {

namespace {

// Split a data line on tabs; returns false for blank/comment lines.
bool fields(const std::string& line, std::vector<std::string>& out) {
  if (line.empty() || line[0] == '#') return false;
  if (line.find_first_not_of(" \t\r\n") == std::string::npos) return false;
  out.clear();
  std::size_t start = 0;
  for (;;) {
    std::size_t tab = line.find('\t', start);
    std::string f = line.substr(start, tab == std::string::npos ? tab : tab - start);
    if (!f.empty() && f.back() == '\r') f.pop_back();
    out.push_back(std::move(f));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return true;
}

[[noreturn]] void bad_line(const char* what, int lineno, const std::string& line) {
  throw ValidationError(std::string(what) + " at line " + std::to_string(lineno) + ": " +
                        line);
}

} // namespace

Database load_edges(std::istream& in, const EvalEnv& env) {
  Database db;
  std::map<RelKey, std::vector<Edge>> buf;
  bool has_plus = false;

  std::string line;
  std::vector<std::string> f;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (!fields(line, f)) continue;
    if (f.size() != 3) bad_line("expected src<TAB>label<TAB>dst", lineno, line);
    std::string label = f[1];
    Tag tag = Tag::Single;
    if (!label.empty() && label.back() == '+') {
      label.pop_back();
      tag = Tag::Plus;
      has_plus = true;
    }
    if (label.empty()) bad_line("empty edge label", lineno, line);
    Node a = db.nodes.intern(f[0]);
    Node b = db.nodes.intern(f[2]);
    buf[RelKey{Symbol{label}, tag}].emplace_back(a, b);
  }

  for (auto& [k, edges] : buf) db.rel.set(k, EGraph(std::move(edges)));

  if (has_plus) {
    if (auto v = wf_violation(db.rel)) {
      std::ostringstream os;
      os << "closure entries are inconsistent: " << v->sym.name << "+ "
         << (v->extra ? "contains" : "is missing") << " (" << db.nodes.name(v->edge.first)
         << ", " << db.nodes.name(v->edge.second) << ")";
      throw ValidationError(os.str());
    }
  } else {
    db.rel = close_all(db.rel, env);
  }
  return db;
}

Database load_edges_file(const std::string& path, const EvalEnv& env) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open graph file: " + path);
  return load_edges(in, env);
}

void save_edges(std::ostream& out, const Database& db) {
  std::vector<std::string> lines;
  lines.reserve(db.rel.total_edges());
  for (const auto& [k, g] : db.rel.entries()) {
    std::string label = k.sym.name + (k.tag == Tag::Plus ? "+" : "");
    for (Edge e : g.edges())
      lines.push_back(db.nodes.name(e.first) + "\t" + label + "\t" +
                      db.nodes.name(e.second));
  }
  std::sort(lines.begin(), lines.end());
  for (const std::string& l : lines) out << l << "\n";
}

void save_edges_file(const std::string& path, const Database& db) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write graph file: " + path);
  save_edges(out, db);
}

EDelta load_update(std::istream& in, NodeTable& nodes) {
  LRel add, del;
  std::string line;
  std::vector<std::string> f;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (!fields(line, f)) continue;
    if (f.size() != 4 || (f[0] != "+" && f[0] != "-"))
      bad_line("expected +/-<TAB>src<TAB>label<TAB>dst", lineno, line);
    const std::string& label = f[2];
    if (label.empty()) bad_line("empty edge label", lineno, line);
    if (label.back() == '+')
      bad_line("closure entries are derived and cannot be updated", lineno, line);
    Edge e{nodes.intern(f[1]), nodes.intern(f[3])};
    RelKey k{Symbol{label}, Tag::Single};
    if (f[0] == "+")
      add.insert_edge(k, e);
    else
      del.insert_edge(k, e);
  }
  return EDelta::checked(std::move(add), std::move(del));
}

EDelta load_update_file(const std::string& path, NodeTable& nodes) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open update file: " + path);
  return load_update(in, nodes);
}

Program load_program(std::string_view text, NodeTable& nodes) {
  Program p = normalize(compile_surface(parse_program(text)), nodes);
  check_safety(p);
  return p;
}

Program load_program_file(const std::string& path, NodeTable& nodes) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open program file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_program(buf.str(), nodes);
}

} // namespace rdivm
