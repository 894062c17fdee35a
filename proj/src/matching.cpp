#include "rdivm/matching.hpp"

#include <algorithm>
#include <optional>

#include "rdivm/errors.hpp"
#include "rdivm/log.hpp"

namespace rdivm {

namespace {

std::optional<Node> resolve(const Term& t, const Substitution& s) {
  if (!t.is_var()) return t.id;
  if (s.bound(t.id)) return s.slots[t.id];
  return std::nullopt;
}

// Bind t to value in r; false when it contradicts a constant or prior binding.
bool bind(Substitution& r, const Term& t, Node value) {
  if (!t.is_var()) return t.id == value;
  if (r.bound(t.id)) return r.slots[t.id] == value;
  r.slots[t.id] = value;
  return true;
}

void match_rel(const EGraph& edges, const Atom& atom, const Substitution& s,
               std::vector<Substitution>& out) {
  std::optional<Node> va = resolve(atom.a, s);
  std::optional<Node> vb = resolve(atom.b, s);
  if (va && vb) {
    if (edges.contains({*va, *vb})) out.push_back(s);
    return;
  }
  std::span<const Edge> cand = va ? edges.from(*va) : edges.edges();
  for (Edge e : cand) {
    Substitution r = s;
    if (bind(r, atom.a, e.first) && bind(r, atom.b, e.second)) out.push_back(std::move(r));
  }
}

void match_eq(const EvalEnv& env, const Atom& atom, const Substitution& s,
              std::vector<Substitution>& out) {
  std::optional<Node> va = resolve(atom.a, s);
  std::optional<Node> vb = resolve(atom.b, s);
  if (va && vb) {
    if (*va == *vb) out.push_back(s);
    return;
  }
  if (va || vb) {
    Substitution r = s;
    if (bind(r, atom.a, va ? *va : *vb) && bind(r, atom.b, va ? *va : *vb))
      out.push_back(std::move(r));
    return;
  }
  // Both sides unbound: one extension per universe node.
  if (env.stats) env.stats->eq_enumerations++;
  static bool warned = false;
  if (!warned) {
    warned = true;
    log_warn("equality atom with both sides unbound enumerates the node universe (" +
             std::to_string(env.universe) + " nodes)");
  }
  for (Node v = 0; v < env.universe; v++) {
    Substitution r = s;
    if (bind(r, atom.a, v) && bind(r, atom.b, v)) out.push_back(std::move(r));
  }
}

void dedup(std::vector<Substitution>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

std::vector<Substitution> match_atom(const EGraph& edges, const EvalEnv& env,
                                     const Atom& atom, const Substitution& s) {
  std::vector<Substitution> out;
  if (atom.is_eq())
    match_eq(env, atom, s, out);
  else
    match_rel(edges, atom, s, out);
  dedup(out);
  return out;
}

std::vector<Substitution> match_step(const EGraph& edges, const EvalEnv& env,
                                     const Atom& atom,
                                     const std::vector<Substitution>& cur) {
  constexpr std::size_t kChunk = 512;
  std::vector<Substitution> out;
  if (env.parallel && cur.size() >= 2 * kChunk) {
    std::size_t chunks = (cur.size() + kChunk - 1) / kChunk;
    std::vector<std::vector<Substitution>> parts(chunks);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t c = 0; c < chunks; c++) {
      std::size_t lo = c * kChunk, hi = std::min(cur.size(), lo + kChunk);
      for (std::size_t i = lo; i < hi; i++) {
        if (atom.is_eq())
          match_eq(env, atom, cur[i], parts[c]);
        else
          match_rel(edges, atom, cur[i], parts[c]);
      }
    }
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    out.reserve(total);
    for (auto& p : parts)
      out.insert(out.end(), std::make_move_iterator(p.begin()),
                 std::make_move_iterator(p.end()));
  } else {
    for (const Substitution& s : cur) {
      if (atom.is_eq())
        match_eq(env, atom, s, out);
      else
        match_rel(edges, atom, s, out);
    }
  }
  dedup(out);
  return out;
}

std::vector<Substitution> match_body(const LRel& g, const EvalEnv& env,
                                     const CBody& body, std::uint32_t arity) {
  static const EGraph kEmpty;
  std::vector<Substitution> cur{Substitution(arity)};
  for (const Literal& lit : body.lits) {
    const EGraph& edges = lit.atom.rel ? g.at(*lit.atom.rel, lit.tag) : kEmpty;
    cur = match_step(edges, env, lit.atom, cur);
    if (cur.empty()) break;
  }
  return cur;
}

Edge ground_head(const Substitution& s, const Term& h1, const Term& h2) {
  std::optional<Node> a = resolve(h1, s);
  std::optional<Node> b = resolve(h2, s);
  if (!a || !b)
    throw InternalError("unbound head variable after body match (safety bypassed)");
  return {*a, *b};
}

Clause ground_clause(const Grounding& eta, const Clause& c) {
  Clause out = c;
  auto subst = [&](Term& t) {
    if (t.is_var()) t = Term::constant(eta.at(t.id));
  };
  for (CBody& body : out.bodies)
    for (Literal& lit : body.lits) {
      subst(lit.atom.a);
      subst(lit.atom.b);
    }
  return out;
}

} // namespace rdivm
