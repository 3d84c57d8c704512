#pragma once

// Line graphs of bipartite multigraphs. A root B has left and right vertex
// lists and one edge per line vertex; two line vertices are adjacent iff
// their root edges share an endpoint. Kernels of clique-acyclic
// super-orientations of L(B) are stable matchings of B under the preferences
// read off the arcs (the sink of the clique at b is b's top choice).
//
// Root certificate file:
//
//   left 0 2
//   right 1 3
//   edge <line> <left> <right>
//
// Root vertex ids must be exactly 0..k-1 split between the two lists.

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "perfkern/decomposition.hpp"
#include "perfkern/errors.hpp"
#include "perfkern/graph.hpp"
#include "perfkern/io.hpp"
#include "perfkern/kernel.hpp"
#include "perfkern/structure.hpp"

namespace perfkern {

struct BipartiteRoot {
  struct RootEdge {
    Vertex line;
    int left;
    int right;
    friend bool operator==(const RootEdge&, const RootEdge&) = default;
  };

  int vertex_count = 0;
  std::vector<int> left;
  std::vector<int> right;
  std::vector<RootEdge> edges;

  int line_count() const { return static_cast<int>(edges.size()); }

  // edges[edge_of_line()[l]].line == l
  std::vector<int> edge_of_line() const {
    std::vector<int> pos(edges.size(), -1);
    for (std::size_t i = 0; i < edges.size(); ++i) pos[edges[i].line] = static_cast<int>(i);
    return pos;
  }

  // Line vertices incident to each root vertex, ascending.
  std::vector<VertexSet> incidence() const {
    std::vector<VertexSet> inc(static_cast<std::size_t>(vertex_count));
    for (const auto& e : edges) {
      inc[e.left].push_back(e.line);
      inc[e.right].push_back(e.line);
    }
    for (auto& s : inc) std::sort(s.begin(), s.end());
    return inc;
  }
};

// Structural checks only (sides partition the vertex ids, every edge goes
// left to right, lines are a permutation). Throws InvalidInput.
inline void check_root_shape(const BipartiteRoot& root) {
  std::vector<int> side(static_cast<std::size_t>(root.vertex_count), 0);
  for (int b : root.left) {
    if (b < 0 || b >= root.vertex_count || side[b]) throw InvalidInput("bad left vertex " + std::to_string(b));
    side[b] = 1;
  }
  for (int b : root.right) {
    if (b < 0 || b >= root.vertex_count || side[b]) throw InvalidInput("bad right vertex " + std::to_string(b));
    side[b] = 2;
  }
  for (int b = 0; b < root.vertex_count; ++b)
    if (!side[b]) throw InvalidInput("root vertex " + std::to_string(b) + " is on neither side");
  std::vector<char> seen(root.edges.size(), 0);
  for (const auto& e : root.edges) {
    if (e.line < 0 || e.line >= root.line_count() || seen[e.line]) {
      throw InvalidInput("line ids must be a permutation of 0.." + std::to_string(root.line_count() - 1));
    }
    seen[e.line] = 1;
    if (e.left < 0 || e.left >= root.vertex_count || side[e.left] != 1 || e.right < 0 ||
        e.right >= root.vertex_count || side[e.right] != 2) {
      throw InvalidInput("root edge of line " + std::to_string(e.line) + " does not join left to right");
    }
  }
}

inline UndirectedGraph line_graph(const BipartiteRoot& root) {
  std::vector<Edge> out;
  for (const auto& lines : root.incidence())
    for (std::size_t i = 0; i < lines.size(); ++i)
      for (std::size_t j = i + 1; j < lines.size(); ++j) out.emplace_back(lines[i], lines[j]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());  // parallel edges meet twice
  return UndirectedGraph(root.line_count(), out);
}

// Throws PreconditionError("root-mismatch") unless L(root) equals g exactly.
template <AdjacencyGraph G>
void validate_root(const BipartiteRoot& root, const G& g) {
  try {
    check_root_shape(root);
  } catch (const InvalidInput& e) {
    throw PreconditionError("root-mismatch", e.what());
  }
  if (root.line_count() != g.size()) {
    throw PreconditionError("root-mismatch", "root has " + std::to_string(root.line_count()) + " edges, graph has " +
                                                 std::to_string(g.size()) + " vertices");
  }
  auto l = line_graph(root);
  for (Vertex u = 0; u < g.size(); ++u) {
    auto a = l.neighbors(u);
    auto b = g.neighbors(u);
    if (std::equal(a.begin(), a.end(), b.begin(), b.end())) continue;
    for (Vertex v = 0; v < g.size(); ++v) {
      if (v != u && l.adjacent(u, v) != g.adjacent(u, v)) {
        throw PreconditionError("root-mismatch",
                                "lines " + std::to_string(u) + " and " + std::to_string(v) +
                                    (g.adjacent(u, v) ? " are adjacent but their root edges are disjoint"
                                                      : " share a root vertex but are not adjacent"),
                                {std::min(u, v), std::max(u, v)});
      }
    }
  }
}

// Per root vertex: incident lines grouped into levels, best level first.
// Lines in one level are pairwise joined by bidirected edges.
struct PreferenceTables {
  std::vector<std::vector<VertexSet>> levels;
};

// Levels are peeled off as the sinks of the one-way arcs among the lines
// still unranked, so every one-way arc f -> e ranks e strictly above f.
// A bidirected pair may end up on different levels when the tie relation is
// not transitive; any such ranking still yields a kernel.
inline PreferenceTables preferences_from_orientation(const SuperOrientation& d, const BipartiteRoot& root) {
  validate_root(root, d.underlying());
  PreferenceTables prefs;
  auto inc = root.incidence();
  prefs.levels.resize(inc.size());
  std::vector<char> alive(static_cast<std::size_t>(d.size()), 0);
  for (std::size_t b = 0; b < inc.size(); ++b) {
    VertexSet rest = inc[b];
    for (Vertex e : rest) alive[e] = 1;
    while (!rest.empty()) {
      VertexSet top;
      for (Vertex e : rest) {
        bool sink = true;
        for (Vertex f : d.out(e)) {
          if (alive[f] && !d.has_arc(f, e)) {
            sink = false;
            break;
          }
        }
        if (sink) top.push_back(e);
      }
      if (top.empty()) {
        auto cycle = detail::one_way_cycle_in(d, rest);
        for (Vertex e : rest) alive[e] = 0;
        throw PreconditionError("not-clique-acyclic",
                                "one-way arcs among the lines at root vertex " + std::to_string(b) + " form a cycle",
                                cycle);
      }
      for (Vertex e : top) alive[e] = 0;
      rest = set_difference(rest, top);
      prefs.levels[b].push_back(std::move(top));
    }
  }
  return prefs;
}

// Left-proposing deferred acceptance. Ties inside a level are broken by the
// smallest line id. Returns the matched lines.
inline VertexSet gale_shapley(const BipartiteRoot& root, const PreferenceTables& prefs) {
  const auto nb = static_cast<std::size_t>(root.vertex_count);
  if (prefs.levels.size() != nb) throw InvalidInput("preference tables do not match the root");
  std::vector<std::vector<Vertex>> list(nb);  // strict order, best first
  std::vector<int> rank(static_cast<std::size_t>(root.line_count()) * 2, 0);
  auto edge_of = root.edge_of_line();
  for (std::size_t b = 0; b < nb; ++b) {
    for (const auto& level : prefs.levels[b]) list[b].insert(list[b].end(), level.begin(), level.end());
    for (std::size_t r = 0; r < list[b].size(); ++r) {
      Vertex line = list[b][r];
      bool is_right = root.edges[edge_of[line]].right == static_cast<int>(b);
      rank[static_cast<std::size_t>(line) * 2 + (is_right ? 1 : 0)] = static_cast<int>(r);
    }
  }
  std::vector<std::size_t> next(nb, 0);
  std::vector<Vertex> held(nb, -1);  // right vertex -> line it holds
  std::deque<int> free_left(root.left.begin(), root.left.end());
  std::sort(free_left.begin(), free_left.end());
  while (!free_left.empty()) {
    int a = free_left.front();
    free_left.pop_front();
    if (next[a] >= list[a].size()) continue;
    Vertex line = list[a][next[a]++];
    int b = root.edges[edge_of[line]].right;
    Vertex cur = held[b];
    if (cur < 0) {
      held[b] = line;
    } else if (rank[static_cast<std::size_t>(line) * 2 + 1] < rank[static_cast<std::size_t>(cur) * 2 + 1]) {
      held[b] = line;
      free_left.push_front(root.edges[edge_of[cur]].left);
    } else {
      free_left.push_front(a);
    }
  }
  VertexSet matched;
  for (int b : root.right)
    if (held[b] >= 0) matched.push_back(held[b]);
  return make_set(std::move(matched));
}

// Kernel of a clique-acyclic super-orientation of L(root), verified.
inline VertexSet solve_line_bipartite(const SuperOrientation& d, const BipartiteRoot& root) {
  auto prefs = preferences_from_orientation(d, root);
  auto k = gale_shapley(root, prefs);
  auto verdict = verify_kernel(d, k);
  if (!verdict) throw InternalError("stable matching is not a kernel: " + verdict.describe());
  return k;
}

namespace detail {

// Closed-neighbourhood twin classes; class id per vertex, ids ordered by
// smallest member.
template <AdjacencyGraph G>
std::vector<int> true_twin_classes(const G& g, int& count) {
  std::map<std::vector<Vertex>, int> seen;
  std::vector<int> cls(static_cast<std::size_t>(g.size()));
  count = 0;
  for (Vertex v = 0; v < g.size(); ++v) {
    auto nb = g.neighbors(v);
    std::vector<Vertex> closed(nb.begin(), nb.end());
    closed.insert(std::lower_bound(closed.begin(), closed.end(), v), v);
    auto [it, fresh] = seen.emplace(std::move(closed), count);
    if (fresh) ++count;
    cls[v] = it->second;
  }
  return cls;
}

}  // namespace detail

// Finds a bipartite multigraph whose line graph is g, or nothing. True twins
// are collapsed first; on the twin-free quotient every edge lies in exactly
// one maximal clique (the lines at one root vertex). Twins are expanded back
// as extra pendant edges when the class sits on a pendant root edge (so a
// triangle gets a star root), and as parallel edges otherwise. The result is
// checked against g exactly.
template <AdjacencyGraph G>
std::optional<BipartiteRoot> reconstruct_bipartite_root(const G& g) {
  const int n = g.size();
  BipartiteRoot root;
  if (n == 0) return root;
  int q = 0;
  auto cls = detail::true_twin_classes(g, q);
  std::vector<Vertex> rep(static_cast<std::size_t>(q), -1);
  std::vector<VertexSet> members(static_cast<std::size_t>(q));
  for (Vertex v = 0; v < n; ++v) {
    if (rep[cls[v]] < 0) rep[cls[v]] = v;
    members[cls[v]].push_back(v);
  }
  std::vector<Edge> qedges;
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : g.neighbors(v))
      if (cls[v] < cls[w]) qedges.emplace_back(cls[v], cls[w]);
  std::sort(qedges.begin(), qedges.end());
  qedges.erase(std::unique(qedges.begin(), qedges.end()), qedges.end());
  UndirectedGraph quotient(q, qedges);

  // Maximal cliques of the quotient, one per edge.
  std::map<VertexSet, int> clique_id;
  std::vector<VertexSet> cliques;
  std::vector<std::vector<int>> at(static_cast<std::size_t>(q));
  for (auto [u, v] : quotient.edges()) {
    VertexSet m = set_intersection(quotient.neighbors(u), quotient.neighbors(v));
    m = set_union(m, make_set({u, v}));
    if (!is_clique(quotient, m)) return std::nullopt;
    auto [it, fresh] = clique_id.emplace(m, static_cast<int>(cliques.size()));
    if (fresh) {
      for (Vertex w : m) {
        at[w].push_back(it->second);
        if (at[w].size() > 2) return std::nullopt;
      }
      cliques.push_back(std::move(m));
    }
  }
  // Pad with singleton cliques: the leaf ends of pendant root edges.
  for (Vertex v = 0; v < q; ++v)
    while (at[v].size() < 2) {
      at[v].push_back(static_cast<int>(cliques.size()));
      cliques.push_back({v});
    }
  // Root vertex ids ordered by clique contents.
  std::vector<int> order(cliques.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return cliques[a] < cliques[b]; });
  std::vector<int> id(cliques.size());
  for (std::size_t i = 0; i < order.size(); ++i) id[order[i]] = static_cast<int>(i);
  const int k = static_cast<int>(cliques.size());
  std::vector<std::pair<int, int>> qroot(static_cast<std::size_t>(q));
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(k));
  for (Vertex v = 0; v < q; ++v) {
    int a = id[at[v][0]], b = id[at[v][1]];
    if (a == b) return std::nullopt;
    qroot[v] = {a, b};
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  // Two-colour the root, smallest vertex of each component on the left.
  std::vector<int> side(static_cast<std::size_t>(k), -1);
  for (int s = 0; s < k; ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::vector<int> queue{s};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      int b = queue[h];
      for (int c : adj[b]) {
        if (side[c] < 0) {
          side[c] = 1 - side[b];
          queue.push_back(c);
        } else if (side[c] == side[b]) {
          return std::nullopt;
        }
      }
    }
  }
  root.vertex_count = k;
  auto add_vertex = [&](int s) {
    side.push_back(s);
    return root.vertex_count++;
  };
  auto is_leaf = [&](int b) { return cliques[order[b]].size() == 1; };
  for (Vertex c = 0; c < q; ++c) {
    auto [a, b] = qroot[c];
    if (side[a] == 1) std::swap(a, b);
    const auto& ms = members[c];
    root.edges.push_back({ms[0], a, b});
    for (std::size_t i = 1; i < ms.size(); ++i) {
      if (is_leaf(b)) {
        root.edges.push_back({ms[i], a, add_vertex(1)});
      } else if (is_leaf(a)) {
        root.edges.push_back({ms[i], add_vertex(0), b});
      } else {
        root.edges.push_back({ms[i], a, b});
      }
    }
  }
  for (int b = 0; b < root.vertex_count; ++b) (side[b] == 0 ? root.left : root.right).push_back(b);
  std::sort(root.edges.begin(), root.edges.end(),
            [](const auto& x, const auto& y) { return x.line < y.line; });
  try {
    validate_root(root, g);
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
  return root;
}

// Atom solver for DE graphs: cutset-free DE graphs are line graphs of
// bipartite multigraphs, and so are their induced subgraphs.
struct StableMatchingAtom {
  VertexSet operator()(const SuperOrientation& d) const {
    auto root = reconstruct_bipartite_root(d.underlying());
    if (!root) {
      throw PreconditionError("not-de-atom", "a cutset-free piece is not the line graph of a bipartite multigraph");
    }
    return solve_line_bipartite(d, *root);
  }
};

// Kernel of a clique-acyclic super-orientation of a DE graph. Membership in
// the class is not checked; a violation shows up as a piece without a root.
inline VertexSet solve_de_super(const SuperOrientation& d, DecompositionStats* stats = nullptr) {
  return solve_by_decomposition(d, StableMatchingAtom{}, stats);
}

namespace io {

inline BipartiteRoot read_root(std::istream& in) {
  BipartiteRoot root;
  std::string line;
  int line_no = 0;
  bool have_left = false, have_right = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_comment_or_blank(line)) continue;
    auto toks = detail::split_ws(line);
    if (toks[0] == "left" || toks[0] == "right") {
      auto& dst = toks[0] == "left" ? root.left : root.right;
      bool& flag = toks[0] == "left" ? have_left : have_right;
      if (flag) throw FormatError("line " + std::to_string(line_no) + ": side listed twice");
      flag = true;
      for (std::size_t i = 1; i < toks.size(); ++i) dst.push_back(detail::parse_int<int>(toks[i], line_no, "root vertex"));
    } else if (toks[0] == "edge" && toks.size() == 4) {
      root.edges.push_back({detail::parse_int<Vertex>(toks[1], line_no, "line vertex"),
                            detail::parse_int<int>(toks[2], line_no, "root vertex"),
                            detail::parse_int<int>(toks[3], line_no, "root vertex")});
    } else {
      throw FormatError("line " + std::to_string(line_no) + ": expected 'left ...', 'right ...' or 'edge <line> <l> <r>'");
    }
  }
  root.vertex_count = static_cast<int>(root.left.size() + root.right.size());
  try {
    check_root_shape(root);
  } catch (const InvalidInput& e) {
    throw FormatError(e.what());
  }
  return root;
}

inline BipartiteRoot load_root(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return read_root(in);
}

inline void write_root(std::ostream& out, const BipartiteRoot& root) {
  out << "left";
  for (int b : root.left) out << ' ' << b;
  out << "\nright";
  for (int b : root.right) out << ' ' << b;
  out << '\n';
  for (const auto& e : root.edges) out << "edge " << e.line << ' ' << e.left << ' ' << e.right << '\n';
}

}  // namespace io

}  // namespace perfkern
