#pragma once

// Structural checks on the underlying graph: chordality (with a perfect
// elimination ordering, maximal cliques and a clique tree, or an induced
// hole), claws, flat edges, and clique-acyclicity of (super-)orientations.

#include <algorithm>
#include <array>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "perfkern/errors.hpp"
#include "perfkern/graph.hpp"

namespace perfkern {

struct ChordalEvidence {
  bool chordal = false;
  // Perfect elimination ordering: every vertex is simplicial among the
  // vertices after it.
  std::vector<Vertex> peo;
  std::vector<VertexSet> cliques;          // maximal cliques, each sorted
  std::vector<std::pair<int, int>> clique_tree;  // edges between clique indices (a forest if disconnected)
  std::vector<Vertex> hole;                // induced cycle of length >= 4 when not chordal
};

namespace detail {

// Maximum cardinality search. Returns the visit order; its reverse is a
// perfect elimination ordering whenever the graph is chordal.
template <AdjacencyGraph G>
std::vector<Vertex> maximum_cardinality_search(const G& g) {
  const int n = g.size();
  std::vector<int> weight(static_cast<std::size_t>(n), 0);
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<Vertex>> bucket(static_cast<std::size_t>(n) + 1);
  for (Vertex v = n - 1; v >= 0; --v) bucket[0].push_back(v);
  std::vector<Vertex> order;
  order.reserve(static_cast<std::size_t>(n));
  int top = 0;
  while (static_cast<int>(order.size()) < n) {
    // Lazy buckets: stale entries are skipped.
    while (true) {
      while (bucket[top].empty()) --top;
      Vertex v = bucket[top].back();
      bucket[top].pop_back();
      if (visited[v] || weight[v] != top) continue;
      visited[v] = 1;
      order.push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (visited[w]) continue;
        bucket[++weight[w]].push_back(w);
        top = std::max(top, weight[w]);
      }
      break;
    }
  }
  return order;
}

struct EliminationCheck {
  std::vector<int> position;  // position[v] in the ordering
  std::vector<Vertex> follow; // earliest later neighbour, -1 if none
  Vertex bad = -1;            // vertex whose later neighbourhood is not a clique
  Vertex bad_u = -1, bad_w = -1;  // non-adjacent pair of later neighbours of `bad`
};

// Tarjan-Yannakakis test of an elimination ordering.
template <AdjacencyGraph G>
EliminationCheck check_elimination_order(const G& g, std::span<const Vertex> order) {
  const int n = g.size();
  EliminationCheck r;
  r.position.assign(static_cast<std::size_t>(n), 0);
  r.follow.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) r.position[order[i]] = i;
  for (Vertex v : order) {
    Vertex f = -1;
    for (Vertex w : g.neighbors(v))
      if (r.position[w] > r.position[v] && (f < 0 || r.position[w] < r.position[f])) f = w;
    r.follow[v] = f;
  }
  for (Vertex v : order) {
    Vertex f = r.follow[v];
    if (f < 0) continue;
    for (Vertex w : g.neighbors(v)) {
      if (w == f || r.position[w] < r.position[v]) continue;
      if (!g.adjacent(f, w)) {
        r.bad = v;
        r.bad_u = f;
        r.bad_w = w;
        return r;
      }
    }
  }
  return r;
}

// Rotates a cycle so it starts at its smallest vertex and continues towards
// the smaller of that vertex's two cycle neighbours.
inline std::vector<Vertex> normalize_cycle(std::vector<Vertex> cycle, bool undirected) {
  if (cycle.empty()) return cycle;
  auto it = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), it, cycle.end());
  if (undirected && cycle.size() > 2 && cycle.back() < cycle[1]) std::reverse(cycle.begin() + 1, cycle.end());
  return cycle;
}

// Shortest u-w path avoiding `blocked`; empty if none.
template <AdjacencyGraph G>
std::vector<Vertex> shortest_path_avoiding(const G& g, Vertex u, Vertex w, const std::vector<char>& blocked) {
  std::vector<Vertex> parent(static_cast<std::size_t>(g.size()), -2);
  std::queue<Vertex> q;
  parent[u] = -1;
  q.push(u);
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    if (v == w) break;
    for (Vertex x : g.neighbors(v)) {
      if (blocked[x] || parent[x] != -2) continue;
      parent[x] = v;
      q.push(x);
    }
  }
  if (parent[w] == -2) return {};
  std::vector<Vertex> path;
  for (Vertex v = w; v != -1; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

// Induced cycle through x, u and w (u, w non-adjacent neighbours of x), if
// u and w are connected outside N[x].
template <AdjacencyGraph G>
std::vector<Vertex> hole_through(const G& g, Vertex x, Vertex u, Vertex w) {
  std::vector<char> blocked(static_cast<std::size_t>(g.size()), 0);
  blocked[x] = 1;
  for (Vertex y : g.neighbors(x))
    if (y != u && y != w) blocked[y] = 1;
  auto path = shortest_path_avoiding(g, u, w, blocked);
  if (path.empty()) return {};
  path.insert(path.begin(), x);
  return path;
}

template <AdjacencyGraph G>
std::vector<Vertex> find_hole(const G& g, const EliminationCheck& check) {
  if (check.bad >= 0) {
    auto hole = hole_through(g, check.bad, check.bad_u, check.bad_w);
    if (!hole.empty()) return normalize_cycle(std::move(hole), true);
  }
  // Exhaustive fallback: a hole exists iff some vertex has two non-adjacent
  // neighbours joined by a path outside its closed neighbourhood.
  for (Vertex x = 0; x < g.size(); ++x) {
    auto nb = g.neighbors(x);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (g.adjacent(nb[i], nb[j])) continue;
        auto hole = hole_through(g, x, nb[i], nb[j]);
        if (!hole.empty()) return normalize_cycle(std::move(hole), true);
      }
  }
  throw InternalError("elimination ordering failed but no hole was found");
}

}  // namespace detail

// Perfect elimination ordering if the graph is chordal.
template <AdjacencyGraph G>
std::optional<std::vector<Vertex>> perfect_elimination_ordering(const G& g) {
  auto order = detail::maximum_cardinality_search(g);
  std::reverse(order.begin(), order.end());
  if (detail::check_elimination_order(g, order).bad >= 0) return std::nullopt;
  return order;
}

// Chordality with a certificate either way: a PEO, the maximal cliques and a
// clique tree; or an induced cycle of length at least four.
template <AdjacencyGraph G>
ChordalEvidence recognize_chordal(const G& g) {
  const int n = g.size();
  ChordalEvidence ev;
  auto order = detail::maximum_cardinality_search(g);
  std::reverse(order.begin(), order.end());
  auto check = detail::check_elimination_order(g, order);
  if (check.bad >= 0) {
    ev.hole = detail::find_hole(g, check);
    return ev;
  }
  ev.chordal = true;
  ev.peo = order;

  // Walk the search order (PEO reversed). A vertex whose earlier-visited
  // neighbourhood is no larger than its predecessor's opens a new maximal
  // clique; otherwise it extends the current one. The new clique hangs below
  // the clique that took the last visited vertex of its neighbourhood.
  std::vector<int> cl(static_cast<std::size_t>(n), -1);
  std::size_t prev_size = 0;
  for (int i = n - 1; i >= 0; --i) {
    Vertex v = order[static_cast<std::size_t>(i)];
    VertexSet seen;
    Vertex last = -1;
    for (Vertex w : g.neighbors(v)) {
      if (check.position[w] <= i) continue;
      seen.push_back(w);
      if (last < 0 || check.position[w] < check.position[last]) last = w;
    }
    if (i == n - 1 || seen.size() <= prev_size) {
      VertexSet q = seen;
      q.push_back(v);
      std::sort(q.begin(), q.end());
      cl[v] = static_cast<int>(ev.cliques.size());
      if (last >= 0) ev.clique_tree.emplace_back(cl[v], cl[last]);
      ev.cliques.push_back(std::move(q));
    } else {
      cl[v] = static_cast<int>(ev.cliques.size()) - 1;
      auto& q = ev.cliques.back();
      q.insert(std::lower_bound(q.begin(), q.end(), v), v);
    }
    prev_size = seen.size();
  }
  return ev;
}

struct ClawCheck {
  bool claw_free = true;
  Vertex center = -1;
  std::array<Vertex, 3> leaves{-1, -1, -1};
};

// First claw in (center, leaf, leaf, leaf) lexicographic order.
template <AdjacencyGraph G>
ClawCheck check_claw_free(const G& g) {
  for (Vertex c = 0; c < g.size(); ++c) {
    auto nb = g.neighbors(c);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (g.adjacent(nb[i], nb[j])) continue;
        for (std::size_t k = j + 1; k < nb.size(); ++k) {
          if (!g.adjacent(nb[i], nb[k]) && !g.adjacent(nb[j], nb[k])) {
            return {false, c, {nb[i], nb[j], nb[k]}};
          }
        }
      }
  }
  return {};
}

// Edges lying in no triangle, i.e. N(x) and N(y) disjoint.
template <AdjacencyGraph G>
std::vector<Edge> find_flat_edges(const G& g) {
  std::vector<Edge> out;
  for (Vertex u = 0; u < g.size(); ++u) {
    auto nu = g.neighbors(u);
    for (Vertex v : nu) {
      if (v <= u) continue;
      auto nv = g.neighbors(v);
      bool common = false;
      for (std::size_t i = 0, j = 0; i < nu.size() && j < nv.size();) {
        if (nu[i] == nv[j]) {
          common = true;
          break;
        }
        nu[i] < nv[j] ? ++i : ++j;
      }
      if (!common) out.emplace_back(u, v);
    }
  }
  return out;
}

struct CliqueAcyclicity {
  bool acyclic = true;
  std::vector<Vertex> cycle;  // directed cycle of one-way arcs inside a clique
};

// Directed triangle of one-way arcs, as (a,b,c) with a->b->c->a and a smallest.
inline std::optional<std::array<Vertex, 3>> find_directed_triangle(const SuperOrientation& d) {
  for (Vertex a = 0; a < d.size(); ++a)
    for (Vertex b : d.out(a)) {
      if (b < a || !d.one_way(a, b)) continue;
      for (Vertex c : d.out(b)) {
        if (c < a || !d.one_way(b, c)) continue;
        if (d.one_way(c, a)) return std::array<Vertex, 3>{a, b, c};
      }
    }
  return std::nullopt;
}

namespace detail {

// Directed cycle among one-way arcs inside `clique`, or empty.
inline std::vector<Vertex> one_way_cycle_in(const SuperOrientation& d, std::span<const Vertex> clique) {
  const std::size_t k = clique.size();
  std::vector<int> color(k, 0);
  std::vector<int> parent(k, -1);
  for (std::size_t s = 0; s < k; ++s) {
    if (color[s]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
    color[s] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == k) {
        color[v] = 2;
        stack.pop_back();
        continue;
      }
      std::size_t w = next++;
      if (w == v || !d.one_way(clique[v], clique[w])) continue;
      if (color[w] == 1) {
        std::vector<Vertex> cycle;
        for (std::size_t x = v; x != w; x = static_cast<std::size_t>(parent[x])) cycle.push_back(clique[x]);
        cycle.push_back(clique[w]);
        std::reverse(cycle.begin(), cycle.end());
        return normalize_cycle(std::move(cycle), false);
      }
      if (color[w] == 0) {
        color[w] = 1;
        parent[w] = static_cast<int>(v);
        stack.emplace_back(w, 0);
      }
    }
  }
  return {};
}

}  // namespace detail

// Orientations: clique-acyclic iff no directed triangle. Super-orientations
// with bidirected edges are only decided for chordal graphs, by scanning the
// maximal cliques of the supplied evidence; the general problem is
// coNP-complete and is refused.
inline CliqueAcyclicity check_clique_acyclic(const SuperOrientation& d,
                                             const ChordalEvidence* evidence = nullptr) {
  CliqueAcyclicity r;
  if (d.is_orientation()) {
    if (auto t = find_directed_triangle(d)) {
      r.acyclic = false;
      r.cycle.assign(t->begin(), t->end());
    }
    return r;
  }
  if (evidence == nullptr || !evidence->chordal) {
    throw PreconditionError("undecidable",
                            "clique-acyclicity of a super-orientation is only checked on chordal graphs "
                            "(supply chordal evidence)");
  }
  for (const auto& q : evidence->cliques) {
    auto cycle = detail::one_way_cycle_in(d, q);
    if (!cycle.empty()) {
      r.acyclic = false;
      r.cycle = std::move(cycle);
      return r;
    }
  }
  return r;
}

}  // namespace perfkern
