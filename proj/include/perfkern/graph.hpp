#pragma once

// Core graph types. Vertices are dense indices 0..n-1; adjacency is kept in
// compressed sparse rows with every row sorted ascending, so neighbourhood
// scans are deterministic and adjacency tests are binary searches.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "perfkern/errors.hpp"

namespace perfkern {

using Vertex = int;
// Sorted, duplicate-free list of vertices.
using VertexSet = std::vector<Vertex>;
using Arc = std::pair<Vertex, Vertex>;
using Edge = std::pair<Vertex, Vertex>;

template <class G>
concept AdjacencyGraph = requires(const G& g, Vertex v) {
  { g.size() } -> std::convertible_to<int>;
  { g.neighbors(v) } -> std::convertible_to<std::span<const Vertex>>;
  { g.adjacent(v, v) } -> std::same_as<bool>;
};

namespace detail {

// Compressed rows. `rows[v]` is the sorted span of entries for v.
struct Rows {
  std::vector<std::size_t> offset{0};
  std::vector<Vertex> data;

  std::span<const Vertex> operator[](Vertex v) const {
    return {data.data() + offset[static_cast<std::size_t>(v)],
            data.data() + offset[static_cast<std::size_t>(v) + 1]};
  }

  bool contains(Vertex v, Vertex w) const {
    auto row = (*this)[v];
    return std::binary_search(row.begin(), row.end(), w);
  }

  // Builds rows from (row, value) pairs. Pairs need not be sorted.
  static Rows from_pairs(int n, std::span<const std::pair<Vertex, Vertex>> pairs) {
    Rows r;
    r.offset.assign(static_cast<std::size_t>(n) + 1, 0);
    for (auto [u, v] : pairs) ++r.offset[static_cast<std::size_t>(u) + 1];
    for (std::size_t i = 1; i < r.offset.size(); ++i) r.offset[i] += r.offset[i - 1];
    r.data.resize(pairs.size());
    std::vector<std::size_t> fill(r.offset.begin(), r.offset.end() - 1);
    for (auto [u, v] : pairs) r.data[fill[static_cast<std::size_t>(u)]++] = v;
    for (Vertex v = 0; v < n; ++v) {
      std::sort(r.data.begin() + static_cast<std::ptrdiff_t>(r.offset[v]),
                r.data.begin() + static_cast<std::ptrdiff_t>(r.offset[v + 1]));
    }
    return r;
  }
};

inline void check_vertex(int n, Vertex v, const char* what) {
  if (v < 0 || v >= n) {
    throw InvalidInput(std::string(what) + ": vertex " + std::to_string(v) +
                       " out of range [0," + std::to_string(n) + ")");
  }
}

// Maps the sorted subset `keep` of parent vertices to 0..k-1. Small subsets use
// binary search so that carving a handful of vertices out of a large graph
// does not pay for an n-sized table.
class SubsetIndex {
 public:
  SubsetIndex(int parent_n, std::span<const Vertex> keep) : keep_(keep) {
    if (keep.size() * 16 >= static_cast<std::size_t>(parent_n)) {
      table_.assign(static_cast<std::size_t>(parent_n), -1);
      for (std::size_t i = 0; i < keep.size(); ++i) table_[keep[i]] = static_cast<Vertex>(i);
    }
  }
  Vertex operator()(Vertex parent) const {
    if (!table_.empty()) return table_[parent];
    auto it = std::lower_bound(keep_.begin(), keep_.end(), parent);
    return (it != keep_.end() && *it == parent) ? static_cast<Vertex>(it - keep_.begin()) : -1;
  }

 private:
  std::span<const Vertex> keep_;
  std::vector<Vertex> table_;
};

// Filters the rows of `keep` through `index`; rows stay sorted because the
// index is monotone.
inline Rows restrict_rows(const Rows& rows, std::span<const Vertex> keep, const SubsetIndex& index) {
  Rows r;
  r.offset.reserve(keep.size() + 1);
  for (Vertex v : keep) {
    for (Vertex w : rows[v]) {
      Vertex local = index(w);
      if (local >= 0) r.data.push_back(local);
    }
    r.offset.push_back(r.data.size());
  }
  return r;
}

inline void require_sorted_subset(int n, std::span<const Vertex> keep) {
  for (std::size_t i = 0; i < keep.size(); ++i) {
    check_vertex(n, keep[i], "induced subgraph");
    if (i > 0 && keep[i - 1] >= keep[i]) {
      throw InvalidInput("induced subgraph: vertex list must be strictly increasing");
    }
  }
}

}  // namespace detail

class UndirectedGraph {
 public:
  UndirectedGraph() = default;

  // Throws InvalidInput on self-loops, parallel edges or out-of-range endpoints.
  UndirectedGraph(int n, std::span<const Edge> edges) : n_(n) {
    if (n < 0) throw InvalidInput("negative vertex count");
    std::vector<std::pair<Vertex, Vertex>> pairs;
    pairs.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
      detail::check_vertex(n, u, "edge");
      detail::check_vertex(n, v, "edge");
      if (u == v) throw InvalidInput("self-loop at vertex " + std::to_string(u));
      pairs.emplace_back(u, v);
      pairs.emplace_back(v, u);
    }
    adj_ = detail::Rows::from_pairs(n, pairs);
    for (Vertex v = 0; v < n; ++v) {
      auto row = adj_[v];
      if (std::adjacent_find(row.begin(), row.end()) != row.end()) {
        throw InvalidInput("parallel edge at vertex " + std::to_string(v));
      }
    }
  }

  UndirectedGraph(int n, std::initializer_list<Edge> edges)
      : UndirectedGraph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  int size() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return adj_.data.size() / 2; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

  bool adjacent(Vertex u, Vertex v) const {
    return adj_[u].size() <= adj_[v].size() ? adj_.contains(u, v) : adj_.contains(v, u);
  }

  // All edges {u,v} with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  UndirectedGraph induced(std::span<const Vertex> keep) const {
    detail::require_sorted_subset(n_, keep);
    detail::SubsetIndex index(n_, keep);
    UndirectedGraph g;
    g.n_ = static_cast<int>(keep.size());
    g.adj_ = detail::restrict_rows(adj_, keep, index);
    return g;
  }

  friend bool operator==(const UndirectedGraph& a, const UndirectedGraph& b) {
    return a.n_ == b.n_ && a.adj_.data == b.adj_.data && a.adj_.offset == b.adj_.offset;
  }

 private:
  friend class SuperOrientation;
  int n_ = 0;
  detail::Rows adj_;
};

// A digraph D=(V,A) read as a super-orientation of its underlying graph: an
// edge is bidirected when both arcs are present and one-way otherwise.
// Immutable after construction.
class SuperOrientation {
 public:
  SuperOrientation() = default;

  // Throws InvalidInput on self-loops, duplicate arcs or out-of-range endpoints.
  SuperOrientation(int n, std::span<const Arc> arcs) : n_(n) {
    if (n < 0) throw InvalidInput("negative vertex count");
    std::vector<std::pair<Vertex, Vertex>> fwd, bwd;
    fwd.reserve(arcs.size());
    bwd.reserve(arcs.size());
    for (auto [u, v] : arcs) {
      detail::check_vertex(n, u, "arc");
      detail::check_vertex(n, v, "arc");
      if (u == v) throw InvalidInput("self-loop at vertex " + std::to_string(u));
      fwd.emplace_back(u, v);
      bwd.emplace_back(v, u);
    }
    out_ = detail::Rows::from_pairs(n, fwd);
    in_ = detail::Rows::from_pairs(n, bwd);
    for (Vertex v = 0; v < n; ++v) {
      auto row = out_[v];
      auto dup = std::adjacent_find(row.begin(), row.end());
      if (dup != row.end()) {
        throw InvalidInput("duplicate arc " + std::to_string(v) + " -> " + std::to_string(*dup));
      }
    }
    build_underlying();
  }

  SuperOrientation(int n, std::initializer_list<Arc> arcs)
      : SuperOrientation(n, std::span<const Arc>(arcs.begin(), arcs.size())) {}

  int size() const noexcept { return n_; }
  std::size_t arc_count() const noexcept { return out_.data.size(); }
  std::size_t bidirected_count() const noexcept { return bidirected_; }
  bool is_orientation() const noexcept { return bidirected_ == 0; }

  std::span<const Vertex> out(Vertex v) const { return out_[v]; }
  std::span<const Vertex> in(Vertex v) const { return in_[v]; }
  std::span<const Vertex> neighbors(Vertex v) const { return graph_.neighbors(v); }

  bool has_arc(Vertex u, Vertex v) const { return out_.contains(u, v); }
  bool adjacent(Vertex u, Vertex v) const { return graph_.adjacent(u, v); }
  bool bidirected(Vertex u, Vertex v) const { return has_arc(u, v) && has_arc(v, u); }
  // u -> v present and v -> u absent.
  bool one_way(Vertex u, Vertex v) const { return has_arc(u, v) && !has_arc(v, u); }

  const UndirectedGraph& underlying() const noexcept { return graph_; }

  // Arcs in lexicographic order.
  std::vector<Arc> arcs() const {
    std::vector<Arc> out;
    out.reserve(arc_count());
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v : out_[u]) out.emplace_back(u, v);
    return out;
  }

  // D[keep]; `keep` must be strictly increasing. Local vertex i is keep[i].
  SuperOrientation induced(std::span<const Vertex> keep) const {
    detail::require_sorted_subset(n_, keep);
    detail::SubsetIndex index(n_, keep);
    SuperOrientation d;
    d.n_ = static_cast<int>(keep.size());
    d.out_ = detail::restrict_rows(out_, keep, index);
    d.in_ = detail::restrict_rows(in_, keep, index);
    d.graph_.n_ = d.n_;
    d.graph_.adj_ = detail::restrict_rows(graph_.adj_, keep, index);
    d.bidirected_ = 0;
    for (Vertex v = 0; v < d.n_; ++v)
      for (Vertex w : d.out_[v])
        if (v < w && d.out_.contains(w, v)) ++d.bidirected_;
    return d;
  }

  friend bool operator==(const SuperOrientation& a, const SuperOrientation& b) {
    return a.n_ == b.n_ && a.out_.offset == b.out_.offset && a.out_.data == b.out_.data;
  }

 private:
  void build_underlying() {
    graph_.n_ = n_;
    graph_.adj_.offset.assign(1, 0);
    graph_.adj_.data.clear();
    bidirected_ = 0;
    for (Vertex v = 0; v < n_; ++v) {
      auto o = out_[v];
      auto i = in_[v];
      std::set_union(o.begin(), o.end(), i.begin(), i.end(), std::back_inserter(graph_.adj_.data));
      graph_.adj_.offset.push_back(graph_.adj_.data.size());
      for (Vertex w : o)
        if (v < w && std::binary_search(i.begin(), i.end(), w)) ++bidirected_;
    }
  }

  int n_ = 0;
  detail::Rows out_;
  detail::Rows in_;
  UndirectedGraph graph_;
  std::size_t bidirected_ = 0;
};

// Orientation/super-orientation helpers -------------------------------------

// Digraph with every edge of `g` bidirected.
inline SuperOrientation bidirect_all(const UndirectedGraph& g) {
  std::vector<Arc> arcs;
  for (auto [u, v] : g.edges()) {
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  return SuperOrientation(g.size(), arcs);
}

// Connected components, each sorted, ordered by smallest vertex.
template <AdjacencyGraph G>
std::vector<VertexSet> connected_components(const G& g) {
  const int n = g.size();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<VertexSet> out;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    comp[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

template <AdjacencyGraph G>
bool is_clique(const G& g, std::span<const Vertex> vs) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (!g.adjacent(vs[i], vs[j])) return false;
  return true;
}

// First non-adjacent pair in `vs` (scan order i<j), or {-1,-1}.
template <AdjacencyGraph G>
Edge first_non_adjacent_pair(const G& g, std::span<const Vertex> vs) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (!g.adjacent(vs[i], vs[j])) return {vs[i], vs[j]};
  return {-1, -1};
}

inline bool is_complete(const UndirectedGraph& g) {
  const auto n = static_cast<std::size_t>(g.size());
  return g.edge_count() == n * (n - (n > 0 ? 1 : 0)) / 2;
}

// Vertex set helpers ---------------------------------------------------------

inline VertexSet make_set(std::vector<Vertex> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

inline VertexSet set_union(std::span<const Vertex> a, std::span<const Vertex> b) {
  VertexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VertexSet set_intersection(std::span<const Vertex> a, std::span<const Vertex> b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VertexSet set_difference(std::span<const Vertex> a, std::span<const Vertex> b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool contains(std::span<const Vertex> sorted, Vertex v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

// Maps local vertices of an induced subgraph back through `origin`.
inline VertexSet lift(std::span<const Vertex> local, std::span<const Vertex> origin) {
  VertexSet out;
  out.reserve(local.size());
  for (Vertex v : local) out.push_back(origin[v]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace perfkern
