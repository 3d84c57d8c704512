#pragma once

// Deliberately naive reference implementations used as oracles by the tests.
// Nothing here shares code with the library beyond the graph containers.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "perfkern/graph.hpp"

namespace ref {

using perfkern::Vertex;
using perfkern::VertexSet;

struct Matrix {
  int n = 0;
  std::vector<std::vector<char>> arc;

  explicit Matrix(const perfkern::SuperOrientation& d) : n(d.size()), arc(n, std::vector<char>(n, 0)) {
    for (auto [u, v] : d.arcs()) arc[u][v] = 1;
  }
  bool adj(int u, int v) const { return arc[u][v] || arc[v][u]; }
};

inline bool is_kernel(const Matrix& m, std::uint32_t mask) {
  for (int u = 0; u < m.n; ++u) {
    bool in = mask >> u & 1;
    bool hit = false;
    for (int v = 0; v < m.n; ++v) {
      if (!(mask >> v & 1) || v == u) continue;
      if (in && m.adj(u, v)) return false;
      if (!in && m.arc[u][v]) hit = true;
    }
    if (!in && !hit) return false;
  }
  return true;
}

inline VertexSet to_set(std::uint32_t mask) {
  VertexSet s;
  for (int v = 0; mask; ++v, mask >>= 1)
    if (mask & 1) s.push_back(v);
  return s;
}

// All kernels by scanning every subset; n <= 20.
inline std::vector<VertexSet> all_kernels(const perfkern::SuperOrientation& d) {
  Matrix m(d);
  std::vector<VertexSet> out;
  for (std::uint32_t mask = 0; mask < (1u << m.n); ++mask)
    if (is_kernel(m, mask)) out.push_back(to_set(mask));
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_kernel(const perfkern::SuperOrientation& d, const VertexSet& s) {
  std::uint32_t mask = 0;
  for (Vertex v : s) mask |= 1u << v;
  return is_kernel(Matrix(d), mask);
}

// Kernel of an acyclic digraph: take the sinks, drop them and everything
// pointing at them, repeat.
inline VertexSet iterated_sinks(const perfkern::SuperOrientation& d) {
  Matrix m(d);
  std::vector<char> alive(m.n, 1);
  VertexSet k;
  bool progress = true;
  while (progress) {
    progress = false;
    VertexSet sinks;
    for (int v = 0; v < m.n; ++v) {
      if (!alive[v]) continue;
      bool sink = true;
      for (int w = 0; w < m.n; ++w)
        if (alive[w] && m.arc[v][w]) sink = false;
      if (sink) sinks.push_back(v);
    }
    for (int s : sinks) {
      k.push_back(s);
      alive[s] = 0;
      for (int u = 0; u < m.n; ++u)
        if (m.arc[u][s]) alive[u] = 0;
      progress = true;
    }
  }
  std::sort(k.begin(), k.end());
  return k;
}

template <class G>
bool is_clique(const G& g, const VertexSet& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!g.adjacent(s[i], s[j])) return false;
  return true;
}

// Every clique (not only maximal ones) of a small graph.
template <class G>
std::vector<VertexSet> all_cliques(const G& g) {
  std::vector<VertexSet> out;
  for (std::uint32_t mask = 1; mask < (1u << g.size()); ++mask) {
    auto s = to_set(mask);
    if (is_clique(g, s)) out.push_back(s);
  }
  return out;
}

template <class G>
bool connected_without(const G& g, const std::vector<char>& removed) {
  int start = -1, total = 0;
  for (int v = 0; v < g.size(); ++v)
    if (!removed[v]) {
      ++total;
      if (start < 0) start = v;
    }
  if (total <= 1) return true;
  std::vector<char> seen(g.size(), 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : g.neighbors(v))
      if (!removed[w] && !seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == total;
}

// Does the graph have a clique whose removal disconnects it?
template <class G>
bool has_clique_cutset(const G& g) {
  std::vector<char> none(g.size(), 0);
  if (!connected_without(g, none)) return true;  // the empty clique
  for (const auto& c : all_cliques(g)) {
    std::vector<char> removed(g.size(), 0);
    for (int v : c) removed[v] = 1;
    if (!connected_without(g, removed)) return true;
  }
  return false;
}

// Is some induced cycle of length >= 4 present? Exhaustive over subsets.
template <class G>
bool has_hole(const G& g) {
  for (std::uint32_t mask = 0; mask < (1u << g.size()); ++mask) {
    auto s = to_set(mask);
    if (s.size() < 4) continue;
    bool two_regular = true;
    for (int v : s) {
      int deg = 0;
      for (int w : s)
        if (w != v && g.adjacent(v, w)) ++deg;
      if (deg != 2) two_regular = false;
    }
    if (!two_regular) continue;
    std::vector<char> removed(g.size(), 1);
    for (int v : s) removed[v] = 0;
    if (connected_without(g, removed)) return true;
  }
  return false;
}

// Induced cycle check for a witness given in cyclic order.
template <class G>
bool is_induced_cycle(const G& g, const VertexSet& cyc) {
  const std::size_t k = cyc.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      bool consecutive = j == i + 1 || (i == 0 && j == k - 1);
      if (g.adjacent(cyc[i], cyc[j]) != consecutive) return false;
    }
  return true;
}

}  // namespace ref
