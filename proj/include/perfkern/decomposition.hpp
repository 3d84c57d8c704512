#pragma once

// Clique-cutset decomposition. A kernel of D is assembled from kernels of an
// atom piece D[B u C] (computed |C|+1 times on shrinking cutset parts) and a
// kernel of the remainder D[B' u X], where X collects the cutset vertices
// picked by those piece kernels:
//
//   X_1 = {}          K_i = atom(D[B u (C \ X_i)])       X_{i+1} = X_i u (C n K_i)
//   K   = solve(D[B' u X_{|C|+1}])
//
// If K misses C, K u K_k is a kernel for the first k with X_k = X_{k+1} (which
// exists by pigeonhole and satisfies C n K_k = {}). Otherwise pick v in C n K
// and the first l with v in K_l; then K u K_l is a kernel.

#include <algorithm>
#include <concepts>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "perfkern/errors.hpp"
#include "perfkern/graph.hpp"
#include "perfkern/kernel.hpp"
#include "perfkern/structure.hpp"

namespace perfkern {

// C is a clique cutset; B (the piece side) and `rest` (B') partition V \ C
// with no edge between them, and G[B u C] has no clique cutset.
struct CutsetSplit {
  VertexSet cutset;
  VertexSet piece;
  VertexSet rest;
};

struct EliminationOrdering {
  std::vector<Vertex> order;               // first eliminated first
  std::vector<std::vector<Vertex>> madj;   // higher neighbours in the filled graph, sorted
};

// Minimal elimination ordering by MCS-M. On chordal graphs this is a perfect
// elimination ordering with no fill.
template <AdjacencyGraph G>
EliminationOrdering minimal_elimination_ordering(const G& g) {
  const int n = g.size();
  EliminationOrdering r;
  r.madj.assign(static_cast<std::size_t>(n), {});
  if (auto peo = perfect_elimination_ordering(g)) {
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[(*peo)[i]] = i;
    for (Vertex v = 0; v < n; ++v)
      for (Vertex w : g.neighbors(v))
        if (pos[w] > pos[v]) r.madj[v].push_back(w);
    r.order = std::move(*peo);
    return r;
  }
  std::vector<int> weight(static_cast<std::size_t>(n), 0);
  std::vector<char> numbered(static_cast<std::size_t>(n), 0);
  std::vector<int> reach(static_cast<std::size_t>(n));
  std::vector<Vertex> numbering;  // highest number first
  numbering.reserve(static_cast<std::size_t>(n));
  using Entry = std::pair<int, Vertex>;
  for (int step = 0; step < n; ++step) {
    Vertex v = -1;
    for (Vertex u = 0; u < n; ++u)
      if (!numbered[u] && (v < 0 || weight[u] > weight[v])) v = u;
    // reach[u]: least possible maximum weight of inner vertices over paths
    // v ~> u through unnumbered vertices (-1 for direct neighbours).
    std::fill(reach.begin(), reach.end(), n + 1);
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
    for (Vertex u : g.neighbors(v)) {
      if (numbered[u]) continue;
      reach[u] = -1;
      pq.emplace(-1, u);
    }
    while (!pq.empty()) {
      auto [key, u] = pq.top();
      pq.pop();
      if (key != reach[u]) continue;
      int through = std::max(key, weight[u]);
      for (Vertex x : g.neighbors(u)) {
        if (numbered[x] || x == v || through >= reach[x]) continue;
        reach[x] = through;
        pq.emplace(through, x);
      }
    }
    std::vector<Vertex> raised;
    for (Vertex u = 0; u < n; ++u)
      if (!numbered[u] && u != v && reach[u] < weight[u]) raised.push_back(u);
    for (Vertex u : raised) {
      ++weight[u];
      r.madj[u].push_back(v);
    }
    numbered[v] = 1;
    numbering.push_back(v);
  }
  r.order.assign(numbering.rbegin(), numbering.rend());
  for (auto& m : r.madj) std::sort(m.begin(), m.end());
  return r;
}

// First clique cutset met by Tarjan's decomposition along a minimal
// elimination ordering; the piece it splits off is an atom. Requires a
// connected graph; returns nullopt iff there is no clique cutset.
template <AdjacencyGraph G>
std::optional<CutsetSplit> find_cutset_split(const G& g) {
  const int n = g.size();
  if (n <= 2) return std::nullopt;
  if (connected_components(g).size() > 1) throw InvalidInput("find_cutset_split: graph must be connected");
  auto elim = minimal_elimination_ordering(g);
  std::vector<char> in_c(static_cast<std::size_t>(n), 0);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (Vertex x : elim.order) {
    const auto& c = elim.madj[x];
    if (c.empty() || !is_clique(g, std::span<const Vertex>(c))) continue;
    for (Vertex v : c) in_c[v] = 1;
    VertexSet piece{x};
    std::fill(seen.begin(), seen.end(), 0);
    seen[x] = 1;
    for (std::size_t head = 0; head < piece.size(); ++head) {
      for (Vertex w : g.neighbors(piece[head])) {
        if (in_c[w] || seen[w]) continue;
        seen[w] = 1;
        piece.push_back(w);
      }
    }
    for (Vertex v : c) in_c[v] = 0;
    if (piece.size() + c.size() < static_cast<std::size_t>(n)) {
      CutsetSplit split;
      split.cutset = c;
      std::sort(piece.begin(), piece.end());
      split.piece = std::move(piece);
      for (Vertex v = 0; v < n; ++v)
        if (!seen[v] && !std::binary_search(c.begin(), c.end(), v)) split.rest.push_back(v);
      return split;
    }
  }
  return std::nullopt;
}

// Counters exposed for tests and the benchmark harness.
struct DecompositionStats {
  std::size_t atom_calls = 0;
  std::size_t cutsets = 0;          // combine steps performed
  std::size_t component_splits = 0;
  std::size_t pigeonhole_hits = 0;  // pigeonhole index found within 1..|C|+1
  std::size_t fallbacks = 0;        // proof-prescribed index failed verification
  std::size_t max_depth = 0;
};

// Record of one combine step. Indices k and l are 1-based as in the
// combination rule above.
struct CombineTrace {
  enum class Branch { disjoint, shared };

  VertexSet cutset;
  VertexSet piece;
  std::vector<VertexSet> piece_kernels;  // K_1 .. K_{|C|+1}
  std::vector<VertexSet> x_sets;         // X_1 .. X_{|C|+2}
  VertexSet rest;                        // B' u X_{|C|+1}
  VertexSet rest_kernel;                 // K
  int pigeonhole = 0;                    // first k with X_k = X_{k+1}
  Branch branch = Branch::disjoint;
  int chosen = 0;                        // k or l
  bool fell_back = false;
  VertexSet result;
};

// An atom solver maps a digraph (and optionally the top-level vertex ids of
// its vertices) to a kernel given in local ids.
template <class A>
concept AtomSolver = std::invocable<A&, const SuperOrientation&, std::span<const Vertex>> ||
                     std::invocable<A&, const SuperOrientation&>;

namespace detail {

template <AtomSolver Atom>
VertexSet call_atom(Atom& atom, const SuperOrientation& d, std::span<const Vertex> to_root) {
  if constexpr (std::invocable<Atom&, const SuperOrientation&, std::span<const Vertex>>) {
    return make_set(atom(d, to_root));
  } else {
    return make_set(atom(d));
  }
}

inline std::vector<Vertex> compose(std::span<const Vertex> local, std::span<const Vertex> to_root) {
  std::vector<Vertex> out;
  out.reserve(local.size());
  for (Vertex v : local) out.push_back(to_root[v]);
  return out;
}

// Piece kernels, X sets and the remainder; all ids are those of `d`.
template <AtomSolver Atom>
CombineTrace prepare_combine(const SuperOrientation& d, std::span<const Vertex> to_root, const CutsetSplit& split,
                             Atom& atom, DecompositionStats& stats) {
  CombineTrace t;
  t.cutset = split.cutset;
  t.piece = split.piece;
  const std::size_t c = split.cutset.size();
  t.x_sets.push_back({});
  for (std::size_t i = 0; i <= c; ++i) {
    VertexSet part = set_union(split.piece, set_difference(split.cutset, t.x_sets.back()));
    SuperOrientation sub = d.induced(part);
    auto sub_root = compose(part, to_root);
    VertexSet local = call_atom(atom, sub, sub_root);
    ++stats.atom_calls;
    auto verdict = verify_kernel(sub, local);
    if (!verdict) throw InternalError("atom solver returned a non-kernel: " + verdict.describe());
    VertexSet k = lift(local, part);
    t.x_sets.push_back(set_union(t.x_sets.back(), set_intersection(split.cutset, k)));
    t.piece_kernels.push_back(std::move(k));
  }
  for (std::size_t k = 0; k <= c; ++k) {
    if (t.x_sets[k] == t.x_sets[k + 1]) {
      t.pigeonhole = static_cast<int>(k) + 1;
      break;
    }
  }
  if (t.pigeonhole == 0) throw InternalError("no index k with X_k = X_{k+1}");
  ++stats.pigeonhole_hits;
  if (!set_intersection(split.cutset, t.piece_kernels[t.pigeonhole - 1]).empty()) {
    throw InternalError("piece kernel at the pigeonhole index meets the cutset");
  }
  t.rest = set_union(split.rest, t.x_sets[c]);
  return t;
}

// Picks the index prescribed by the combination rule, verifies, and falls
// back to scanning every index only if that fails.
template <class Verify>
VertexSet finish_combine(CombineTrace& t, VertexSet rest_kernel, Verify&& verify, DecompositionStats& stats) {
  t.rest_kernel = std::move(rest_kernel);
  auto shared = set_intersection(t.cutset, t.rest_kernel);
  if (shared.empty()) {
    t.branch = CombineTrace::Branch::disjoint;
    t.chosen = t.pigeonhole;
  } else {
    t.branch = CombineTrace::Branch::shared;
    const Vertex v = shared.front();
    for (std::size_t l = 0; l + 1 < t.piece_kernels.size(); ++l) {
      if (contains(t.piece_kernels[l], v)) {
        t.chosen = static_cast<int>(l) + 1;
        break;
      }
    }
    if (t.chosen == 0) throw InternalError("cutset vertex of the remainder kernel is in no piece kernel");
  }
  VertexSet candidate = set_union(t.rest_kernel, t.piece_kernels[t.chosen - 1]);
  if (verify(candidate).is_kernel()) {
    t.result = std::move(candidate);
    return t.result;
  }
  ++stats.fallbacks;
  t.fell_back = true;
  for (std::size_t i = 0; i < t.piece_kernels.size(); ++i) {
    candidate = set_union(t.rest_kernel, t.piece_kernels[i]);
    if (verify(candidate).is_kernel()) {
      t.chosen = static_cast<int>(i) + 1;
      t.result = std::move(candidate);
      return t.result;
    }
  }
  throw InternalError("no piece kernel combines with the remainder kernel into a kernel");
}

}  // namespace detail

// One combine step on D with the supplied split. `rec` solves the remainder
// D[B' u X_{|C|+1}] (local ids in, local ids out; like an atom solver it may
// also take the ids of those vertices in D). The result is re-verified.
template <AtomSolver Atom, AtomSolver Rec>
VertexSet combine_kernels(const SuperOrientation& d, const CutsetSplit& split, Atom&& atom, Rec&& rec,
                          DecompositionStats* stats = nullptr, CombineTrace* trace = nullptr) {
  DecompositionStats local_stats;
  DecompositionStats& st = stats ? *stats : local_stats;
  std::vector<Vertex> identity(static_cast<std::size_t>(d.size()));
  for (Vertex v = 0; v < d.size(); ++v) identity[v] = v;
  CombineTrace t = detail::prepare_combine(d, identity, split, atom, st);
  SuperOrientation rest = d.induced(t.rest);
  VertexSet k = lift(detail::call_atom(rec, rest, t.rest), t.rest);
  ++st.cutsets;
  VertexSet result = detail::finish_combine(t, std::move(k), [&](const VertexSet& s) { return verify_kernel(d, s); }, st);
  if (trace) *trace = std::move(t);
  return result;
}

// Kernel of D by recursive clique-cutset decomposition. Disconnected inputs
// are solved componentwise; cutset-free inputs go to `atom`. Every level's
// result is verified before it is used. The recursion is unrolled onto an
// explicit stack that keeps only cutset/piece vertices per level, so memory
// stays near-linear even when the chain of cutsets is n levels deep.
template <AtomSolver Atom>
VertexSet solve_by_decomposition(const SuperOrientation& root, Atom&& atom, DecompositionStats* stats = nullptr) {
  DecompositionStats local_stats;
  DecompositionStats& st = stats ? *stats : local_stats;

  struct ChainFrame {
    CombineTrace trace;  // root ids
    VertexSet removed;   // W \ child W: piece plus cutset vertices not in X_{|C|+1}
  };
  struct UnionFrame {
    std::vector<VertexSet> components;  // root ids
    std::size_t next = 1;
    VertexSet accumulated;
  };
  struct Frame {
    bool chain;
    ChainFrame c;
    UnionFrame u;
  };

  std::vector<char> in_w(static_cast<std::size_t>(root.size()), 1);
  std::vector<Frame> stack;

  SuperOrientation current = root;
  std::vector<Vertex> to_root(static_cast<std::size_t>(root.size()));
  for (Vertex v = 0; v < root.size(); ++v) to_root[v] = v;

  auto enter = [&](SuperOrientation d, std::vector<Vertex> ids) {
    current = std::move(d);
    to_root = std::move(ids);
  };

  while (true) {
    st.max_depth = std::max(st.max_depth, stack.size());
    // Descend until a result for `current` is known.
    std::optional<VertexSet> result;
    if (current.size() == 0) {
      result = VertexSet{};
    } else if (auto comps = connected_components(current); comps.size() > 1) {
      ++st.component_splits;
      Frame f{false, {}, {}};
      for (auto& comp : comps) f.u.components.push_back(lift(comp, to_root));
      for (std::size_t i = 1; i < f.u.components.size(); ++i)
        for (Vertex v : f.u.components[i]) in_w[v] = 0;
      SuperOrientation first = current.induced(comps[0]);
      std::vector<Vertex> ids = f.u.components[0];
      stack.push_back(std::move(f));
      enter(std::move(first), std::move(ids));
      continue;
    } else if (auto split = find_cutset_split(current.underlying())) {
      CombineTrace t = detail::prepare_combine(current, to_root, *split, atom, st);
      Frame f{true, {}, {}};
      VertexSet kept = t.x_sets[split->cutset.size()];
      f.c.removed = lift(set_union(split->piece, set_difference(split->cutset, kept)), to_root);
      for (Vertex v : f.c.removed) in_w[v] = 0;
      SuperOrientation child = current.induced(t.rest);
      std::vector<Vertex> ids = detail::compose(t.rest, to_root);
      // Store the trace in root ids; `current` is about to be replaced.
      t.cutset = lift(t.cutset, to_root);
      t.piece = lift(t.piece, to_root);
      for (auto& k : t.piece_kernels) k = lift(k, to_root);
      for (auto& x : t.x_sets) x = lift(x, to_root);
      t.rest = lift(t.rest, to_root);
      f.c.trace = std::move(t);
      stack.push_back(std::move(f));
      enter(std::move(child), std::move(ids));
      continue;
    } else {
      VertexSet local = detail::call_atom(atom, current, to_root);
      ++st.atom_calls;
      auto verdict = verify_kernel(current, local);
      if (!verdict) throw InternalError("atom solver returned a non-kernel: " + verdict.describe());
      result = lift(local, to_root);
    }

    // Unwind with `result` until a frame needs another descent.
    bool descended = false;
    while (!stack.empty() && !descended) {
      Frame& f = stack.back();
      if (f.chain) {
        for (Vertex v : f.c.removed) in_w[v] = 1;
        ++st.cutsets;
        result = detail::finish_combine(
            f.c.trace, std::move(*result), [&](const VertexSet& s) { return verify_kernel_within(root, in_w, s); },
            st);
        stack.pop_back();
      } else {
        UnionFrame& u = f.u;
        u.accumulated = set_union(u.accumulated, *result);
        if (u.next < u.components.size()) {
          for (Vertex v : u.components[u.next - 1]) in_w[v] = 0;
          for (Vertex v : u.components[u.next]) in_w[v] = 1;
          std::vector<Vertex> ids = u.components[u.next];
          ++u.next;
          SuperOrientation next = root.induced(ids);
          enter(std::move(next), std::move(ids));
          descended = true;
        } else {
          for (const auto& comp : u.components)
            for (Vertex v : comp) in_w[v] = 1;
          result = std::move(u.accumulated);
          stack.pop_back();
        }
      }
    }
    if (!descended) {
      auto verdict = verify_kernel(root, *result);
      if (!verdict) throw InternalError("decomposition produced a non-kernel: " + verdict.describe());
      return std::move(*result);
    }
  }
}

}  // namespace perfkern
