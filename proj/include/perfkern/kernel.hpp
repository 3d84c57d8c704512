#pragma once

#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "perfkern/errors.hpp"
#include "perfkern/graph.hpp"

namespace perfkern {

// Outcome of checking a candidate kernel. Witnesses come from a scan in
// ascending vertex order, so the same input always yields the same witness.
struct KernelVerdict {
  enum class Kind { kernel, not_stable, not_absorbed };

  Kind kind = Kind::kernel;
  Vertex u = -1;  // not_stable: smaller endpoint; not_absorbed: the unabsorbed vertex
  Vertex v = -1;  // not_stable: larger endpoint

  static KernelVerdict kernel() { return {}; }
  static KernelVerdict not_stable(Vertex a, Vertex b) { return {Kind::not_stable, a, b}; }
  static KernelVerdict not_absorbed(Vertex a) { return {Kind::not_absorbed, a, -1}; }

  bool is_kernel() const noexcept { return kind == Kind::kernel; }
  explicit operator bool() const noexcept { return is_kernel(); }

  std::vector<Vertex> witness() const {
    switch (kind) {
      case Kind::kernel: return {};
      case Kind::not_stable: return {u, v};
      case Kind::not_absorbed: return {u};
    }
    return {};
  }

  std::string describe() const {
    std::ostringstream os;
    switch (kind) {
      case Kind::kernel: os << "kernel"; break;
      case Kind::not_stable: os << "not stable: " << u << " and " << v << " are adjacent"; break;
      case Kind::not_absorbed: os << "not absorbing: vertex " << u << " has no out-neighbour in the set"; break;
    }
    return os.str();
  }

  friend bool operator==(const KernelVerdict&, const KernelVerdict&) = default;
};

namespace detail {

// Shared scan: `member(v)` says whether v belongs to the ambient vertex set
// (all of D, or an induced part of it); `in_s` is a membership table for S.
template <class Member>
KernelVerdict scan_kernel(const SuperOrientation& d, std::span<const Vertex> s, const std::vector<char>& in_s,
                          Member member) {
  std::vector<Vertex> sorted(s.begin(), s.end());
  std::sort(sorted.begin(), sorted.end());
  for (Vertex u : sorted) {
    for (Vertex w : d.neighbors(u)) {
      if (w > u && in_s[w] && member(w)) return KernelVerdict::not_stable(u, w);
    }
  }
  for (Vertex u = 0; u < d.size(); ++u) {
    if (in_s[u] || !member(u)) continue;
    bool absorbed = false;
    for (Vertex w : d.out(u)) {
      if (in_s[w]) {
        absorbed = true;
        break;
      }
    }
    if (!absorbed) return KernelVerdict::not_absorbed(u);
  }
  return KernelVerdict::kernel();
}

}  // namespace detail

// Kernel iff S is stable in the underlying graph and every vertex outside S
// has an arc into S. Throws InvalidInput on out-of-range vertices.
inline KernelVerdict verify_kernel(const SuperOrientation& d, std::span<const Vertex> s) {
  std::vector<char> in_s(static_cast<std::size_t>(d.size()), 0);
  for (Vertex v : s) {
    detail::check_vertex(d.size(), v, "verify_kernel");
    in_s[v] = 1;
  }
  return detail::scan_kernel(d, s, in_s, [](Vertex) { return true; });
}

// verify_kernel on D[W] without materialising it; `in_w` marks W. S must be
// a subset of W. Vertex numbers in the verdict are those of D.
inline KernelVerdict verify_kernel_within(const SuperOrientation& d, const std::vector<char>& in_w,
                                          std::span<const Vertex> s) {
  std::vector<char> in_s(static_cast<std::size_t>(d.size()), 0);
  for (Vertex v : s) {
    detail::check_vertex(d.size(), v, "verify_kernel");
    if (!in_w[v]) throw InvalidInput("verify_kernel: vertex " + std::to_string(v) + " outside the subdigraph");
    in_s[v] = 1;
  }
  return detail::scan_kernel(d, s, in_s, [&](Vertex v) { return in_w[v] != 0; });
}

// All v in C absorbing every other vertex of C. C must be a clique of the
// underlying graph; otherwise a PreconditionError carries a non-adjacent pair.
inline VertexSet clique_sinks(const SuperOrientation& d, std::span<const Vertex> c) {
  for (Vertex v : c) detail::check_vertex(d.size(), v, "clique_sinks");
  auto [a, b] = first_non_adjacent_pair(d, c);
  if (a >= 0) {
    throw PreconditionError("not-a-clique",
                            "vertices " + std::to_string(a) + " and " + std::to_string(b) + " are not adjacent",
                            {a, b});
  }
  VertexSet sinks;
  for (Vertex v : c) {
    bool sink = true;
    for (Vertex u : c) {
      if (u != v && !d.has_arc(u, v)) {
        sink = false;
        break;
      }
    }
    if (sink) sinks.push_back(v);
  }
  std::sort(sinks.begin(), sinks.end());
  return sinks;
}

// Sinks of the whole digraph, which must be a clique.
inline VertexSet clique_sinks(const SuperOrientation& d) {
  VertexSet all(static_cast<std::size_t>(d.size()));
  for (Vertex v = 0; v < d.size(); ++v) all[v] = v;
  return clique_sinks(d, all);
}

}  // namespace perfkern
