#pragma once

#include <optional>
#include <vector>

#include "perfkern/decomposition.hpp"
#include "perfkern/errors.hpp"
#include "perfkern/geometry.hpp"
#include "perfkern/graph.hpp"
#include "perfkern/kernel.hpp"
#include "perfkern/structure.hpp"

namespace perfkern {

// Atom solver for chordal inputs: cutset-free chordal graphs are cliques, and
// any sink of a clique-acyclic super-orientation of a clique is a kernel.
struct SmallestSinkAtom {
  VertexSet operator()(const SuperOrientation& clique) const {
    if (clique.size() == 0) return {};
    auto sinks = clique_sinks(clique);
    if (sinks.empty()) {
      throw PreconditionError("not-clique-acyclic", "clique without a sink");
    }
    return {sinks.front()};
  }
};

inline void require_chordal_clique_acyclic(const SuperOrientation& d) {
  auto evidence = recognize_chordal(d.underlying());
  if (!evidence.chordal) {
    throw PreconditionError("not-chordal", "underlying graph has an induced cycle of length " +
                                               std::to_string(evidence.hole.size()), evidence.hole);
  }
  auto ca = check_clique_acyclic(d, &evidence);
  if (!ca.acyclic) {
    throw PreconditionError("not-clique-acyclic", "directed cycle of one-way arcs inside a clique", ca.cycle);
  }
}

// Kernel of a clique-acyclic super-orientation of a chordal graph. Both
// preconditions are checked up front.
inline VertexSet solve_chordal_super(const SuperOrientation& d, DecompositionStats* stats = nullptr) {
  require_chordal_clique_acyclic(d);
  return solve_by_decomposition(d, SmallestSinkAtom{}, stats);
}

namespace detail {

inline Vertex smallest_simplicial(const SuperOrientation& d) {
  for (Vertex v = 0; v < d.size(); ++v)
    if (is_clique(d, d.neighbors(v))) return v;
  return -1;
}

// Any orientation of a chordal graph has at most one kernel. With v
// simplicial, a kernel K of D restricts to the kernel of D[U u N+(v)] (U the
// non-neighbours of v), so only K' and K' u {v} need testing.
inline std::optional<VertexSet> chordal_orientation_rec(const SuperOrientation& d) {
  if (d.size() == 0) return VertexSet{};
  if (is_complete(d.underlying())) {
    auto sinks = clique_sinks(d);
    if (sinks.empty()) return std::nullopt;
    return VertexSet{sinks.front()};
  }
  const Vertex v = smallest_simplicial(d);
  if (v < 0) throw PreconditionError("not-chordal", "no simplicial vertex");
  std::vector<char> drop(static_cast<std::size_t>(d.size()), 0);
  drop[v] = 1;
  for (Vertex w : d.in(v))
    if (!d.has_arc(v, w)) drop[w] = 1;
  VertexSet keep;  // non-neighbours of v together with N+(v)
  for (Vertex w = 0; w < d.size(); ++w)
    if (!drop[w]) keep.push_back(w);
  auto sub = chordal_orientation_rec(d.induced(keep));
  if (!sub) return std::nullopt;
  VertexSet k = lift(*sub, keep);
  if (verify_kernel(d, k)) return k;
  k = set_union(k, VertexSet{v});
  if (verify_kernel(d, k)) return k;
  return std::nullopt;
}

}  // namespace detail

// Decides whether an orientation of a chordal graph (not necessarily
// clique-acyclic) has a kernel, and returns it if so.
inline std::optional<VertexSet> solve_chordal_orientation(const SuperOrientation& d) {
  if (!d.is_orientation()) {
    throw PreconditionError("not-an-orientation", "bidirected edges are not allowed here");
  }
  auto evidence = recognize_chordal(d.underlying());
  if (!evidence.chordal) {
    throw PreconditionError("not-chordal", "underlying graph has an induced cycle of length " +
                                               std::to_string(evidence.hole.size()), evidence.hole);
  }
  return detail::chordal_orientation_rec(d);
}

// Per-candidate record of the circular-arc search.
struct CircularArcTrace {
  Rational point;
  VertexSet crossing;  // C: arcs covering the point
  struct Attempt {
    VertexSet s;                      // {} or a single vertex of C
    VertexSet remainder;              // vertices of D_S
    std::optional<VertexSet> kernel;  // K_S, in ids of D
    bool accepted = false;
  };
  std::vector<Attempt> attempts;
};

// Decides kernel existence for an orientation of a circular-arc graph given
// its model. The reference point is the start of vertex 0's arc; for an
// interval model it lies left of every interval, so C is empty and this
// reduces to the chordal algorithm.
inline std::optional<VertexSet> solve_circular_arc_orientation(const SuperOrientation& d,
                                                               const GeometricRepresentation& rep,
                                                               CircularArcTrace* trace = nullptr) {
  if (!d.is_orientation()) {
    throw PreconditionError("not-an-orientation", "bidirected edges are not allowed here");
  }
  validate_representation(rep, d.underlying());
  CircularArcTrace local;
  CircularArcTrace& t = trace ? *trace : local;
  t = {};
  if (d.size() == 0) return VertexSet{};
  if (rep.kind == GeometricRepresentation::Kind::circular_arc) {
    t.point = rep.spans[0].start;
  } else {
    Rational lo = rep.spans[0].start;
    for (const auto& s : rep.spans) lo = std::min(lo, s.start);
    t.point = Rational(lo.num() - lo.den(), lo.den());
  }
  for (Vertex v = 0; v < d.size(); ++v)
    if (rep.covers(v, t.point)) t.crossing.push_back(v);

  std::vector<VertexSet> candidates{{}};
  for (Vertex c : t.crossing) candidates.push_back({c});
  for (auto& s : candidates) {
    CircularArcTrace::Attempt a;
    a.s = s;
    std::vector<char> out(static_cast<std::size_t>(d.size()), 0);
    for (Vertex c : t.crossing) out[c] = 1;
    for (Vertex x : s)
      for (Vertex w : d.neighbors(x)) out[w] = 1;
    for (Vertex v = 0; v < d.size(); ++v)
      if (!out[v]) a.remainder.push_back(v);
    if (auto ks = solve_chordal_orientation(d.induced(a.remainder))) {
      a.kernel = lift(*ks, a.remainder);
      VertexSet k = set_union(*a.kernel, s);
      if (verify_kernel(d, k)) {
        a.accepted = true;
        t.attempts.push_back(std::move(a));
        return k;
      }
    }
    t.attempts.push_back(std::move(a));
  }
  return std::nullopt;
}

}  // namespace perfkern
