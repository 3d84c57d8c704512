#pragma once

// Clique-acyclic orientations of claw-free perfect graphs. Pieces without a
// clique-cutset either have a kernel of at most 9 vertices or are
// augmentations of a line graph L of a bipartite multigraph. An augmentation
// replaces pairwise disjoint flat edges x_i y_i of L by cobipartite gadgets
// (X_i, Y_i, cross edges), X_i taking over the neighbours of x_i and Y_i
// those of y_i. Keeping only a few sink vertices of each gadget leaves an
// induced subgraph that is again a line graph, and its kernels are kernels
// of the whole digraph.
//
// Certificate file (JSON):
//
//   {"format": "perfkern-augmentation-1",
//    "host": {"left": [...], "right": [...], "edges": [[line, left, right], ...]},
//    "host_to_graph": [g0, g1, ...],      // -1 for the augmented lines
//    "gadgets": [{"x": 3, "y": 4, "X": [...], "Y": [...], "cross": [[a, b], ...]}]}

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "perfkern/decomposition.hpp"
#include "perfkern/errors.hpp"
#include "perfkern/graph.hpp"
#include "perfkern/kernel.hpp"
#include "perfkern/matching.hpp"
#include "perfkern/oracle.hpp"
#include "perfkern/structure.hpp"

namespace perfkern {

struct Gadget {
  Vertex x = -1;  // host lines of the flat edge
  Vertex y = -1;
  VertexSet big_x;  // X, Y as vertices of G
  VertexSet big_y;
  std::vector<Edge> cross;  // (a, b) with a in X, b in Y
  friend bool operator==(const Gadget&, const Gadget&) = default;
};

struct AugmentationCertificate {
  BipartiteRoot host;
  std::vector<Vertex> host_to_graph;
  std::vector<Gadget> gadgets;
};

namespace detail {

inline std::vector<VertexSet> line_images(const AugmentationCertificate& cert) {
  std::vector<VertexSet> img(cert.host_to_graph.size());
  for (std::size_t l = 0; l < img.size(); ++l)
    if (cert.host_to_graph[l] >= 0) img[l] = {cert.host_to_graph[l]};
  for (const auto& g : cert.gadgets) {
    img[g.x] = g.big_x;
    img[g.y] = g.big_y;
  }
  return img;
}

[[noreturn]] inline void bad_certificate(const std::string& msg, VertexSet witness = {}) {
  throw PreconditionError("certificate-mismatch", msg, std::move(witness));
}

}  // namespace detail

// Rebuilds G from the certificate.
inline UndirectedGraph replay(const AugmentationCertificate& cert, int n) {
  auto host = line_graph(cert.host);
  auto img = detail::line_images(cert);
  std::vector<Vertex> partner(cert.host_to_graph.size(), -1);
  for (const auto& g : cert.gadgets) {
    partner[g.x] = g.y;
    partner[g.y] = g.x;
  }
  std::vector<Edge> edges;
  for (auto [a, b] : host.edges()) {
    if (partner[a] == b) continue;  // the augmented edge itself
    for (Vertex u : img[a])
      for (Vertex v : img[b]) edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  for (const auto& g : cert.gadgets) {
    for (const auto* side : {&g.big_x, &g.big_y})
      for (std::size_t i = 0; i < side->size(); ++i)
        for (std::size_t j = i + 1; j < side->size(); ++j) edges.emplace_back((*side)[i], (*side)[j]);
    for (auto [a, b] : g.cross) edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return UndirectedGraph(n, edges);
}

// Checks the certificate against g; throws PreconditionError on mismatch.
template <AdjacencyGraph G>
void validate_certificate(const AugmentationCertificate& cert, const G& g) {
  try {
    check_root_shape(cert.host);
  } catch (const InvalidInput& e) {
    detail::bad_certificate(std::string("host root: ") + e.what());
  }
  const int lines = cert.host.line_count();
  if (static_cast<int>(cert.host_to_graph.size()) != lines) detail::bad_certificate("host_to_graph has the wrong length");
  auto host = line_graph(cert.host);
  std::vector<char> in_gadget(static_cast<std::size_t>(lines), 0);
  std::vector<int> owner(static_cast<std::size_t>(g.size()), 0);
  auto claim = [&](Vertex v) {
    if (v < 0 || v >= g.size()) detail::bad_certificate("vertex " + std::to_string(v) + " out of range");
    if (owner[v]++) detail::bad_certificate("vertex " + std::to_string(v) + " is used twice", {v});
  };
  for (const auto& gd : cert.gadgets) {
    if (gd.x < 0 || gd.y < 0 || gd.x >= lines || gd.y >= lines || gd.x == gd.y) {
      detail::bad_certificate("gadget lines out of range");
    }
    if (in_gadget[gd.x]++ || in_gadget[gd.y]++) detail::bad_certificate("augmented edges overlap");
    if (!host.adjacent(gd.x, gd.y)) detail::bad_certificate("augmented pair is not an edge of the host");
    if (!set_intersection(host.neighbors(gd.x), host.neighbors(gd.y)).empty()) {
      detail::bad_certificate("augmented edge " + std::to_string(gd.x) + "-" + std::to_string(gd.y) + " is not flat");
    }
    if (gd.big_x.empty() || gd.big_y.empty()) detail::bad_certificate("gadget with an empty side");
    if (gd.cross.empty()) detail::bad_certificate("gadget without cross edges");
    if (!std::is_sorted(gd.big_x.begin(), gd.big_x.end()) || !std::is_sorted(gd.big_y.begin(), gd.big_y.end())) {
      detail::bad_certificate("gadget sides must be sorted");
    }
    for (auto [a, b] : gd.cross) {
      if (!contains(gd.big_x, a) || !contains(gd.big_y, b)) detail::bad_certificate("cross edge outside X x Y", {a, b});
    }
    for (Vertex v : gd.big_x) claim(v);
    for (Vertex v : gd.big_y) claim(v);
  }
  for (Vertex l = 0; l < lines; ++l) {
    Vertex v = cert.host_to_graph[l];
    if (in_gadget[l] != (v < 0)) detail::bad_certificate("host line " + std::to_string(l) + " mapped inconsistently");
    if (v >= 0) claim(v);
  }
  for (Vertex v = 0; v < g.size(); ++v)
    if (!owner[v]) detail::bad_certificate("vertex " + std::to_string(v) + " is not covered", {v});
  auto rebuilt = replay(cert, g.size());
  for (Vertex u = 0; u < g.size(); ++u) {
    auto a = rebuilt.neighbors(u);
    auto b = g.neighbors(u);
    if (std::equal(a.begin(), a.end(), b.begin(), b.end())) continue;
    for (Vertex v = 0; v < g.size(); ++v)
      if (v != u && rebuilt.adjacent(u, v) != g.adjacent(u, v)) {
        detail::bad_certificate("replay differs from the graph at " + std::to_string(u) + "-" + std::to_string(v),
                                {std::min(u, v), std::max(u, v)});
      }
  }
}

// Certificate for the induced subgraph G[keep] (vertices renumbered by
// position in `keep`). Gadgets that lose a side or all cross edges turn into
// bundles of parallel root edges.
inline AugmentationCertificate restrict_certificate(const AugmentationCertificate& cert, std::span<const Vertex> keep) {
  int n = 0;
  for (Vertex v : keep) n = std::max(n, v + 1);
  for (Vertex v : cert.host_to_graph) n = std::max(n, v + 1);
  for (const auto& g : cert.gadgets)
    for (const auto* s : {&g.big_x, &g.big_y})
      if (!s->empty()) n = std::max(n, s->back() + 1);
  std::vector<Vertex> local(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) local[keep[i]] = static_cast<Vertex>(i);

  AugmentationCertificate out;
  std::vector<int> side(static_cast<std::size_t>(cert.host.vertex_count), 0);
  for (int b : cert.host.right) side[b] = 1;
  int vertex_count = cert.host.vertex_count;
  auto fresh = [&](int s) {
    side.push_back(s);
    return vertex_count++;
  };
  auto add_line = [&](Vertex g_vertex, int a, int b) {
    Vertex l = static_cast<Vertex>(out.host_to_graph.size());
    out.host.edges.push_back({l, a, b});
    out.host_to_graph.push_back(g_vertex);
    return l;
  };
  auto edge_of = cert.host.edge_of_line();
  std::vector<const Gadget*> gadget_of(cert.host_to_graph.size(), nullptr);
  for (const auto& g : cert.gadgets) gadget_of[g.x] = gadget_of[g.y] = &g;

  for (Vertex l = 0; l < cert.host.line_count(); ++l) {
    Vertex v = cert.host_to_graph[l];
    if (v < 0 || local[v] < 0) continue;
    const auto& e = cert.host.edges[edge_of[l]];
    add_line(local[v], e.left, e.right);
  }
  auto kept = [&](const VertexSet& s) {
    VertexSet r;
    for (Vertex v : s)
      if (local[v] >= 0) r.push_back(local[v]);
    return r;
  };
  for (const auto& g : cert.gadgets) {
    Gadget ng;
    ng.big_x = kept(g.big_x);
    ng.big_y = kept(g.big_y);
    for (auto [a, b] : g.cross)
      if (local[a] >= 0 && local[b] >= 0) ng.cross.emplace_back(local[a], local[b]);
    const auto& ex = cert.host.edges[edge_of[g.x]];
    const auto& ey = cert.host.edges[edge_of[g.y]];
    if (!ng.big_x.empty() && !ng.big_y.empty() && !ng.cross.empty()) {
      ng.x = add_line(-1, ex.left, ex.right);
      ng.y = add_line(-1, ey.left, ey.right);
      out.gadgets.push_back(std::move(ng));
      continue;
    }
    // X keeps x's root edge. Y keeps y's edge, with the shared endpoint
    // replaced by a fresh copy while X is still there; parallel x and y
    // leave Y on an isolated edge.
    for (Vertex v : ng.big_x) add_line(v, ex.left, ex.right);
    if (ng.big_y.empty()) continue;
    int yl = ey.left, yr = ey.right;
    if (ex.left == ey.left && ex.right == ey.right) {
      yl = fresh(0);
      yr = fresh(1);
    } else if (!ng.big_x.empty()) {
      (ex.left == ey.left ? yl : yr) = fresh(ex.left == ey.left ? 0 : 1);
    }
    for (Vertex v : ng.big_y) add_line(v, yl, yr);
  }
  out.host.vertex_count = vertex_count;
  for (int b = 0; b < vertex_count; ++b) (side[b] == 0 ? out.host.left : out.host.right).push_back(b);
  return out;
}

// What became of one gadget in the reduction.
struct GadgetReduction {
  enum class Shape { edge_removed, host, extra_vertex };

  Vertex s_x = -1;
  Vertex s_y = -1;
  bool swapped = false;  // X and Y exchanged so that (s_X, s_Y) is not an arc
  VertexSet u;
  std::optional<Vertex> s_u;
  Shape shape = Shape::host;
};

struct ReductionTrace {
  std::vector<GadgetReduction> gadgets;
  std::vector<VertexSet> z;    // Z_0 = V, ..., Z_h
  BipartiteRoot reduced_root;  // root of G[Z_h], lines are positions in Z_h
};

namespace detail {

inline Vertex unique_sink(const SuperOrientation& d, const VertexSet& clique, const char* what) {
  auto sinks = clique_sinks(d, clique);
  if (sinks.empty()) {
    throw PreconditionError("not-clique-acyclic", std::string(what) + " has no sink", one_way_cycle_in(d, clique));
  }
  if (sinks.size() != 1) throw PreconditionError("not-an-orientation", std::string(what) + " has several sinks", sinks);
  return sinks.front();
}

}  // namespace detail

// Applies the sink reduction to every gadget and builds the root of the
// reduced line graph. The certificate is replay-checked first.
inline ReductionTrace reduce_augmentations(const SuperOrientation& d, const AugmentationCertificate& cert) {
  if (!d.is_orientation()) throw PreconditionError("not-an-orientation", "bidirected edges are not allowed here");
  validate_certificate(cert, d.underlying());
  ReductionTrace t;
  VertexSet all(static_cast<std::size_t>(d.size()));
  for (Vertex v = 0; v < d.size(); ++v) all[v] = v;
  t.z.push_back(all);

  // Host root with lines relabelled by G vertices; gadget operations applied.
  struct Line {
    Vertex g;
    int a, b;
  };
  std::vector<Line> root_lines;
  auto edge_of = cert.host.edge_of_line();
  std::vector<int> side(static_cast<std::size_t>(cert.host.vertex_count), 0);
  for (int b : cert.host.right) side[b] = 1;
  int vertex_count = cert.host.vertex_count;
  auto fresh = [&](int s) {
    side.push_back(s);
    return vertex_count++;
  };
  for (Vertex l = 0; l < cert.host.line_count(); ++l) {
    if (cert.host_to_graph[l] < 0) continue;
    const auto& e = cert.host.edges[edge_of[l]];
    root_lines.push_back({cert.host_to_graph[l], e.left, e.right});
  }

  for (const auto& gd : cert.gadgets) {
    GadgetReduction r;
    VertexSet bx = gd.big_x, by = gd.big_y;
    Vertex lx = gd.x, ly = gd.y;
    r.s_x = detail::unique_sink(d, bx, "X");
    r.s_y = detail::unique_sink(d, by, "Y");
    if (d.has_arc(r.s_x, r.s_y)) {
      r.swapped = true;
      std::swap(bx, by);
      std::swap(lx, ly);
      std::swap(r.s_x, r.s_y);
    }
    r.u = set_difference(by, d.neighbors(r.s_x));
    if (!r.u.empty()) r.s_u = detail::unique_sink(d, r.u, "U");

    VertexSet keep = make_set({r.s_x, r.s_y});
    if (r.s_u) keep = set_union(keep, VertexSet{*r.s_u});
    t.z.push_back(set_union(set_difference(t.z.back(), set_union(bx, by)), keep));

    const auto& ex = cert.host.edges[edge_of[lx]];
    const auto& ey = cert.host.edges[edge_of[ly]];
    Line x_line{r.s_x, ex.left, ex.right};
    Line y_line{r.s_y, ey.left, ey.right};
    const bool parallel = ex.left == ey.left && ex.right == ey.right;
    const bool adjacent = d.adjacent(r.s_x, r.s_y);
    if (!adjacent) {
      r.shape = GadgetReduction::Shape::edge_removed;
      // Split the shared root vertex b2 so that x and y no longer meet.
      if (parallel) {
        y_line.a = fresh(0);
        y_line.b = fresh(1);
      } else if (ex.left == ey.left) {
        y_line.a = fresh(0);
      } else {
        y_line.b = fresh(1);
      }
    } else if (r.s_u && *r.s_u != r.s_y) {
      r.shape = GadgetReduction::Shape::extra_vertex;
      // New pendant root edge at y's other endpoint b3.
      if (parallel) {
        // x and y share both endpoints; move y so that it has a private end.
        y_line.b = fresh(1);
        root_lines.push_back({*r.s_u, fresh(0), y_line.b});
      } else if (ex.left == ey.left) {
        root_lines.push_back({*r.s_u, fresh(0), ey.right});
      } else {
        root_lines.push_back({*r.s_u, ey.left, fresh(1)});
      }
    } else {
      r.shape = GadgetReduction::Shape::host;
    }
    root_lines.push_back(x_line);
    root_lines.push_back(y_line);
    t.gadgets.push_back(std::move(r));
  }

  const VertexSet& zh = t.z.back();
  BipartiteRoot& root = t.reduced_root;
  root.vertex_count = vertex_count;
  for (int b = 0; b < vertex_count; ++b) (side[b] == 0 ? root.left : root.right).push_back(b);
  for (const auto& l : root_lines) {
    auto it = std::lower_bound(zh.begin(), zh.end(), l.g);
    if (it == zh.end() || *it != l.g) throw InternalError("reduced root names a vertex outside Z");
    root.edges.push_back({static_cast<Vertex>(it - zh.begin()), l.a, l.b});
  }
  std::sort(root.edges.begin(), root.edges.end(), [](const auto& a, const auto& b) { return a.line < b.line; });
  try {
    validate_root(root, d.underlying().induced(zh));
  } catch (const PreconditionError& e) {
    throw InternalError(std::string("reduced root does not match G[Z]: ") + e.what());
  }
  return t;
}

// Kernel of a clique-acyclic orientation of an augmented line graph.
inline VertexSet solve_augmented_line_graph(const SuperOrientation& d, const AugmentationCertificate& cert,
                                            ReductionTrace* trace = nullptr) {
  ReductionTrace t = reduce_augmentations(d, cert);
  const VertexSet& zh = t.z.back();
  VertexSet k = lift(solve_line_bipartite(d.induced(zh), t.reduced_root), zh);
  auto verdict = verify_kernel(d, k);
  if (!verdict) throw InternalError("kernel of the reduced digraph does not lift: " + verdict.describe());
  if (trace) *trace = std::move(t);
  return k;
}

// Looks up a certificate for a piece, given the piece and the ids of its
// vertices in the input digraph.
using CertificateProvider =
    std::function<std::optional<AugmentationCertificate>(const SuperOrientation&, std::span<const Vertex>)>;

// Provider backed by one certificate for the whole input.
inline CertificateProvider restrict_from(AugmentationCertificate global) {
  return [cert = std::move(global)](const SuperOrientation&, std::span<const Vertex> ids) {
    return std::optional<AugmentationCertificate>(restrict_certificate(cert, ids));
  };
}

struct ClawfreeOptions {
  int stability_bound = 9;
  // In a claw-free graph every maximal stable set has at least alpha/2
  // vertices, so a greedy stable set larger than twice the bound rules out
  // small kernels and the exhaustive search can be skipped.
  bool skip_hopeless_search = true;
  // Try to read the piece as a plain line graph when no certificate is given.
  bool reconstruct_roots = true;
};

struct ClawfreeStats {
  int brute_force = 0;
  int augmented = 0;
  int skipped_searches = 0;
};

namespace detail {

inline int greedy_stable_size(const SuperOrientation& d) {
  std::vector<char> blocked(static_cast<std::size_t>(d.size()), 0);
  int count = 0;
  for (Vertex v = 0; v < d.size(); ++v) {
    if (blocked[v]) continue;
    ++count;
    for (Vertex w : d.neighbors(v)) blocked[w] = 1;
  }
  return count;
}

}  // namespace detail

// Atom solver: bounded exhaustive search, then the augmentation route.
struct ClawfreeAtom {
  CertificateProvider provider;
  ClawfreeOptions options;
  ClawfreeStats* stats = nullptr;

  VertexSet operator()(const SuperOrientation& d, std::span<const Vertex> ids) const {
    ClawfreeStats scratch;
    ClawfreeStats& st = stats ? *stats : scratch;
    if (options.skip_hopeless_search && detail::greedy_stable_size(d) > 2 * options.stability_bound) {
      ++st.skipped_searches;
    } else if (auto k = find_kernel_bounded_stability(d, options.stability_bound)) {
      ++st.brute_force;
      return *k;
    }
    std::optional<AugmentationCertificate> cert;
    if (provider) cert = provider(d, ids);
    if (!cert && options.reconstruct_roots) {
      if (auto root = reconstruct_bipartite_root(d.underlying())) {
        cert = AugmentationCertificate{*root, {}, {}};
        cert->host_to_graph.resize(static_cast<std::size_t>(d.size()));
        for (Vertex v = 0; v < d.size(); ++v) cert->host_to_graph[v] = v;
      }
    }
    if (!cert) {
      throw PreconditionError("certificate-required",
                              "a piece with large stability number needs an augmentation certificate",
                              VertexSet(ids.begin(), ids.end()));
    }
    ++st.augmented;
    return solve_augmented_line_graph(d, *cert);
  }
};

inline void require_clawfree_orientation(const SuperOrientation& d) {
  if (!d.is_orientation()) throw PreconditionError("not-an-orientation", "bidirected edges are not allowed here");
  auto claw = check_claw_free(d.underlying());
  if (!claw.claw_free) {
    VertexSet w{claw.center};
    w.insert(w.end(), claw.leaves.begin(), claw.leaves.end());
    throw PreconditionError("not-claw-free", "induced claw centred at " + std::to_string(claw.center), w);
  }
  if (auto tri = find_directed_triangle(d)) {
    throw PreconditionError("not-clique-acyclic", "directed triangle", VertexSet(tri->begin(), tri->end()));
  }
}

// Kernel of a clique-acyclic orientation of a claw-free perfect graph.
// Perfection is trusted; the result is verified regardless.
inline VertexSet solve_clawfree_orientation(const SuperOrientation& d, CertificateProvider provider = {},
                                            ClawfreeOptions options = {}, DecompositionStats* stats = nullptr,
                                            ClawfreeStats* cstats = nullptr) {
  require_clawfree_orientation(d);
  return solve_by_decomposition(d, ClawfreeAtom{std::move(provider), options, cstats}, stats);
}

namespace io {

inline AugmentationCertificate certificate_from_json(const nlohmann::json& j) {
  try {
    AugmentationCertificate c;
    const auto& h = j.at("host");
    c.host.left = h.at("left").get<std::vector<int>>();
    c.host.right = h.at("right").get<std::vector<int>>();
    c.host.vertex_count = static_cast<int>(c.host.left.size() + c.host.right.size());
    for (const auto& e : h.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw FormatError("host edge must be [line, left, right]");
      c.host.edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>()});
    }
    std::sort(c.host.edges.begin(), c.host.edges.end(), [](const auto& a, const auto& b) { return a.line < b.line; });
    c.host_to_graph = j.at("host_to_graph").get<std::vector<int>>();
    for (const auto& g : j.at("gadgets")) {
      Gadget gd;
      gd.x = g.at("x").get<int>();
      gd.y = g.at("y").get<int>();
      gd.big_x = make_set(g.at("X").get<std::vector<int>>());
      gd.big_y = make_set(g.at("Y").get<std::vector<int>>());
      for (const auto& e : g.at("cross")) {
        if (!e.is_array() || e.size() != 2) throw FormatError("cross edge must be [a, b]");
        gd.cross.emplace_back(e[0].get<int>(), e[1].get<int>());
      }
      c.gadgets.push_back(std::move(gd));
    }
    try {
      check_root_shape(c.host);
    } catch (const InvalidInput& e) {
      throw FormatError(std::string("host root: ") + e.what());
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("certificate: ") + e.what());
  }
}

inline nlohmann::json certificate_to_json(const AugmentationCertificate& c) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : c.host.edges) edges.push_back({e.line, e.left, e.right});
  nlohmann::json gadgets = nlohmann::json::array();
  for (const auto& g : c.gadgets) {
    nlohmann::json cross = nlohmann::json::array();
    for (auto [a, b] : g.cross) cross.push_back({a, b});
    gadgets.push_back({{"x", g.x}, {"y", g.y}, {"X", g.big_x}, {"Y", g.big_y}, {"cross", cross}});
  }
  return {{"format", "perfkern-augmentation-1"},
          {"host", {{"left", c.host.left}, {"right", c.host.right}, {"edges", edges}}},
          {"host_to_graph", c.host_to_graph},
          {"gadgets", gadgets}};
}

inline AugmentationCertificate read_certificate(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("certificate: ") + e.what());
  }
  return certificate_from_json(j);
}

inline AugmentationCertificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return read_certificate(in);
}

inline void write_certificate(std::ostream& out, const AugmentationCertificate& c) {
  out << certificate_to_json(c).dump(1) << '\n';
}

}  // namespace io

}  // namespace perfkern
