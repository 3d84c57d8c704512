#pragma once

// Seeded instance generators. Everything is drawn from one SplitMix64
// stream, so (class, n, density, seed) fixes the output bytes. Bounded
// integers use rejection sampling on the top of the 64-bit range; uniform
// reals use the top 53 bits.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "perfkern/clawfree.hpp"
#include "perfkern/errors.hpp"
#include "perfkern/geometry.hpp"
#include "perfkern/graph.hpp"
#include "perfkern/matching.hpp"

namespace perfkern {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return x % bound;
  }

  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return uniform() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::uint64_t state_;
};

enum class GenClass { chordal_super, chordal_orientation, circular_arc, line_bipartite, augmented_line, de, clawfree_glued };

inline const char* to_string(GenClass c) {
  switch (c) {
    case GenClass::chordal_super: return "chordal-super";
    case GenClass::chordal_orientation: return "chordal-orientation";
    case GenClass::circular_arc: return "circular-arc";
    case GenClass::line_bipartite: return "line-bipartite";
    case GenClass::augmented_line: return "augmented-line";
    case GenClass::de: return "de";
    case GenClass::clawfree_glued: return "clawfree-glued";
  }
  return "?";
}

inline GenClass parse_gen_class(std::string_view s) {
  for (auto c : {GenClass::chordal_super, GenClass::chordal_orientation, GenClass::circular_arc,
                 GenClass::line_bipartite, GenClass::augmented_line, GenClass::de, GenClass::clawfree_glued})
    if (s == to_string(c)) return c;
  throw InvalidInput("unknown generator class '" + std::string(s) + "'");
}

// A directed tree with directed paths, as produced for DE instances.
struct PathTree {
  int nodes = 0;
  std::vector<Arc> arcs;                // tree arcs, index = arc id
  std::vector<std::vector<int>> paths;  // per instance vertex, arc ids in order
};

struct GeneratedInstance {
  GenClass cls{};
  SuperOrientation digraph;
  std::vector<std::string> header;
  std::optional<GeometricRepresentation> representation;
  std::optional<BipartiteRoot> root;
  std::optional<AugmentationCertificate> certificate;
  std::optional<PathTree> tree;
};

namespace gen_detail {

inline std::vector<Vertex> permutation(SplitMix64& rng, int n) {
  std::vector<Vertex> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[i] = i;
  rng.shuffle(p);
  return p;
}

class ArcSet {
 public:
  explicit ArcSet(int n) : n_(n) {}
  bool has(Vertex u, Vertex v) const { return set_.count(key(u, v)) != 0; }
  void add(Vertex u, Vertex v) { set_.insert(key(u, v)); }
  void erase(Vertex u, Vertex v) { set_.erase(key(u, v)); }
  std::vector<Arc> arcs() const {
    std::vector<Arc> out;
    out.reserve(set_.size());
    for (auto k : set_) out.emplace_back(static_cast<Vertex>(k / n_), static_cast<Vertex>(k % n_));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::int64_t key(Vertex u, Vertex v) const { return static_cast<std::int64_t>(u) * n_ + v; }
  int n_;
  std::unordered_set<std::int64_t> set_;
};

// Orientation without directed triangles: arcs follow a random linear order,
// then each arc is reversed (in random order) with probability 1/2 unless
// that would close a directed triangle.
inline ArcSet acyclic_cliques_orientation(SplitMix64& rng, const UndirectedGraph& g, bool flips) {
  auto pos = permutation(rng, g.size());
  ArcSet arcs(g.size());
  auto edges = g.edges();
  for (auto [u, v] : edges) {
    if (pos[u] < pos[v]) arcs.add(u, v);
    else arcs.add(v, u);
  }
  if (!flips) return arcs;
  rng.shuffle(edges);
  for (auto [a, b] : edges) {
    if (!rng.chance(0.5)) continue;
    Vertex u = a, v = b;
    if (!arcs.has(u, v)) std::swap(u, v);
    // Reversing u->v closes v->u->w->v for a common neighbour w with u->w, w->v.
    bool closes = false;
    for (Vertex w : set_intersection(g.neighbors(u), g.neighbors(v))) {
      if (arcs.has(u, w) && arcs.has(w, v)) {
        closes = true;
        break;
      }
    }
    if (closes) continue;
    arcs.erase(u, v);
    arcs.add(v, u);
  }
  return arcs;
}

inline SuperOrientation bidirect_some(SplitMix64& rng, const UndirectedGraph& g, ArcSet arcs, double p) {
  for (auto [u, v] : g.edges())
    if (rng.chance(p)) {
      arcs.add(u, v);
      arcs.add(v, u);
    }
  return SuperOrientation(g.size(), arcs.arcs());
}

inline SuperOrientation random_orientation(SplitMix64& rng, const UndirectedGraph& g) {
  std::vector<Arc> arcs;
  for (auto [u, v] : g.edges()) {
    if (rng.chance(0.5)) arcs.emplace_back(u, v);
    else arcs.emplace_back(v, u);
  }
  return SuperOrientation(g.size(), arcs);
}

// Chordal graph by insertion: vertex i attaches to a random earlier u and a
// random part of the clique u attached to. Reverse insertion order is a
// perfect elimination ordering. Labels are shuffled at the end.
inline UndirectedGraph random_chordal(SplitMix64& rng, int n, double density) {
  std::vector<VertexSet> attach(static_cast<std::size_t>(n));
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) {
    Vertex u = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(i)));
    VertexSet q{u};
    for (Vertex w : attach[u])
      if (rng.chance(density)) q.push_back(w);
    std::sort(q.begin(), q.end());
    for (Vertex w : q) edges.emplace_back(w, i);
    attach[i] = std::move(q);
  }
  auto label = permutation(rng, n);
  for (auto& [a, b] : edges) {
    a = label[a];
    b = label[b];
    if (a > b) std::swap(a, b);
  }
  return UndirectedGraph(n, edges);
}

// Root builder shared by the line-graph classes: lines are added one at a
// time; root vertex sides are fixed when created.
struct RootBuilder {
  std::vector<int> side;
  std::vector<std::pair<int, int>> edges;  // (left, right), index = line id

  int vertex(int s) {
    side.push_back(s);
    return static_cast<int>(side.size()) - 1;
  }
  int line(int a, int b) {
    if (side[a] == 1) std::swap(a, b);
    edges.emplace_back(a, b);
    return static_cast<int>(edges.size()) - 1;
  }
  BipartiteRoot finish() const {
    BipartiteRoot r;
    r.vertex_count = static_cast<int>(side.size());
    for (int b = 0; b < r.vertex_count; ++b) (side[b] == 0 ? r.left : r.right).push_back(b);
    for (std::size_t i = 0; i < edges.size(); ++i) r.edges.push_back({static_cast<Vertex>(i), edges[i].first, edges[i].second});
    return r;
  }
};

inline int side_count(int lines, double density) {
  double scale = 1.6 - density;
  return std::max(1, static_cast<int>(std::sqrt(static_cast<double>(lines)) * scale + 0.5));
}

// Random connected bipartite multigraph with `lines` edges on fresh root
// vertices: a random spanning tree first, then uniform extra edges. Returns
// the new root vertex ids of each side.
inline void random_multigraph(SplitMix64& rng, RootBuilder& rb, int lines, double density, std::vector<int>& lefts,
                              std::vector<int>& rights) {
  if (lines <= 0) return;
  int a = side_count(lines, density), b = side_count(lines, density);
  while (a + b - 1 > lines) (a >= b ? a : b)--;
  for (int i = 0; i < a; ++i) lefts.push_back(rb.vertex(0));
  for (int i = 0; i < b; ++i) rights.push_back(rb.vertex(1));
  std::vector<int> order(lefts.begin() + 1, lefts.end());
  order.insert(order.end(), rights.begin() + 1, rights.end());
  rng.shuffle(order);
  std::vector<int> seen_left{lefts[0]}, seen_right{rights[0]};
  rb.line(lefts[0], rights[0]);
  for (int v : order) {
    auto& other = rb.side[v] == 0 ? seen_right : seen_left;
    rb.line(v, other[rng.below(other.size())]);
    (rb.side[v] == 0 ? seen_left : seen_right).push_back(v);
  }
  for (int i = a + b - 1; i < lines; ++i) rb.line(lefts[rng.below(lefts.size())], rights[rng.below(rights.size())]);
}

// Super-orientation of L(root) from random weak orders at the root vertices.
// Parallel lines are compared by their left order at both ends, so the two
// ends agree on them.
inline SuperOrientation weak_order_orientation(SplitMix64& rng, const BipartiteRoot& root) {
  const int n = root.line_count();
  auto inc = root.incidence();
  auto edge_of = root.edge_of_line();
  std::vector<int> left_rank(static_cast<std::size_t>(n)), right_rank(static_cast<std::size_t>(n));
  for (int b : root.left) {
    int levels = std::max<int>(1, static_cast<int>(inc[b].size()));
    for (Vertex l : inc[b]) left_rank[l] = rng.range(0, levels - 1);
  }
  for (int b : root.right) {
    int levels = std::max<int>(1, static_cast<int>(inc[b].size()));
    std::vector<int> bundle_rank(static_cast<std::size_t>(root.vertex_count), -1);
    for (Vertex l : inc[b]) {
      int a = root.edges[edge_of[l]].left;
      if (bundle_rank[a] < 0) bundle_rank[a] = rng.range(0, levels - 1);
      right_rank[l] = bundle_rank[a];
    }
  }
  std::vector<Arc> arcs;
  for (std::size_t b = 0; b < inc.size(); ++b) {
    const bool is_left = std::binary_search(root.left.begin(), root.left.end(), static_cast<int>(b));
    for (std::size_t i = 0; i < inc[b].size(); ++i)
      for (std::size_t j = i + 1; j < inc[b].size(); ++j) {
        Vertex e = inc[b][i], f = inc[b][j];
        const auto& ee = root.edges[edge_of[e]];
        const auto& ef = root.edges[edge_of[f]];
        if (!is_left && ee.left == ef.left) continue;  // parallel: decided at the left end
        const int re = is_left ? left_rank[e] : right_rank[e];
        const int rf = is_left ? left_rank[f] : right_rank[f];
        if (re < rf) arcs.emplace_back(f, e);
        else if (rf < re) arcs.emplace_back(e, f);
        else {
          arcs.emplace_back(e, f);
          arcs.emplace_back(f, e);
        }
      }
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  return SuperOrientation(n, arcs);
}

// One augmented host: `target` graph vertices split into plain lines and
// gadgets. Gadget vertex ids and plain-line ids are drawn from `ids`.
struct AugmentedPart {
  std::vector<int> plain_lines;  // host line ids of plain lines
  std::vector<int> anchors;      // root vertices usable for gluing
};

inline AugmentedPart random_augmented(SplitMix64& rng, RootBuilder& rb, AugmentationCertificate& cert,
                                      std::vector<Vertex>& host_to_graph, std::vector<Vertex>& ids, int target,
                                      double density) {
  AugmentedPart part;
  // Gadget sizes first, then plain lines fill the rest.
  std::vector<std::pair<int, int>> sizes;
  int used = 0;
  int want = target >= 4 ? 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(target / 4 + 1))) : 0;
  for (int i = 0; i < want && target - used >= 2; ++i) {
    int sx = rng.range(1, 3), sy = rng.range(1, 3);
    while (sx + sy > target - used) (sx > sy ? sx : sy)--;
    sizes.emplace_back(sx, sy);
    used += sx + sy;
  }
  int plain = target - used;
  std::vector<int> lefts, rights;
  random_multigraph(rng, rb, plain, density, lefts, rights);
  if (lefts.empty()) lefts.push_back(rb.vertex(0));
  if (rights.empty()) rights.push_back(rb.vertex(1));
  for (int i = 0; i < plain; ++i) part.plain_lines.push_back(static_cast<int>(host_to_graph.size()) + i);
  for (int i = 0; i < plain; ++i) host_to_graph.push_back(-2);  // filled below
  // Each gadget needs a root vertex b2 of degree two between distinct b1, b3.
  // Without plain lines all gadgets hang off the same two pool vertices, so
  // the part stays connected.
  const bool all_right = rng.chance(0.5);
  for (auto [sx, sy] : sizes) {
    const bool b2_right = plain == 0 ? all_right : rng.chance(0.5);
    auto& pool = b2_right ? lefts : rights;
    if (pool.size() < 2) pool.push_back(rb.vertex(b2_right ? 0 : 1));
    int i1 = static_cast<int>(rng.below(pool.size()));
    int i3 = static_cast<int>(rng.below(pool.size() - 1));
    if (i3 >= i1) ++i3;
    int b2 = rb.vertex(b2_right ? 1 : 0);
    Gadget g;
    g.x = rb.line(pool[i1], b2);
    g.y = rb.line(pool[i3], b2);
    host_to_graph.push_back(-1);
    host_to_graph.push_back(-1);
    for (int k = 0; k < sx; ++k) {
      g.big_x.push_back(ids.back());
      ids.pop_back();
    }
    for (int k = 0; k < sy; ++k) {
      g.big_y.push_back(ids.back());
      ids.pop_back();
    }
    std::sort(g.big_x.begin(), g.big_x.end());
    std::sort(g.big_y.begin(), g.big_y.end());
    for (Vertex a : g.big_x)
      for (Vertex b : g.big_y)
        if (rng.chance(density)) g.cross.emplace_back(a, b);
    if (g.cross.empty()) g.cross.emplace_back(g.big_x[rng.below(g.big_x.size())], g.big_y[rng.below(g.big_y.size())]);
    cert.gadgets.push_back(std::move(g));
  }
  for (int l : part.plain_lines) {
    host_to_graph[l] = ids.back();
    ids.pop_back();
  }
  std::vector<char> carries_line(rb.side.size(), 0);
  for (auto [l, r] : rb.edges) carries_line[l] = carries_line[r] = 1;
  for (const auto* pool : {&lefts, &rights})
    for (int v : *pool)
      if (carries_line[v]) part.anchors.push_back(v);
  return part;
}

inline AugmentationCertificate glued_certificate(SplitMix64& rng, int n, double density) {
  AugmentationCertificate cert;
  RootBuilder rb;
  auto ids = permutation(rng, n);
  // Leave two lines for the parts when possible, so the bundle separates.
  const int bundle = std::max(1, std::min(rng.range(1, 3), n - 2));
  const int rest = n - bundle;
  const int n1 = rest >= 2 ? rng.range(1, rest - 1) : rest;
  const int n2 = n - bundle - n1;
  auto p1 = random_augmented(rng, rb, cert, cert.host_to_graph, ids, n1, density);
  const int second = static_cast<int>(rb.side.size());
  auto p2 = random_augmented(rng, rb, cert, cert.host_to_graph, ids, n2, density);
  // Glue: a bundle of parallel lines between an anchor of each part. The
  // second part is mirrored if both anchors landed on the same side.
  int a = p1.anchors.empty() ? rb.vertex(0) : p1.anchors[rng.below(p1.anchors.size())];
  int b = p2.anchors.empty() ? rb.vertex(1 - rb.side[a]) : p2.anchors[rng.below(p2.anchors.size())];
  if (rb.side[a] == rb.side[b]) {
    for (int v = second; v < static_cast<int>(rb.side.size()); ++v) rb.side[v] = 1 - rb.side[v];
    for (std::size_t i = 0; i < rb.edges.size(); ++i) {
      auto& [l, r] = rb.edges[i];
      if (l >= second) std::swap(l, r);
    }
  }
  for (int i = 0; i < bundle; ++i) {
    rb.line(a, b);
    cert.host_to_graph.push_back(ids.back());
    ids.pop_back();
  }
  cert.host = rb.finish();
  return cert;
}

inline AugmentationCertificate augmented_certificate(SplitMix64& rng, int n, double density) {
  AugmentationCertificate cert;
  RootBuilder rb;
  auto ids = permutation(rng, n);
  random_augmented(rng, rb, cert, cert.host_to_graph, ids, n, density);
  cert.host = rb.finish();
  return cert;
}

// Random directed tree; each vertex is a directed path of at least one arc
// found by a random walk along out-arcs.
inline PathTree random_path_tree(SplitMix64& rng, int n, double density) {
  PathTree t;
  t.nodes = std::max(2, static_cast<int>(n * (1.2 - density)) + 2);
  for (int i = 1; i < t.nodes; ++i) {
    int p = static_cast<int>(rng.below(static_cast<std::uint64_t>(i)));
    if (rng.chance(0.5)) t.arcs.emplace_back(p, i);
    else t.arcs.emplace_back(i, p);
  }
  std::vector<std::vector<int>> out(static_cast<std::size_t>(t.nodes));
  for (std::size_t i = 0; i < t.arcs.size(); ++i) out[t.arcs[i].first].push_back(static_cast<int>(i));
  std::vector<int> starts;
  for (int v = 0; v < t.nodes; ++v)
    if (!out[v].empty()) starts.push_back(v);
  const int max_len = std::max(1, static_cast<int>(2 + density * 6));
  for (int v = 0; v < n; ++v) {
    int node = starts[rng.below(starts.size())];
    int len = rng.range(1, max_len);
    std::vector<int> path;
    while (static_cast<int>(path.size()) < len && !out[node].empty()) {
      int arc = out[node][rng.below(out[node].size())];
      path.push_back(arc);
      node = t.arcs[arc].second;
    }
    t.paths.push_back(std::move(path));
  }
  return t;
}

inline UndirectedGraph path_intersection_graph(const PathTree& t) {
  std::vector<std::vector<Vertex>> on_arc(t.arcs.size());
  for (std::size_t v = 0; v < t.paths.size(); ++v)
    for (int a : t.paths[v]) on_arc[a].push_back(static_cast<Vertex>(v));
  std::vector<Edge> edges;
  for (const auto& vs : on_arc)
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) edges.emplace_back(vs[i], vs[j]);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return UndirectedGraph(static_cast<int>(t.paths.size()), edges);
}

inline GeometricRepresentation random_arcs(SplitMix64& rng, int n, double density) {
  GeometricRepresentation rep;
  rep.kind = GeometricRepresentation::Kind::circular_arc;
  const int circle = 4 * n;  // in halves: circle length 2n
  const int longest = std::max(1, static_cast<int>(density * 2 * n));
  for (int v = 0; v < n; ++v) {
    int s = static_cast<int>(rng.below(static_cast<std::uint64_t>(circle)));
    int len = rng.range(1, longest);
    int e = (s + len) % circle;
    rep.spans.push_back({Rational(s, 2), Rational(e, 2)});
  }
  return rep;
}

}  // namespace gen_detail

// Orientation of g with every edge directed by a fair coin.
inline SuperOrientation random_orientation(const UndirectedGraph& g, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return gen_detail::random_orientation(rng, g);
}

inline GeneratedInstance generate(GenClass cls, int n, double density, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("n must be at least 1");
  if (!(density >= 0.0 && density <= 1.0)) throw InvalidInput("density must lie in [0, 1]");
  SplitMix64 rng(seed ^ (static_cast<std::uint64_t>(cls) + 1) * 0xd1b54a32d192ed03ULL);
  GeneratedInstance out;
  out.cls = cls;
  {
    std::ostringstream h;
    h << "generator splitmix64 class=" << to_string(cls) << " n=" << n << " density=" << density << " seed=" << seed;
    out.header.push_back(h.str());
  }
  constexpr double kBidirect = 0.3;
  constexpr int kFlipLimit = 200;
  switch (cls) {
    case GenClass::chordal_super: {
      auto g = gen_detail::random_chordal(rng, n, density);
      auto arcs = gen_detail::acyclic_cliques_orientation(rng, g, n <= kFlipLimit);
      out.digraph = gen_detail::bidirect_some(rng, g, std::move(arcs), kBidirect);
      break;
    }
    case GenClass::chordal_orientation: {
      auto g = gen_detail::random_chordal(rng, n, density);
      out.digraph = gen_detail::random_orientation(rng, g);
      break;
    }
    case GenClass::circular_arc: {
      auto rep = gen_detail::random_arcs(rng, n, density);
      out.digraph = gen_detail::random_orientation(rng, rep.intersection_graph());
      out.representation = std::move(rep);
      break;
    }
    case GenClass::line_bipartite: {
      gen_detail::RootBuilder rb;
      std::vector<int> l, r;
      gen_detail::random_multigraph(rng, rb, n, density, l, r);
      auto root = rb.finish();
      out.digraph = gen_detail::weak_order_orientation(rng, root);
      out.root = std::move(root);
      break;
    }
    case GenClass::augmented_line:
    case GenClass::clawfree_glued: {
      auto cert = cls == GenClass::augmented_line ? gen_detail::augmented_certificate(rng, n, density)
                                                  : gen_detail::glued_certificate(rng, n, density);
      auto g = replay(cert, n);
      auto arcs = gen_detail::acyclic_cliques_orientation(rng, g, true);
      out.digraph = SuperOrientation(n, arcs.arcs());
      out.certificate = std::move(cert);
      break;
    }
    case GenClass::de: {
      auto tree = gen_detail::random_path_tree(rng, n, density);
      auto g = gen_detail::path_intersection_graph(tree);
      auto arcs = gen_detail::acyclic_cliques_orientation(rng, g, false);
      out.digraph = gen_detail::bidirect_some(rng, g, std::move(arcs), kBidirect);
      out.tree = std::move(tree);
      break;
    }
  }
  return out;
}

namespace io {

// Tree file: `node-count <k>`, then `arc <id> <u> <v>` lines, then
// `path <vertex> <arc ids...>` lines.
inline void write_path_tree(std::ostream& out, const PathTree& t) {
  out << "node-count " << t.nodes << '\n';
  for (std::size_t i = 0; i < t.arcs.size(); ++i) out << "arc " << i << ' ' << t.arcs[i].first << ' ' << t.arcs[i].second << '\n';
  for (std::size_t v = 0; v < t.paths.size(); ++v) {
    out << "path " << v;
    for (int a : t.paths[v]) out << ' ' << a;
    out << '\n';
  }
}

}  // namespace io

}  // namespace perfkern
