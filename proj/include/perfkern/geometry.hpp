#pragma once

// Interval and circular-arc models. Coordinates are exact rationals; arcs
// and intervals are closed, so touching endpoints intersect. A circular arc
// runs from `start` to `end` in increasing coordinate and wraps around when
// start > end. Representation file lines:
//
//   interval <v> <start> <end>
//   arc <v> <start> <end>
//
// with coordinates written as integers or `p/q`. All lines use one kind.

#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "perfkern/errors.hpp"
#include "perfkern/graph.hpp"
#include "perfkern/io.hpp"

namespace perfkern {

class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den == 0) throw InvalidInput("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    auto g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __extension__ using wide = __int128;
    wide lhs = static_cast<wide>(a.num_) * b.den_;
    wide rhs = static_cast<wide>(b.num_) * a.den_;
    return lhs < rhs ? std::strong_ordering::less
                     : (lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::string str() const { return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_); }

  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    auto num = io::detail::parse_int<std::int64_t>(text.substr(0, slash), 0, "coordinate");
    std::int64_t den = 1;
    if (slash != std::string_view::npos) den = io::detail::parse_int<std::int64_t>(text.substr(slash + 1), 0, "coordinate");
    if (den == 0) throw FormatError("coordinate with zero denominator: " + std::string(text));
    return Rational(num, den);
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

struct GeometricRepresentation {
  enum class Kind { interval, circular_arc };

  struct Span {
    Rational start;
    Rational end;
  };

  Kind kind = Kind::interval;
  std::vector<Span> spans;  // indexed by vertex

  int size() const { return static_cast<int>(spans.size()); }

  bool covers(Vertex v, const Rational& p) const {
    const auto& s = spans[v];
    if (kind == Kind::interval || s.start <= s.end) return s.start <= p && p <= s.end;
    return p >= s.start || p <= s.end;
  }

  // Two closed arcs meet iff one contains the start point of the other.
  bool intersects(Vertex u, Vertex v) const { return covers(u, spans[v].start) || covers(v, spans[u].start); }

  UndirectedGraph intersection_graph() const {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < size(); ++u)
      for (Vertex v = u + 1; v < size(); ++v)
        if (intersects(u, v)) edges.emplace_back(u, v);
    return UndirectedGraph(size(), edges);
  }
};

// Throws PreconditionError with the first mismatching pair if the model's
// intersection graph differs from `g`.
template <AdjacencyGraph G>
void validate_representation(const GeometricRepresentation& rep, const G& g) {
  if (rep.size() != g.size()) {
    throw PreconditionError("representation-mismatch", "representation has " + std::to_string(rep.size()) +
                                                           " vertices, graph has " + std::to_string(g.size()));
  }
  for (Vertex v = 0; v < rep.size(); ++v) {
    if (rep.kind == GeometricRepresentation::Kind::interval && rep.spans[v].end < rep.spans[v].start) {
      throw PreconditionError("representation-mismatch", "interval of vertex " + std::to_string(v) + " ends before it starts", {v});
    }
  }
  for (Vertex u = 0; u < rep.size(); ++u)
    for (Vertex v = u + 1; v < rep.size(); ++v)
      if (rep.intersects(u, v) != g.adjacent(u, v)) {
        throw PreconditionError("representation-mismatch",
                                "vertices " + std::to_string(u) + " and " + std::to_string(v) +
                                    (g.adjacent(u, v) ? " are adjacent but their spans are disjoint"
                                                      : " are not adjacent but their spans meet"),
                                {u, v});
      }
}

namespace io {

inline GeometricRepresentation read_representation(std::istream& in, int n) {
  GeometricRepresentation rep;
  rep.spans.resize(static_cast<std::size_t>(n));
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::string line;
  int line_no = 0;
  bool kind_set = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_comment_or_blank(line)) continue;
    auto toks = detail::split_ws(line);
    if (toks.size() != 4 || (toks[0] != "arc" && toks[0] != "interval")) {
      throw FormatError("line " + std::to_string(line_no) + ": expected 'arc|interval <v> <start> <end>'");
    }
    auto kind = toks[0] == "arc" ? GeometricRepresentation::Kind::circular_arc : GeometricRepresentation::Kind::interval;
    if (kind_set && kind != rep.kind) throw FormatError("line " + std::to_string(line_no) + ": mixed arc and interval lines");
    rep.kind = kind;
    kind_set = true;
    Vertex v = detail::parse_int<Vertex>(toks[1], line_no, "vertex");
    if (v < 0 || v >= n) throw FormatError("line " + std::to_string(line_no) + ": vertex index out of range");
    if (seen[v]) throw FormatError("line " + std::to_string(line_no) + ": vertex " + std::to_string(v) + " listed twice");
    seen[v] = 1;
    try {
      rep.spans[v] = {Rational::parse(toks[2]), Rational::parse(toks[3])};
    } catch (const InvalidInput& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (!seen[v]) throw FormatError("representation misses vertex " + std::to_string(v));
  return rep;
}

inline GeometricRepresentation load_representation(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return read_representation(in, n);
}

inline void write_representation(std::ostream& out, const GeometricRepresentation& rep) {
  const char* word = rep.kind == GeometricRepresentation::Kind::interval ? "interval" : "arc";
  for (Vertex v = 0; v < rep.size(); ++v)
    out << word << ' ' << v << ' ' << rep.spans[v].start.str() << ' ' << rep.spans[v].end.str() << '\n';
}

}  // namespace io

}  // namespace perfkern
