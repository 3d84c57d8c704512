#pragma once

// Instance text format:
//
//   # optional comment lines
//   p kernel <n> <m>
//   a <u> <v>        (exactly m lines, 0-indexed arc u -> v)
//
// A bidirected edge is written as both `a u v` and `a v u`. Duplicate arc
// lines, self-loops and out-of-range indices are rejected.

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "perfkern/errors.hpp"
#include "perfkern/graph.hpp"

namespace perfkern::io {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class Int>
Int parse_int(std::string_view tok, int line_no, const char* what) {
  Int value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw FormatError("line " + std::to_string(line_no) + ": bad " + what + " '" + std::string(tok) + "'");
  }
  return value;
}

inline bool is_comment_or_blank(std::string_view line) {
  auto toks = split_ws(line);
  return toks.empty() || toks.front().starts_with('#');
}

}  // namespace detail

inline SuperOrientation read_instance(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::optional<std::pair<long long, long long>> header;
  std::vector<Arc> arcs;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_comment_or_blank(line)) continue;
    auto toks = detail::split_ws(line);
    if (!header) {
      if (toks.size() != 4 || toks[0] != "p" || toks[1] != "kernel") {
        throw FormatError("line " + std::to_string(line_no) + ": expected 'p kernel <n> <m>'");
      }
      long long n = detail::parse_int<long long>(toks[2], line_no, "vertex count");
      long long m = detail::parse_int<long long>(toks[3], line_no, "arc count");
      if (n < 0 || m < 0 || n > 100'000'000) {
        throw FormatError("line " + std::to_string(line_no) + ": invalid header counts");
      }
      header = {n, m};
      arcs.reserve(static_cast<std::size_t>(std::min<long long>(m, 10'000'000)));
      continue;
    }
    if (toks.size() != 3 || toks[0] != "a") {
      throw FormatError("line " + std::to_string(line_no) + ": expected 'a <u> <v>'");
    }
    Vertex u = detail::parse_int<Vertex>(toks[1], line_no, "vertex");
    Vertex v = detail::parse_int<Vertex>(toks[2], line_no, "vertex");
    if (u < 0 || v < 0 || u >= header->first || v >= header->first) {
      throw FormatError("line " + std::to_string(line_no) + ": vertex index out of range");
    }
    if (u == v) throw FormatError("line " + std::to_string(line_no) + ": self-loop");
    arcs.emplace_back(u, v);
  }
  if (!header) throw FormatError("missing 'p kernel' header");
  if (static_cast<long long>(arcs.size()) != header->second) {
    throw FormatError("header announces " + std::to_string(header->second) + " arcs, found " +
                      std::to_string(arcs.size()));
  }
  try {
    return SuperOrientation(static_cast<int>(header->first), arcs);
  } catch (const InvalidInput& e) {
    throw FormatError(e.what());
  }
}

inline SuperOrientation parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_instance(in);
}

inline SuperOrientation load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return read_instance(in);
}

// Arcs are written in lexicographic order, so equal digraphs give equal bytes.
inline void write_instance(std::ostream& out, const SuperOrientation& d,
                           const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "p kernel " << d.size() << ' ' << d.arc_count() << '\n';
  for (auto [u, v] : d.arcs()) out << "a " << u << ' ' << v << '\n';
}

inline std::string format_instance(const SuperOrientation& d, const std::vector<std::string>& comments = {}) {
  std::ostringstream os;
  write_instance(os, d, comments);
  return os.str();
}

// "1,4,7" or "1 4 7" -> sorted set. Empty string gives the empty set.
inline VertexSet parse_vertex_list(std::string_view text) {
  std::vector<Vertex> out;
  std::string cleaned(text);
  for (char& ch : cleaned)
    if (ch == ',') ch = ' ';
  for (auto tok : detail::split_ws(cleaned)) out.push_back(detail::parse_int<Vertex>(tok, 1, "vertex"));
  return make_set(std::move(out));
}

inline std::string format_vertex_list(std::span<const Vertex> vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(vs[i]);
  }
  return s;
}

}  // namespace perfkern::io
