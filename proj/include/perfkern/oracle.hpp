#pragma once

// Exhaustive kernel search, used as ground truth in tests and as the atom
// solver for pieces of small stability number.
//
// Every kernel is a maximal stable set: if S is stable but some v outside S
// has no neighbour in S, v has no arc into S and is not absorbed. The search
// therefore only walks stable sets, deciding vertices in ascending order
// (include before exclude) and cutting a branch as soon as some decided,
// excluded vertex can no longer be absorbed by any vertex still undecided.
// Since kernels form an antichain, this visits them in lexicographic order.

#include <optional>
#include <vector>

#include "perfkern/errors.hpp"
#include "perfkern/graph.hpp"
#include "perfkern/kernel.hpp"

namespace perfkern {

namespace detail {

class KernelSearch {
 public:
  KernelSearch(const SuperOrientation& d, int max_size) : d_(d), max_size_(max_size) {
    const auto n = static_cast<std::size_t>(d.size());
    in_s_.assign(n, 0);
    blocked_.assign(n, 0);
  }

  // Calls `visit(S)` for each kernel of size <= max_size in lexicographic
  // order; stops early when it returns false.
  template <class Visit>
  void run(Visit&& visit) {
    stop_ = false;
    descend(0, visit);
  }

 private:
  template <class Visit>
  void descend(Vertex i, Visit& visit) {
    if (stop_) return;
    if (i == d_.size()) {
      if (verify_kernel(d_, current_).is_kernel() && !visit(current_)) stop_ = true;
      return;
    }
    if (!blocked_[i] && static_cast<int>(current_.size()) < max_size_) {
      include(i);
      if (feasible(i)) descend(i + 1, visit);
      exclude(i);
      if (stop_) return;
    }
    if (feasible(i)) descend(i + 1, visit);
  }

  // Every decided vertex u <= i outside S is absorbed already or still has an
  // undecided, unblocked out-neighbour.
  bool feasible(Vertex i) const {
    for (Vertex u = 0; u <= i; ++u) {
      if (in_s_[u]) continue;
      bool ok = false;
      for (Vertex w : d_.out(u)) {
        if (in_s_[w] || (w > i && !blocked_[w])) {
          ok = true;
          break;
        }
      }
      if (!ok) return false;
    }
    return true;
  }

  void include(Vertex v) {
    in_s_[v] = 1;
    current_.push_back(v);
    for (Vertex w : d_.neighbors(v)) ++blocked_[w];
  }
  void exclude(Vertex v) {
    in_s_[v] = 0;
    current_.pop_back();
    for (Vertex w : d_.neighbors(v)) --blocked_[w];
  }

  const SuperOrientation& d_;
  int max_size_;
  std::vector<char> in_s_;
  std::vector<int> blocked_;
  VertexSet current_;
  bool stop_ = false;
};

}  // namespace detail

inline constexpr int kDefaultOracleLimit = 20;

// Every kernel of D in lexicographic order. Throws InvalidInput when n > max_n.
inline std::vector<VertexSet> enumerate_kernels(const SuperOrientation& d, int max_n = kDefaultOracleLimit) {
  if (d.size() > max_n) {
    throw InvalidInput("oracle limited to " + std::to_string(max_n) + " vertices, got " +
                       std::to_string(d.size()));
  }
  std::vector<VertexSet> out;
  detail::KernelSearch search(d, d.size());
  search.run([&](const VertexSet& s) {
    out.push_back(s);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

// Lexicographically first kernel with at most `bound` vertices, if any.
// Runs in O(n^bound * poly(n)).
inline std::optional<VertexSet> find_kernel_bounded_stability(const SuperOrientation& d, int bound) {
  std::optional<VertexSet> found;
  detail::KernelSearch search(d, bound);
  search.run([&](const VertexSet& s) {
    found = s;
    return false;
  });
  return found;
}

}  // namespace perfkern
