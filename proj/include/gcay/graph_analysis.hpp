#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "gcay/cayley_spectrum.hpp"
#include "gcay/errors.hpp"
#include "gcay/gaussian_ring.hpp"

namespace gcay {

using Walk = std::vector<GaussianResidue>;

struct GraphStats {
  u64 modulus = 0;
  u64 component_count = 0;
  u64 root_component_size = 0;
  bool regular = false;
  bool bipartite = false;
  // Closed walk of odd length starting and ending at (0, 0); present iff
  // the graph is not bipartite.
  std::optional<Walk> odd_cycle_witness;
  std::optional<u64> girth;     // nullopt: acyclic
  std::optional<u64> diameter;  // nullopt: disconnected
};

constexpr u64 kAnalyzeModulusLimit = 200;

namespace detail {

constexpr u64 kUnvisited = std::numeric_limits<u64>::max();

struct BfsTree {
  std::vector<u64> dist;
  std::vector<u64> parent;
  std::vector<u64> order;  // visit order
};

inline BfsTree bfs(const CayleyGraph& g, u64 source) {
  BfsTree t{std::vector<u64>(g.vertex_count(), kUnvisited), std::vector<u64>(g.vertex_count(), kUnvisited), {}};
  t.dist[source] = 0;
  t.parent[source] = source;
  std::queue<u64> queue;
  queue.push(source);
  while (!queue.empty()) {
    const u64 v = queue.front();
    queue.pop();
    t.order.push_back(v);
    g.for_each_neighbor(v, [&](u64 w) {
      if (t.dist[w] == kUnvisited) {
        t.dist[w] = t.dist[v] + 1;
        t.parent[w] = v;
        queue.push(w);
      }
    });
  }
  return t;
}

inline Walk path_from_root(const BfsTree& t, u64 v, u64 n) {
  Walk path;
  while (true) {
    path.push_back(GaussianResidue::from_index(v, n));
    if (t.parent[v] == v) break;
    v = t.parent[v];
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace detail

/// Largest BFS distance from `vertex` within its component.
inline u64 eccentricity(const CayleyGraph& g, u64 vertex) {
  const auto t = detail::bfs(g, vertex);
  return t.dist[t.order.back()];
}

/// True when `walk` closes, has odd length, and every step lies in S.
inline bool is_odd_closed_walk(const CayleyGraph& g, const Walk& walk) {
  if (walk.size() < 2 || walk.front() != walk.back()) return false;
  if ((walk.size() - 1) % 2 == 0) return false;
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    if (walk[i].modulus() != g.n() || walk[i + 1].modulus() != g.n()) return false;
    if (!g.connection_set.contains(walk[i + 1] - walk[i])) return false;
  }
  return true;
}

/// Connectivity, bipartiteness, girth and diameter of the Cayley graph.
/// Girth and diameter come from a single BFS rooted at (0, 0): Cayley
/// graphs are vertex-transitive, so every vertex sees the same values.
inline GraphStats analyze(const CayleyGraph& g) {
  const u64 n = g.n();
  if (n > kAnalyzeModulusLimit) {
    throw ResourceError("analyze: n = " + std::to_string(n) + " exceeds the BFS limit of " +
                        std::to_string(kAnalyzeModulusLimit));
  }
  GraphStats st;
  st.modulus = n;

  const auto root = detail::bfs(g, 0);
  st.root_component_size = root.order.size();

  // Degree regularity over the root component.
  st.regular = true;
  for (u64 v : root.order) {
    auto nb = g.neighbors(v);
    std::sort(nb.begin(), nb.end());
    if (nb.size() != g.degree() || std::adjacent_find(nb.begin(), nb.end()) != nb.end() ||
        std::binary_search(nb.begin(), nb.end(), v)) {
      st.regular = false;
    }
  }

  // Components and 2-colouring over the whole vertex set.
  std::vector<int> colour(g.vertex_count(), -1);
  st.bipartite = true;
  for (u64 start = 0; start < g.vertex_count(); ++start) {
    if (colour[start] != -1) continue;
    ++st.component_count;
    colour[start] = 0;
    std::queue<u64> queue;
    queue.push(start);
    while (!queue.empty()) {
      const u64 v = queue.front();
      queue.pop();
      g.for_each_neighbor(v, [&](u64 w) {
        if (colour[w] == -1) {
          colour[w] = 1 - colour[v];
          queue.push(w);
        } else if (colour[w] == colour[v]) {
          st.bipartite = false;
        }
      });
    }
  }

  // Girth and odd-walk witness from the root tree.
  u64 best_odd = detail::kUnvisited;
  u64 girth = detail::kUnvisited;
  for (u64 x : root.order) {
    g.for_each_neighbor(x, [&](u64 y) {
      if (root.parent[x] == y || root.parent[y] == x) return;
      girth = std::min(girth, root.dist[x] + root.dist[y] + 1);
      if (root.dist[x] == root.dist[y]) best_odd = std::min(best_odd, 2 * root.dist[x] + 1);
    });
  }
  if (girth != detail::kUnvisited) st.girth = girth;

  if (best_odd != detail::kUnvisited) {
    // Among shortest candidates, keep the lexicographically smallest walk.
    const u64 level = (best_odd - 1) / 2;
    std::optional<Walk> best;
    for (u64 x : root.order) {
      if (root.dist[x] != level) continue;
      const Walk to_x = detail::path_from_root(root, x, n);
      g.for_each_neighbor(x, [&](u64 y) {
        if (root.dist[y] != level) return;
        Walk walk = to_x;
        Walk to_y = detail::path_from_root(root, y, n);
        walk.insert(walk.end(), to_y.rbegin(), to_y.rend());
        if (!best || walk < *best) best = std::move(walk);
      });
    }
    st.odd_cycle_witness = std::move(best);
  }

  if (st.component_count == 1) st.diameter = root.dist[root.order.back()];
  return st;
}

struct CrossCheckResult {
  bool pass = true;
  std::string failure;  // first violated clause
};

/// Spectral facts that must agree with the combinatorics: the multiplicity
/// of k counts components, and a connected graph is bipartite iff -k is an
/// eigenvalue.
inline CrossCheckResult cross_check(const GraphStats& stats, const Spectrum& spec, u64 k,
                                    double tol = kGroupingTolerance) {
  if (stats.modulus != spec.modulus) throw UsageError("cross_check: stats and spectrum moduli differ");
  const double kd = static_cast<double>(k);
  const u64 mult_k = spec.multiplicity_of(kd, tol);
  if (mult_k != stats.component_count) {
    return {false, "multiplicity of k = " + std::to_string(mult_k) + " but component count = " +
                       std::to_string(stats.component_count)};
  }
  if (stats.component_count == 1) {
    const bool minus_k = spec.multiplicity_of(-kd, tol) > 0;
    if (minus_k != stats.bipartite) {
      return {false, std::string("bipartite = ") + (stats.bipartite ? "true" : "false") +
                         " but -k present = " + (minus_k ? "true" : "false")};
    }
  }
  if (!stats.bipartite && !stats.odd_cycle_witness && stats.component_count == 1) {
    return {false, "non-bipartite graph without an odd-walk witness"};
  }
  return {};
}

}  // namespace gcay
