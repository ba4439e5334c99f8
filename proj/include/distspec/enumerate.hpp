#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "distspec/canonical.hpp"
#include "distspec/hypergraph.hpp"
#include "distspec/spectral.hpp"

namespace distspec {

// ---------------------------------------------------------------------------
// Cactus structure

/// Cycle lengths of a connected 2-uniform cactus, one entry per cycle
/// (ascending); nullopt if g is not a connected cactus. Every block must be
/// a bridge or a cycle.
inline std::optional<std::vector<std::size_t>> cactus_cycles(const Hypergraph& g) {
  if (g.order() == 0 || !g.is_uniform(2) || !is_connected(g)) return std::nullopt;
  const std::size_t n = g.order();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<EdgeIndex> edge_stack;
  std::vector<std::size_t> cycles;
  bool ok = true;
  int timer = 0;

  auto close_block = [&](EdgeIndex until) {
    std::vector<VertexId> verts;
    std::size_t edges = 0;
    while (true) {
      EdgeIndex e = edge_stack.back();
      edge_stack.pop_back();
      ++edges;
      verts.insert(verts.end(), g.edge(e).begin(), g.edge(e).end());
      if (e == until) break;
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    if (edges == 1) return;
    if (edges == verts.size()) cycles.push_back(edges);
    else ok = false;
  };

  std::function<void(VertexId, std::optional<EdgeIndex>)> dfs = [&](VertexId u, std::optional<EdgeIndex> via) {
    disc[u] = low[u] = timer++;
    for (EdgeIndex e : g.incident(u)) {
      if (via && e == *via) continue;
      const VertexId w = g.edge(e)[0] == u ? g.edge(e)[1] : g.edge(e)[0];
      if (disc[w] < 0) {
        edge_stack.push_back(e);
        dfs(w, e);
        low[u] = std::min(low[u], low[w]);
        if (low[w] >= disc[u]) close_block(e);
      } else if (disc[w] < disc[u]) {
        edge_stack.push_back(e);
        low[u] = std::min(low[u], disc[w]);
      }
    }
  };
  dfs(0, std::nullopt);
  if (!ok) return std::nullopt;
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

inline bool is_cactus(const Hypergraph& g) { return cactus_cycles(g).has_value(); }

// ---------------------------------------------------------------------------
// Classes and enumeration

enum class Universe { hypertree_rank3, cactus_all, cactus_triangles_only };

inline std::string to_string(Universe u) {
  switch (u) {
    case Universe::hypertree_rank3: return "hypertree-rank3";
    case Universe::cactus_all: return "cactus-all";
    case Universe::cactus_triangles_only: return "cactus-triangles-only";
  }
  return "?";
}

/// Order n with k size-3 edges (hypertrees) or k cycles (cacti).
struct ClassSpec {
  int n = 1;
  int k = 0;
  Universe universe = Universe::hypertree_rank3;

  void validate() const {
    if (n < 1) throw std::invalid_argument("class spec: n must be positive");
    if (k < 0 || k > (n - 1) / 2)
      throw std::invalid_argument("class spec: need 0 <= k <= floor((n-1)/2), got n = " +
                                  std::to_string(n) + ", k = " + std::to_string(k));
  }
};

struct EnumeratedMember {
  Hypergraph graph;
  CanonicalKey key;
};

struct EnumerateOptions {
  /// Shuffles the internal visiting order; the set of emitted keys must not
  /// depend on it.
  std::optional<std::uint64_t> shuffle_seed;
};

namespace detail {

// A growth step: glue a new edge (hypertrees) or a new block (cacti) at an
// existing vertex. `added` vertices are new; `cycles` is the class counter
// increment.
struct GrowthMove {
  int added;
  int cycles;
};

inline std::vector<GrowthMove> growth_moves(const ClassSpec& spec) {
  switch (spec.universe) {
    case Universe::hypertree_rank3:
    case Universe::cactus_triangles_only:
      return {{1, 0}, {2, 1}};
    case Universe::cactus_all: {
      std::vector<GrowthMove> moves{{1, 0}};
      for (int len = 3; len <= spec.n; ++len) moves.push_back({len - 1, 1});
      return moves;
    }
  }
  return {};
}

inline Hypergraph attach(const Hypergraph& g, VertexId at, GrowthMove move, Universe universe) {
  const auto base = static_cast<VertexId>(g.order());
  std::vector<Edge> edges = g.edges();
  if (move.cycles == 0) {
    edges.push_back({at, base});
  } else if (universe == Universe::hypertree_rank3) {
    edges.push_back({at, base, base + 1});
  } else {
    // cycle at, base, base+1, ..., base+added-1, at
    VertexId prev = at;
    for (int i = 0; i < move.added; ++i) {
      edges.push_back({prev, base + VertexId(i)});
      prev = base + VertexId(i);
    }
    edges.push_back({prev, at});
  }
  return Hypergraph(g.order() + static_cast<std::size_t>(move.added), std::move(edges));
}

}  // namespace detail

/// Isomorph-free generation of every member of the class: members are grown
/// from a single vertex by gluing leaf blocks (a pendant edge, a size-3 edge
/// or a cycle) at existing vertices, deduplicated by canonical key at every
/// (order, count) level. Output is sorted by key.
inline std::vector<EnumeratedMember> enumerate_class(const ClassSpec& spec,
                                                     const EnumerateOptions& opts = {}) {
  spec.validate();
  const auto moves = detail::growth_moves(spec);
  const int n = spec.n, k = spec.k;
  auto reachable = [&](int order, int count) {
    return order <= n && count <= k && n - order >= 2 * (k - count);
  };

  std::vector<std::vector<std::vector<EnumeratedMember>>> level(
      static_cast<std::size_t>(n + 1), std::vector<std::vector<EnumeratedMember>>(static_cast<std::size_t>(k + 1)));
  std::vector<std::vector<std::unordered_set<CanonicalKey, CanonicalKeyHash>>> seen(
      static_cast<std::size_t>(n + 1),
      std::vector<std::unordered_set<CanonicalKey, CanonicalKeyHash>>(static_cast<std::size_t>(k + 1)));
  std::optional<std::mt19937_64> rng;
  if (opts.shuffle_seed) rng.emplace(*opts.shuffle_seed);

  Hypergraph seed(1);
  if (reachable(1, 0)) {
    auto key = canonical_form(seed);
    seen[1][0].insert(key);
    level[1][0].push_back({seed, key});
  }

  for (int order = 1; order < n; ++order) {
    for (int count = 0; count <= k; ++count) {
      auto& members = level[order][count];
      if (members.empty()) continue;
      if (rng) std::shuffle(members.begin(), members.end(), *rng);
      for (const auto& member : members) {
        std::vector<VertexId> sites(member.graph.order());
        std::iota(sites.begin(), sites.end(), VertexId{0});
        if (rng) std::shuffle(sites.begin(), sites.end(), *rng);
        for (const auto& move : moves) {
          const int next_order = order + move.added, next_count = count + move.cycles;
          if (!reachable(next_order, next_count)) continue;
          for (VertexId at : sites) {
            auto child = detail::attach(member.graph, at, move, spec.universe);
            auto key = canonical_form(child);
            if (seen[next_order][next_count].insert(key).second)
              level[next_order][next_count].push_back({std::move(child), std::move(key)});
          }
        }
      }
      if (order < n) members.clear();
    }
  }

  auto out = std::move(level[n][k]);
  std::sort(out.begin(), out.end(),
            [](const EnumeratedMember& a, const EnumeratedMember& b) { return a.key < b.key; });
  return out;
}

/// Rank-3 hypertrees of order n with k edges of size three.
inline std::vector<EnumeratedMember> enumerate_hypertrees(int n, int k, const EnumerateOptions& opts = {}) {
  return enumerate_class({n, k, Universe::hypertree_rank3}, opts);
}

inline std::vector<EnumeratedMember> enumerate_cacti(int n, int k, bool triangles_only,
                                                     const EnumerateOptions& opts = {}) {
  return enumerate_class({n, k, triangles_only ? Universe::cactus_triangles_only : Universe::cactus_all},
                         opts);
}

// ---------------------------------------------------------------------------
// Extremal search

struct ArgmaxResult {
  EnumeratedMember best;
  SpectralResult spectrum;
  std::size_t class_size = 0;
  /// rho(best) - rho(runner-up); +inf when the class has one member.
  double gap = std::numeric_limits<double>::infinity();
  std::optional<EnumeratedMember> runner_up;
  /// True iff the runner-up is separated by more than the guard band.
  bool unique = true;
  /// Keys of every member within the guard band of the maximum (includes best).
  std::vector<CanonicalKey> tied;
};

inline ArgmaxResult argmax_rho(const ClassSpec& spec, double tol = kDefaultTolerance) {
  auto members = enumerate_class(spec);
  if (members.empty()) throw std::invalid_argument("argmax_rho: empty class");
  std::vector<SpectralResult> spectra;
  spectra.reserve(members.size());
  for (const auto& m : members) spectra.push_back(spectral_radius(m.graph, tol));

  std::vector<std::size_t> idx(members.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return spectra[a].rho > spectra[b].rho; });

  ArgmaxResult out{members[idx[0]], spectra[idx[0]]};
  out.class_size = members.size();
  for (std::size_t i : idx) {
    const double guard = 10.0 * std::max(spectra[i].residual, out.spectrum.residual);
    if (out.spectrum.rho - spectra[i].rho <= guard) out.tied.push_back(members[i].key);
  }
  if (idx.size() > 1) {
    out.runner_up = members[idx[1]];
    out.gap = out.spectrum.rho - spectra[idx[1]].rho;
    out.unique = out.tied.size() == 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random instances

/// Random connected hypergraph on n vertices: a random spanning loose
/// structure with edges of size 2..max_edge, plus `extra` random edges.
/// Uses only raw engine output, so a seed reproduces the same instance on
/// every standard library.
template <class Rng>
Hypergraph random_connected_hypergraph(Rng& rng, int n, int max_edge = 4, int extra = 3) {
  auto pick = [&](int k) { return static_cast<int>(rng() % static_cast<std::uint64_t>(k)); };
  std::vector<Edge> edges;
  std::vector<VertexId> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[i] = VertexId(i);
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[pick(i + 1)]);
  int covered = 1;
  while (covered < n) {
    const int size = std::min(2 + pick(max_edge - 1), n - covered + 1);
    Edge e{order[pick(covered)]};
    for (int j = 0; j < size - 1; ++j) e.push_back(order[covered++]);
    edges.push_back(std::move(e));
  }
  for (int j = 0; n >= 2 && j < extra; ++j) {
    const int size = std::min(2 + pick(max_edge - 1), n);
    std::set<VertexId> e;
    while (static_cast<int>(e.size()) < size) e.insert(VertexId(pick(n)));
    edges.emplace_back(e.begin(), e.end());
  }
  return Hypergraph(static_cast<std::size_t>(n), std::move(edges));
}

}  // namespace distspec
