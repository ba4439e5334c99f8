#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "distspec/canonical.hpp"
#include "distspec/families.hpp"
#include "distspec/hypergraph.hpp"
#include "distspec/spectral.hpp"

namespace distspec {

enum class GraftErrc {
  bad_edge_index,
  target_in_edge,        // moving edges: destination vertex already in the edge
  source_not_in_edge,    // moving edges: edge does not contain the source vertex
  duplicate_result_edge, // a produced edge already exists
  same_edge,             // moving vertices between an edge and itself
  not_in_source,         // moving vertices: vertex not in the source edge
  already_in_target,     // moving vertices: vertex already in the target edge
  source_too_small,      // moving vertices would leave fewer than two vertices
};

inline const char* to_string(GraftErrc c) {
  switch (c) {
    case GraftErrc::bad_edge_index: return "bad-edge-index";
    case GraftErrc::target_in_edge: return "u-in-edge";
    case GraftErrc::source_not_in_edge: return "v-not-in-edge";
    case GraftErrc::duplicate_result_edge: return "duplicate-result-edge";
    case GraftErrc::same_edge: return "same-edge";
    case GraftErrc::not_in_source: return "vertex-not-in-source-edge";
    case GraftErrc::already_in_target: return "vertex-in-target-edge";
    case GraftErrc::source_too_small: return "source-edge-too-small";
  }
  return "?";
}

class GraftError : public std::invalid_argument {
 public:
  explicit GraftError(GraftErrc code)
      : std::invalid_argument(std::string("graft precondition violated: ") + to_string(code)), code_(code) {}
  GraftErrc code() const { return code_; }

 private:
  GraftErrc code_;
};

/// Invalid cut-vertex or edge decomposition handed to a lemma check.
class DecompositionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Replaces each selected edge e by (e \ {from}) + {to}.
inline Hypergraph move_edges(const Hypergraph& g, VertexId from, VertexId to,
                             std::vector<EdgeIndex> which) {
  g.check_vertex(from);
  g.check_vertex(to);
  std::sort(which.begin(), which.end());
  which.erase(std::unique(which.begin(), which.end()), which.end());
  std::vector<Edge> edges = g.edges();
  for (EdgeIndex i : which) {
    if (i >= g.size()) throw GraftError(GraftErrc::bad_edge_index);
    Edge& e = edges[i];
    if (std::binary_search(e.begin(), e.end(), to)) throw GraftError(GraftErrc::target_in_edge);
    auto it = std::lower_bound(e.begin(), e.end(), from);
    if (it == e.end() || *it != from) throw GraftError(GraftErrc::source_not_in_edge);
    e.erase(it);
    e.insert(std::lower_bound(e.begin(), e.end(), to), to);
    if (g.has_edge(e)) throw GraftError(GraftErrc::duplicate_result_edge);
  }
  return Hypergraph(g.order(), std::move(edges));
}

/// Moves `verts` out of edge `source` into edge `target`.
inline Hypergraph move_vertices(const Hypergraph& g, EdgeIndex source, EdgeIndex target,
                                std::vector<VertexId> verts) {
  if (source >= g.size() || target >= g.size()) throw GraftError(GraftErrc::bad_edge_index);
  if (verts.empty()) return g;
  if (source == target) throw GraftError(GraftErrc::same_edge);
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  const Edge& from = g.edge(source);
  const Edge& to = g.edge(target);
  for (VertexId v : verts) {
    if (!std::binary_search(from.begin(), from.end(), v)) throw GraftError(GraftErrc::not_in_source);
    if (std::binary_search(to.begin(), to.end(), v)) throw GraftError(GraftErrc::already_in_target);
  }
  if (from.size() - verts.size() < 2) throw GraftError(GraftErrc::source_too_small);
  Edge shrunk, grown;
  std::set_difference(from.begin(), from.end(), verts.begin(), verts.end(), std::back_inserter(shrunk));
  std::set_union(to.begin(), to.end(), verts.begin(), verts.end(), std::back_inserter(grown));
  if (g.has_edge(shrunk) || g.has_edge(grown)) throw GraftError(GraftErrc::duplicate_result_edge);
  std::vector<Edge> edges = g.edges();
  edges[source] = std::move(shrunk);
  edges[target] = std::move(grown);
  return Hypergraph(g.order(), std::move(edges));
}

// ---------------------------------------------------------------------------
// Graft lemma checks

enum class Hypothesis {
  held,       // certified beyond the guard band
  tied,       // equality certified by a symmetry swapping the two sides
  failed,     // violated beyond the guard band
  inconclusive,
};

inline const char* to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::held: return "held";
    case Hypothesis::tied: return "tied";
    case Hypothesis::failed: return "failed";
    case Hypothesis::inconclusive: return "inconclusive-hypothesis";
  }
  return "?";
}

struct GraftReport {
  SpectralResult before;
  SpectralResult after;
  Hypothesis hypothesis = Hypothesis::held;
  bool hypothesis_held = false;
  bool rho_increased = false;
  /// after.rho - before.rho
  double margin = 0.0;

  /// The lemma's conclusion is only at stake when its hypothesis held.
  bool consistent() const { return !hypothesis_held || rho_increased; }
};

namespace detail {

inline GraftReport make_report(SpectralResult before, SpectralResult after) {
  GraftReport r;
  r.margin = after.rho - before.rho;
  r.rho_increased = r.margin > 10.0 * std::max(before.residual, after.residual);
  r.before = std::move(before);
  r.after = std::move(after);
  return r;
}

// Vertex set `side` plus `root`, as a hypergraph on local ids with the root
// colored apart, so that rooted isomorphism reduces to key equality.
inline CanonicalKey rooted_key(const Hypergraph& g, VertexId root, const std::vector<VertexId>& side) {
  std::vector<VertexId> verts = side;
  if (std::find(verts.begin(), verts.end(), root) == verts.end()) verts.push_back(root);
  std::sort(verts.begin(), verts.end());
  std::vector<int> local(g.order(), -1);
  for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (!std::all_of(e.begin(), e.end(), [&](VertexId v) { return local[v] >= 0; })) continue;
    Edge le;
    for (VertexId v : e) le.push_back(static_cast<VertexId>(local[v]));
    edges.push_back(std::move(le));
  }
  std::vector<int> colors(verts.size(), 1);
  colors[static_cast<std::size_t>(local[root])] = 0;
  return canonical_form(Hypergraph(verts.size(), std::move(edges)), colors);
}

inline Hypothesis compare_sides(double diff, double guard, bool symmetric) {
  if (diff > guard) return Hypothesis::held;
  if (diff < -guard) return Hypothesis::failed;
  return symmetric ? Hypothesis::tied : Hypothesis::inconclusive;
}

}  // namespace detail

/// G split at a cut vertex u into branches G_1..G_t (vertex sets without u).
struct BranchSplit {
  VertexId u = 0;
  std::vector<std::vector<VertexId>> branches;
};

/// Finest branch decomposition at u: the components of G - u, ordered by
/// smallest vertex id.
inline BranchSplit branches_at(const Hypergraph& g, VertexId u) {
  g.check_vertex(u);
  const std::size_t n = g.order();
  std::vector<std::size_t> label(n, n);
  std::size_t next = 0;
  for (VertexId s = 0; s < n; ++s) {
    if (s == u || label[s] != n) continue;
    std::vector<VertexId> stack{s};
    label[s] = next;
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      for (EdgeIndex i : g.incident(x))
        for (VertexId y : g.edge(i))
          if (y != u && label[y] == n) {
            label[y] = next;
            stack.push_back(y);
          }
    }
    ++next;
  }
  BranchSplit split{u, std::vector<std::vector<VertexId>>(next)};
  for (VertexId v = 0; v < n; ++v)
    if (v != u) split.branches[label[v]].push_back(v);
  return split;
}

namespace detail {

inline void validate_split(const Hypergraph& g, const BranchSplit& split) {
  const std::size_t t = split.branches.size();
  if (t < 3) throw DecompositionError("edge-move lemma needs at least three branches");
  std::vector<int> owner(g.order(), -1);
  for (std::size_t i = 0; i < t; ++i) {
    if (split.branches[i].empty()) throw DecompositionError("branch with fewer than two vertices");
    for (VertexId v : split.branches[i]) {
      g.check_vertex(v);
      if (v == split.u || owner[v] >= 0) throw DecompositionError("branches must partition V - {u}");
      owner[v] = static_cast<int>(i);
    }
  }
  for (VertexId v = 0; v < g.order(); ++v)
    if (v != split.u && owner[v] < 0) throw DecompositionError("branches must cover V - {u}");
  for (const auto& e : g.edges()) {
    int side = -1;
    for (VertexId v : e) {
      if (v == split.u) continue;
      if (side >= 0 && owner[v] != side) throw DecompositionError("an edge spans two branches");
      side = owner[v];
    }
  }
  for (std::size_t i = 0; i < t; ++i) {
    std::vector<VertexId> side = split.branches[i];
    side.push_back(split.u);
    std::sort(side.begin(), side.end());
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
      if (!std::all_of(e.begin(), e.end(), [&](VertexId v) { return std::binary_search(side.begin(), side.end(), v); }))
        continue;
      Edge le;
      for (VertexId v : e)
        le.push_back(static_cast<VertexId>(std::lower_bound(side.begin(), side.end(), v) - side.begin()));
      edges.push_back(std::move(le));
    }
    if (!is_connected(Hypergraph(side.size(), std::move(edges))))
      throw DecompositionError("branch " + std::to_string(i + 1) + " is not connected through u");
  }
}

}  // namespace detail

/// Moves the edges at u of every branch in `moved` (1-based, subset of
/// 3..t) from u to v in branch 2; compares rho before and after.
inline GraftReport check_edge_move_lemma(const Hypergraph& g, const BranchSplit& split, VertexId v,
                                         const std::vector<std::size_t>& moved,
                                         double tol = kDefaultTolerance) {
  detail::validate_split(g, split);
  const auto& b2 = split.branches[1];
  if (std::find(b2.begin(), b2.end(), v) == b2.end())
    throw DecompositionError("v must lie in branch 2");
  if (moved.empty()) throw DecompositionError("the moved branch set must be nonempty");
  std::vector<EdgeIndex> which;
  for (std::size_t i : moved) {
    if (i < 3 || i > split.branches.size()) throw DecompositionError("moved branches must be among 3..t");
    const auto& side = split.branches[i - 1];
    for (EdgeIndex e : g.incident(split.u)) {
      const Edge& edge = g.edge(e);
      if (std::any_of(edge.begin(), edge.end(), [&](VertexId w) {
            return std::find(side.begin(), side.end(), w) != side.end();
          }))
        which.push_back(e);
    }
  }

  const auto dist = distance_matrix(g);
  auto before = spectral_radius(dist, tol);
  auto with_u = [&](std::vector<VertexId> s) {
    s.push_back(split.u);
    return s;
  };
  const double diff = sigma(before.perron, with_u(split.branches[0])) -
                      sigma(before.perron, with_u(split.branches[1]));
  const bool symmetric = detail::rooted_key(g, split.u, split.branches[0]) ==
                         detail::rooted_key(g, split.u, split.branches[1]);
  const auto hyp = detail::compare_sides(diff, before.guard_band(), symmetric);

  auto after = spectral_radius(move_edges(g, split.u, v, which), tol);
  auto report = detail::make_report(std::move(before), std::move(after));
  report.hypothesis = hyp;
  report.hypothesis_held = hyp == Hypothesis::held || hyp == Hypothesis::tied;
  return report;
}

/// Edge e = {w_1..w_t} whose removal leaves components H_1..H_t with
/// w_i in H_i. `w` lists the vertices of e in that order.
struct EdgeSplit {
  EdgeIndex edge = 0;
  std::vector<VertexId> w;
};

/// Moves w_i (i in `moved`, 1-based, subset of 3..t) from e into the edge
/// e_prime of H_2; compares rho before and after.
inline GraftReport check_vertex_move_lemma(const Hypergraph& g, const EdgeSplit& split,
                                           const std::vector<std::size_t>& moved, EdgeIndex e_prime,
                                           double tol = kDefaultTolerance) {
  if (split.edge >= g.size() || e_prime >= g.size() || e_prime == split.edge)
    throw DecompositionError("bad edge index");
  const Edge& e = g.edge(split.edge);
  const std::size_t t = e.size();
  if (t < 3) throw DecompositionError("vertex-move lemma needs an edge of size at least three");
  auto sorted_w = split.w;
  std::sort(sorted_w.begin(), sorted_w.end());
  if (sorted_w != e) throw DecompositionError("w must list the vertices of e");

  const auto label = component_labels(g, [&](EdgeIndex i) { return i == split.edge; });
  std::vector<std::size_t> seen;
  for (VertexId wi : split.w) seen.push_back(label[wi]);
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end() ||
      *std::max_element(label.begin(), label.end()) + 1 != t)
    throw DecompositionError("G - e must have exactly one component per vertex of e");

  auto side = [&](std::size_t i) {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < g.order(); ++v)
      if (label[v] == label[split.w[i]]) out.push_back(v);
    return out;
  };
  const auto h1 = side(0), h2 = side(1);
  if (h1.size() < 2 || h2.size() < 2) throw DecompositionError("|H_1| and |H_2| must be at least two");
  const Edge& target = g.edge(e_prime);
  if (!std::all_of(target.begin(), target.end(), [&](VertexId v) { return label[v] == label[split.w[1]]; }))
    throw DecompositionError("e' must be an edge of H_2");
  if (moved.empty()) throw DecompositionError("the moved vertex set must be nonempty");
  std::vector<VertexId> verts;
  for (std::size_t i : moved) {
    if (i < 3 || i > t) throw DecompositionError("moved vertices must be among w_3..w_t");
    verts.push_back(split.w[i - 1]);
  }

  const auto dist = distance_matrix(g);
  auto before = spectral_radius(dist, tol);
  const double diff = sigma(before.perron, h1) - sigma(before.perron, h2);
  // Swapping H_1 and H_2 fixes e, so rooted isomorphism certifies equality.
  const bool symmetric = detail::rooted_key(g, split.w[0], h1) == detail::rooted_key(g, split.w[1], h2);
  const auto hyp = detail::compare_sides(diff, before.guard_band(), symmetric);

  auto after = spectral_radius(move_vertices(g, split.edge, e_prime, verts), tol);
  auto report = detail::make_report(std::move(before), std::move(after));
  report.hypothesis = hyp;
  report.hypothesis_held = hyp == Hypothesis::held || hyp == Hypothesis::tied;
  return report;
}

/// x_w + x_u - x_v for non-adjacent neighbors v, w of u.
inline double entry_difference(const Hypergraph& g, const SpectralResult& s, VertexId u, VertexId v,
                               VertexId w) {
  g.check_vertex(u);
  g.check_vertex(v);
  g.check_vertex(w);
  auto adjacent = [&](VertexId a, VertexId b) {
    auto nb = g.neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
  };
  if (v == w || !adjacent(u, v) || !adjacent(u, w) || adjacent(v, w))
    throw std::invalid_argument("entry inequality: v and w must be non-adjacent neighbors of u");
  return s.perron.at(w) + s.perron.at(u) - s.perron.at(v);
}

inline bool check_entry_inequality(const Hypergraph& g, VertexId u, VertexId v, VertexId w,
                                   double tol = kDefaultTolerance) {
  if (!is_connected(g)) throw DisconnectedError("entry inequality needs a connected hypergraph");
  const auto s = spectral_radius(g, tol);
  return entry_difference(g, s, u, v, w) > s.guard_band();
}

/// rho(T(n,a+1,b-1)) against rho(T(n,a,b)). The larger hypertree is also
/// produced by moving w_{l-b} from e_{l-b} to e_{a+1}, and the two
/// constructions are checked to agree up to isomorphism.
inline GraftReport check_rebalance(int n, int a, int b, double tol = kDefaultTolerance) {
  if (a < 0 || b < a + 2 || 2 * (a + b) >= n - 1)
    throw std::invalid_argument("rebalance: need a >= 0, b >= a + 2 and 2(a+b) < n - 1");
  const HypertreeParams t(n, a, b);
  const auto before_graph = t_hypertree(t);
  const int ell = t.ell();
  const auto moved = move_vertices(before_graph, static_cast<EdgeIndex>(ell - b - 1),
                                   static_cast<EdgeIndex>(a), {t.w(ell - b)});
  const auto after_graph = t_hypertree(HypertreeParams(n, a + 1, b - 1));
  if (!isomorphic(moved, after_graph))
    throw std::logic_error("vertex move did not produce T(n,a+1,b-1)");
  auto report = detail::make_report(spectral_radius(before_graph, tol), spectral_radius(after_graph, tol));
  report.hypothesis = Hypothesis::held;
  report.hypothesis_held = true;
  return report;
}

}  // namespace distspec
