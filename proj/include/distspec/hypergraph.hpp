#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace distspec {

using VertexId = std::uint32_t;
using EdgeIndex = std::size_t;
using Edge = std::vector<VertexId>;

class DisconnectedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Simple hypergraph on vertices 0..n-1. Edges are stored sorted, kept in
/// insertion order, and deduplicated as sets on construction.
class Hypergraph {
 public:
  Hypergraph() = default;
  explicit Hypergraph(std::size_t n) : n_(n), incident_(n) {}

  Hypergraph(std::size_t n, std::vector<Edge> edges) : n_(n), incident_(n) {
    for (auto& e : edges) add_edge(std::move(e));
  }

  std::size_t order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeIndex i) const { return edges_.at(i); }

  /// Indices of the edges containing u, ascending.
  const std::vector<EdgeIndex>& incident(VertexId u) const {
    check_vertex(u);
    return incident_[u];
  }

  std::size_t rank() const {
    std::size_t r = 0;
    for (const auto& e : edges_) r = std::max(r, e.size());
    return r;
  }

  bool is_uniform(std::size_t k) const {
    return std::all_of(edges_.begin(), edges_.end(),
                       [k](const Edge& e) { return e.size() == k; });
  }

  std::optional<EdgeIndex> find_edge(Edge e) const {
    std::sort(e.begin(), e.end());
    for (EdgeIndex i = 0; i < edges_.size(); ++i)
      if (edges_[i] == e) return i;
    return std::nullopt;
  }

  bool has_edge(const Edge& e) const { return find_edge(e).has_value(); }

  /// Vertices sharing at least one edge with u, ascending.
  std::vector<VertexId> neighbors(VertexId u) const {
    std::vector<VertexId> out;
    for (EdgeIndex i : incident(u))
      for (VertexId w : edges_[i])
        if (w != u) out.push_back(w);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void check_vertex(VertexId u) const {
    if (u >= n_)
      throw std::out_of_range("vertex " + std::to_string(u) + " out of range (n = " +
                              std::to_string(n_) + ")");
  }

  /// Same hypergraph with edges listed in lexicographic order.
  Hypergraph sorted() const {
    auto es = edges_;
    std::sort(es.begin(), es.end());
    return Hypergraph(n_, std::move(es));
  }

  /// Edge-set equality (ignores edge order).
  friend bool same_edge_set(const Hypergraph& a, const Hypergraph& b) {
    if (a.n_ != b.n_ || a.edges_.size() != b.edges_.size()) return false;
    auto ea = a.edges_, eb = b.edges_;
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    return ea == eb;
  }

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  void add_edge(Edge e) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    if (e.size() < 2) throw std::invalid_argument("edge must contain at least two vertices");
    for (VertexId v : e) check_vertex(v);
    if (has_edge(e)) return;
    for (VertexId v : e) incident_[v].push_back(edges_.size());
    edges_.push_back(std::move(e));
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeIndex>> incident_;
};

inline std::size_t degree(const Hypergraph& g, VertexId u) { return g.incident(u).size(); }

/// Graph O_G: every edge of size r becomes an r-clique.
inline Hypergraph two_section(const Hypergraph& g) {
  std::vector<Edge> pairs;
  for (const auto& e : g.edges())
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = i + 1; j < e.size(); ++j) pairs.push_back({e[i], e[j]});
  std::sort(pairs.begin(), pairs.end());
  return Hypergraph(g.order(), std::move(pairs));
}

/// Component label per vertex, ignoring the edges for which `skip_edge` is
/// true. Labels are numbered by smallest member vertex.
inline std::vector<std::size_t> component_labels(
    const Hypergraph& g, const std::function<bool(EdgeIndex)>& skip_edge = {}) {
  const std::size_t n = g.order();
  std::vector<std::size_t> label(n, n);
  std::size_t next = 0;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < n; ++s) {
    if (label[s] != n) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (EdgeIndex i : g.incident(u)) {
        if (skip_edge && skip_edge(i)) continue;
        for (VertexId w : g.edge(i)) {
          if (label[w] == n) {
            label[w] = next;
            stack.push_back(w);
          }
        }
      }
    }
    ++next;
  }
  return label;
}

/// Vertex set of the component of G - e containing u.
inline std::vector<VertexId> component_without_edge(const Hypergraph& g, EdgeIndex e,
                                                    VertexId u) {
  g.check_vertex(u);
  auto label = component_labels(g, [e](EdgeIndex i) { return i == e; });
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.order(); ++v)
    if (label[v] == label[u]) out.push_back(v);
  return out;
}

inline bool is_connected(const Hypergraph& g) {
  if (g.order() == 0) throw std::invalid_argument("is_connected: empty vertex set");
  auto label = component_labels(g);
  return std::all_of(label.begin(), label.end(), [](std::size_t l) { return l == 0; });
}

/// Connected, pairwise edge intersections of size <= 1, and sum(|e|-1) = n-1.
inline bool is_hypertree(const Hypergraph& g) {
  if (g.order() == 0 || !is_connected(g)) return false;
  std::size_t excess = 0;
  for (const auto& e : g.edges()) excess += e.size() - 1;
  if (excess != g.order() - 1) return false;
  const auto& es = g.edges();
  for (std::size_t i = 0; i < es.size(); ++i) {
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      std::size_t common = 0;
      for (VertexId v : es[i])
        if (std::binary_search(es[j].begin(), es[j].end(), v)) ++common;
      if (common > 1) return false;
    }
  }
  return true;
}

namespace detail {

inline bool disjoint(const Edge& a, const Edge& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    a[i] < b[j] ? ++i : ++j;
  }
  return true;
}

inline bool contains(const Edge& e, VertexId v) {
  return std::binary_search(e.begin(), e.end(), v);
}

// Extends the loose walk path_v / path_e by one edge through path_v.back().
inline bool extend_loose_cycle(const Hypergraph& g, std::vector<VertexId>& path_v,
                               std::vector<EdgeIndex>& path_e) {
  const VertexId start = path_v.front();
  const VertexId last = path_v.back();
  const std::size_t i = path_e.size() + 1;  // index of the edge being chosen
  for (EdgeIndex cand : g.incident(last)) {
    if (std::find(path_e.begin(), path_e.end(), cand) != path_e.end()) continue;
    const Edge& e = g.edge(cand);
    // Closing edge e_p: may meet e_1 and e_{p-1}, must miss e_2..e_{p-2}.
    if (i >= 2 && contains(e, start)) {
      bool ok = true;
      for (std::size_t j = 1; j + 2 < i && ok; ++j) ok = disjoint(e, g.edge(path_e[j]));
      if (ok) return true;
    }
    // Open edge e_i: must miss e_1..e_{i-2}.
    bool ok = true;
    for (std::size_t j = 0; j + 2 < i && ok; ++j) ok = disjoint(e, g.edge(path_e[j]));
    if (!ok) continue;
    path_e.push_back(cand);
    for (VertexId next : e) {
      if (std::find(path_v.begin(), path_v.end(), next) != path_v.end()) continue;
      path_v.push_back(next);
      if (extend_loose_cycle(g, path_v, path_e)) return true;
      path_v.pop_back();
    }
    path_e.pop_back();
  }
  return false;
}

}  // namespace detail

/// Exhaustive search for a loose cycle (length >= 2). Exponential; meant
/// for small inputs and as a cross-check of is_hypertree.
inline bool has_loose_cycle(const Hypergraph& g) {
  std::vector<VertexId> path_v;
  std::vector<EdgeIndex> path_e;
  for (VertexId s = 0; s < g.order(); ++s) {
    path_v.assign(1, s);
    path_e.clear();
    if (detail::extend_loose_cycle(g, path_v, path_e)) return true;
  }
  return false;
}

struct PendantEdge {
  EdgeIndex edge;
  VertexId anchor;
  friend bool operator==(const PendantEdge&, const PendantEdge&) = default;
};

/// Edges e with an anchor v in e, deg(v) > 1 and every other vertex of e of
/// degree one.
inline std::vector<PendantEdge> pendant_edges(const Hypergraph& g) {
  std::vector<PendantEdge> out;
  for (EdgeIndex i = 0; i < g.size(); ++i) {
    const Edge& e = g.edge(i);
    std::optional<VertexId> anchor;
    bool ok = true;
    for (VertexId v : e) {
      if (degree(g, v) > 1) {
        if (anchor) ok = false;
        anchor = v;
      }
    }
    if (ok && anchor) out.push_back({i, *anchor});
  }
  return out;
}

/// Symmetric matrix of loose-path distances of a connected hypergraph.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::size_t n, std::vector<int> entries) : n_(n), d_(std::move(entries)) {
    if (d_.size() != n_ * n_) throw std::invalid_argument("distance matrix: wrong entry count");
  }

  std::size_t order() const { return n_; }
  int operator()(VertexId u, VertexId v) const { return d_[u * n_ + v]; }
  const std::vector<int>& entries() const { return d_; }

  long row_sum(VertexId u) const {
    long s = 0;
    for (std::size_t v = 0; v < n_; ++v) s += d_[u * n_ + v];
    return s;
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<int> d_;
};

/// One breadth-first pass per source over the 2-section.
inline DistanceMatrix distance_matrix(const Hypergraph& g) {
  const std::size_t n = g.order();
  if (n == 0) throw std::invalid_argument("distance_matrix: empty vertex set");
  std::vector<std::vector<VertexId>> adj(n);
  for (VertexId u = 0; u < n; ++u) adj[u] = g.neighbors(u);
  std::vector<int> d(n * n, -1);
  std::vector<VertexId> queue;
  queue.reserve(n);
  for (VertexId s = 0; s < n; ++s) {
    int* row = d.data() + static_cast<std::size_t>(s) * n;
    row[s] = 0;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      VertexId u = queue[head];
      for (VertexId w : adj[u]) {
        if (row[w] < 0) {
          row[w] = row[u] + 1;
          queue.push_back(w);
        }
      }
    }
    if (queue.size() != n) throw DisconnectedError("distance matrix requires a connected hypergraph");
  }
  return DistanceMatrix(n, std::move(d));
}

// ---------------------------------------------------------------------------
// Text format: first line n, then one edge per line; '#' lines are comments.

inline Hypergraph parse_hypergraph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> n;
  std::vector<std::pair<std::size_t, Edge>> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::vector<long long> nums;
    std::string tok;
    while (fields >> tok) {
      std::size_t pos = 0;
      long long value = 0;
      try {
        value = std::stoll(tok, &pos);
      } catch (const std::exception&) {
        throw ParseError(lineno, "not an integer: '" + tok + "'");
      }
      if (pos != tok.size() || value < 0) throw ParseError(lineno, "not a vertex id: '" + tok + "'");
      nums.push_back(value);
    }
    if (!n) {
      if (nums.size() != 1) throw ParseError(lineno, "expected the vertex count alone on a line");
      n = static_cast<std::size_t>(nums[0]);
      continue;
    }
    Edge e;
    for (long long v : nums) {
      if (static_cast<std::size_t>(v) >= *n)
        throw ParseError(lineno, "vertex " + std::to_string(v) + " out of range");
      e.push_back(static_cast<VertexId>(v));
    }
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
      throw ParseError(lineno, "repeated vertex in edge");
    if (e.size() < 2) throw ParseError(lineno, "edge must contain at least two vertices");
    edges.emplace_back(lineno, std::move(e));
  }
  if (!n) throw ParseError(lineno, "missing vertex count");
  std::vector<Edge> seen;
  for (auto& [ln, e] : edges) {
    if (std::find(seen.begin(), seen.end(), e) != seen.end()) throw ParseError(ln, "duplicate edge");
    seen.push_back(e);
  }
  return Hypergraph(*n, std::move(seen));
}

inline Hypergraph parse_hypergraph(const std::string& text) {
  std::istringstream in(text);
  return parse_hypergraph(in);
}

/// Writes edges in stored order. For canonical output call on g.sorted().
inline std::string to_text(const Hypergraph& g) {
  std::string out = std::to_string(g.order()) + "\n";
  for (const auto& e : g.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(e[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace distspec
