#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "distspec/hypergraph.hpp"

namespace distspec {

/// Isomorphism-invariant label of a hypergraph: the text serialization of
/// its canonically relabeled, sorted edge list.
struct CanonicalKey {
  std::string bytes;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const { return std::hash<std::string>{}(k.bytes); }
};

struct CanonicalLabeling {
  std::vector<VertexId> label;  // label[v] = canonical id of vertex v
  Hypergraph relabeled;         // sorted edges under `label`
  CanonicalKey key;
};

namespace detail {

// Individualization-refinement over the vertex/edge incidence graph.
// Vertex nodes are 0..n-1, edge nodes n..n+m-1; the two classes never mix.
// The search takes the minimum leaf serialization; automorphisms found at
// equal leaves prune sibling branches in the same orbit.
class IncidenceCanonizer {
 public:
  IncidenceCanonizer(const Hypergraph& g, std::span<const int> colors)
      : n_(g.order()), m_(g.size()), adj_(n_ + m_), words_((m_ + 63) / 64),
        colors_(colors.begin(), colors.end()) {
    if (!colors_.empty() && colors_.size() != n_)
      throw std::invalid_argument("canonical form: one color per vertex required");
    for (EdgeIndex i = 0; i < m_; ++i) {
      for (VertexId v : g.edge(i)) {
        adj_[v].push_back(static_cast<int>(n_ + i));
        adj_[n_ + i].push_back(static_cast<int>(v));
      }
    }
  }

  std::vector<int> run() {
    const std::size_t total = n_ + m_;
    Partition p;
    p.order.resize(total);
    std::iota(p.order.begin(), p.order.end(), 0);
    p.cell.resize(total);
    for (std::size_t v = 0; v < total; ++v) p.cell[v] = v < n_ ? 0 : static_cast<int>(n_);
    if (!colors_.empty()) {
      // Vertex cells ordered by color value.
      std::stable_sort(p.order.begin(), p.order.begin() + static_cast<long>(n_),
                       [&](int a, int b) { return colors_[a] < colors_[b]; });
      for (std::size_t pos = 0; pos < n_; ++pos) {
        const int v = p.order[pos];
        p.cell[v] = pos > 0 && colors_[p.order[pos - 1]] == colors_[v] ? p.cell[p.order[pos - 1]]
                                                                       : static_cast<int>(pos);
      }
    }
    std::vector<int> prefix;
    search(std::move(p), prefix);
    return best_order_;
  }

 private:
  struct Partition {
    std::vector<int> order;  // nodes in cell order
    std::vector<int> cell;   // cell[node] = first position of the node's cell
  };

  std::size_t cell_size(const Partition& p, int start) const {
    std::size_t k = static_cast<std::size_t>(start);
    while (k < p.order.size() && p.cell[p.order[k]] == start) ++k;
    return k - static_cast<std::size_t>(start);
  }

  void refine(Partition& p) {
    const std::size_t total = p.order.size();
    std::vector<std::vector<int>> sig(total);
    std::size_t cells = count_cells(p);
    while (true) {
      for (std::size_t v = 0; v < total; ++v) {
        auto& s = sig[v];
        s.clear();
        s.push_back(p.cell[v]);
        for (int w : adj_[v]) s.push_back(p.cell[w]);
        std::sort(s.begin() + 1, s.end());
      }
      std::sort(p.order.begin(), p.order.end(),
                [&](int a, int b) { return sig[a] < sig[b]; });
      int start = 0;
      for (std::size_t pos = 0; pos < total; ++pos) {
        if (pos > 0 && sig[p.order[pos]] != sig[p.order[pos - 1]]) start = static_cast<int>(pos);
        p.cell[p.order[pos]] = start;
      }
      const std::size_t now = count_cells(p);
      if (now == cells) break;
      cells = now;
    }
  }

  static std::size_t count_cells(const Partition& p) {
    std::size_t c = 0;
    for (std::size_t pos = 0; pos < p.order.size(); ++pos)
      if (p.cell[p.order[pos]] == static_cast<int>(pos)) ++c;
    return c;
  }

  void individualize(Partition& p, int node) const {
    const int start = p.cell[node];
    const std::size_t size = cell_size(p, start);
    auto first = p.order.begin() + start;
    std::iter_swap(first, std::find(first, first + static_cast<long>(size), node));
    for (std::size_t k = 1; k < size; ++k) p.cell[p.order[start + k]] = start + 1;
  }

  std::vector<std::uint64_t> serialize(const Partition& p) const {
    std::vector<int> position(p.order.size());
    for (std::size_t pos = 0; pos < p.order.size(); ++pos) position[p.order[pos]] = static_cast<int>(pos);
    std::vector<std::uint64_t> rows(n_ * words_, 0);
    for (std::size_t pos = 0; pos < n_; ++pos) {
      for (int e : adj_[p.order[pos]]) {
        const std::size_t label = static_cast<std::size_t>(position[e]) - n_;
        rows[pos * words_ + label / 64] |= std::uint64_t{1} << (label % 64);
      }
    }
    return rows;
  }

  int find(std::vector<int>& parent, int v) const {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }

  // True if v lies in the orbit of an explored node under the found
  // automorphisms that fix the prefix pointwise.
  bool pruned(int v, const std::vector<int>& explored, const std::vector<int>& prefix) {
    std::vector<int> parent(adj_.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& gen : generators_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](int u) { return gen[u] == u; });
      if (!fixes) continue;
      for (std::size_t u = 0; u < gen.size(); ++u) {
        int a = find(parent, static_cast<int>(u)), b = find(parent, gen[u]);
        if (a != b) parent[a] = b;
      }
    }
    const int root = find(parent, v);
    return std::any_of(explored.begin(), explored.end(), [&](int u) { return find(parent, u) == root; });
  }

  void search(Partition p, std::vector<int>& prefix) {
    refine(p);
    int target = -1;
    for (std::size_t pos = 0; pos < p.order.size();) {
      const std::size_t size = cell_size(p, static_cast<int>(pos));
      if (size > 1) {
        target = static_cast<int>(pos);
        break;
      }
      pos += size;
    }
    if (target < 0) {
      leaf(p);
      return;
    }
    std::vector<int> members(p.order.begin() + target,
                             p.order.begin() + target + static_cast<long>(cell_size(p, target)));
    std::sort(members.begin(), members.end());
    std::vector<int> explored;
    for (int v : members) {
      if (!explored.empty() && pruned(v, explored, prefix)) continue;
      explored.push_back(v);
      Partition child = p;
      individualize(child, v);
      prefix.push_back(v);
      search(std::move(child), prefix);
      prefix.pop_back();
    }
  }

  void leaf(const Partition& p) {
    auto rows = serialize(p);
    if (best_order_.empty() || rows < best_rows_) {
      best_rows_ = std::move(rows);
      best_order_ = p.order;
    } else if (rows == best_rows_) {
      std::vector<int> gen(p.order.size());
      for (std::size_t pos = 0; pos < p.order.size(); ++pos) gen[best_order_[pos]] = p.order[pos];
      generators_.push_back(std::move(gen));
    }
  }

  std::size_t n_, m_;
  std::vector<std::vector<int>> adj_;
  std::size_t words_;
  std::vector<std::uint64_t> best_rows_;
  std::vector<int> best_order_;
  std::vector<std::vector<int>> generators_;
  std::vector<int> colors_;
};

}  // namespace detail

/// Canonical relabeling. With `colors`, only color-preserving isomorphisms
/// count and the key records the color of every canonical vertex.
inline CanonicalLabeling canonical_labeling(const Hypergraph& g, std::span<const int> colors = {}) {
  CanonicalLabeling out;
  out.label.assign(g.order(), 0);
  if (g.order() > 0) {
    auto order = detail::IncidenceCanonizer(g, colors).run();
    for (std::size_t pos = 0; pos < g.order(); ++pos) out.label[order[pos]] = static_cast<VertexId>(pos);
  }
  std::vector<Edge> edges;
  edges.reserve(g.size());
  for (const auto& e : g.edges()) {
    Edge r;
    r.reserve(e.size());
    for (VertexId v : e) r.push_back(out.label[v]);
    std::sort(r.begin(), r.end());
    edges.push_back(std::move(r));
  }
  std::sort(edges.begin(), edges.end());
  out.relabeled = Hypergraph(g.order(), std::move(edges));
  out.key = CanonicalKey{to_text(out.relabeled)};
  if (!colors.empty()) {
    std::vector<int> by_label(g.order());
    for (VertexId v = 0; v < g.order(); ++v) by_label[out.label[v]] = colors[v];
    out.key.bytes += "#";
    for (int c : by_label) out.key.bytes += " " + std::to_string(c);
    out.key.bytes += "\n";
  }
  return out;
}

inline CanonicalKey canonical_form(const Hypergraph& g, std::span<const int> colors = {}) {
  return canonical_labeling(g, colors).key;
}

inline bool isomorphic(const Hypergraph& a, const Hypergraph& b) {
  return a.order() == b.order() && a.size() == b.size() && canonical_form(a) == canonical_form(b);
}

}  // namespace distspec
