#pragma once

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "distspec/canonical.hpp"
#include "distspec/hypergraph.hpp"

namespace distspec {

/// Parameters of T(n,a,b): the loose path on v_1..v_l (l = n-a-b) whose
/// edges e_1..e_a and e_{l-b}..e_{l-1} each carry one extra vertex w_i.
///
/// Vertex ids: v_i -> i-1, then the a+b w-vertices in increasing edge index.
class HypertreeParams {
 public:
  HypertreeParams(int n, int a, int b) : n_(n), a_(a), b_(b) {
    if (n < 2) throw std::invalid_argument("T(n,a,b): n must be at least 2");
    if (a < 0 || a > b) throw std::invalid_argument("T(n,a,b): need 0 <= a <= b");
    if (a + b > (n - 1) / 2) throw std::invalid_argument("T(n,a,b): need a + b <= floor((n-1)/2)");
  }

  int n() const { return n_; }
  int a() const { return a_; }
  int b() const { return b_; }
  /// Order of the underlying path.
  int ell() const { return n_ - a_ - b_; }
  /// Number of size-2 edges between the two groups of size-3 edges.
  int r() const { return ell() - b_ - a_; }
  int p() const { return ell() / 2; }
  int p1() const { return (ell() + 1) / 2; }

  VertexId v(int i) const {
    if (i < 1 || i > ell()) throw std::out_of_range("T(n,a,b): no vertex v_" + std::to_string(i));
    return static_cast<VertexId>(i - 1);
  }

  bool has_w(int i) const { return (i >= 1 && i <= a_) || (i >= ell() - b_ && i <= ell() - 1); }

  VertexId w(int i) const {
    if (i >= 1 && i <= a_) return static_cast<VertexId>(ell() + i - 1);
    if (i >= ell() - b_ && i <= ell() - 1) return static_cast<VertexId>(ell() + a_ + i - (ell() - b_));
    throw std::out_of_range("T(n,a,b): no vertex w_" + std::to_string(i));
  }

  std::string label() const {
    return "T(" + std::to_string(n_) + "," + std::to_string(a_) + "," + std::to_string(b_) + ")";
  }

 private:
  int n_, a_, b_;
};

/// Parameters of S(p,q;l): proper saw-graphs of lengths p and q joined by a
/// path of length l.
class SawParams {
 public:
  SawParams(int p, int q, int ell) : p_(p), q_(q), ell_(ell) {
    if (p < 0 || q < 0 || ell < 0) throw std::invalid_argument("S(p,q;l): parameters must be nonnegative");
    if (order() < 2) throw std::invalid_argument("S(p,q;l): order must be at least 2");
  }

  int p() const { return p_; }
  int q() const { return q_; }
  int ell() const { return ell_; }
  int k() const { return p_ + q_; }
  int order() const { return 2 * p_ + 2 * q_ + ell_ + 1; }

  std::string label() const {
    return "S(" + std::to_string(p_) + "," + std::to_string(q_) + ";" + std::to_string(ell_) + ")";
  }

 private:
  int p_, q_, ell_;
};

inline Hypergraph path(int n) {
  if (n < 1) throw std::invalid_argument("path: order must be positive");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({VertexId(i), VertexId(i + 1)});
  return Hypergraph(static_cast<std::size_t>(n), std::move(edges));
}

inline Hypergraph t_hypertree(const HypertreeParams& t) {
  std::vector<Edge> edges;
  for (int i = 1; i < t.ell(); ++i) {
    Edge e{t.v(i), t.v(i + 1)};
    if (t.has_w(i)) e.push_back(t.w(i));
    edges.push_back(std::move(e));
  }
  return Hypergraph(static_cast<std::size_t>(t.n()), std::move(edges));
}

/// S(p,q;l) with the same id layout as T: path vertices first, then the
/// triangle apexes in increasing path-edge index.
inline Hypergraph saw_graph(const SawParams& s) {
  const int path_len = s.p() + s.q() + s.ell() + 1;
  std::vector<Edge> edges;
  VertexId apex = static_cast<VertexId>(path_len);
  for (int i = 1; i < path_len; ++i) {
    const VertexId a = static_cast<VertexId>(i - 1), b = static_cast<VertexId>(i);
    edges.push_back({a, b});
    if (i <= s.p() || i >= path_len - s.q()) {
      edges.push_back({a, apex});
      edges.push_back({b, apex});
      ++apex;
    }
  }
  std::sort(edges.begin(), edges.end());
  return Hypergraph(static_cast<std::size_t>(s.order()), std::move(edges));
}

/// Checks O_{T(n,a,b)} is isomorphic to S(a,b;n-2(a+b)-1).
inline bool check_o_correspondence(const HypertreeParams& t) {
  const SawParams s(t.a(), t.b(), t.n() - 2 * (t.a() + t.b()) - 1);
  return canonical_form(two_section(t_hypertree(t))) == canonical_form(saw_graph(s));
}

/// Family mini-grammar: `P:n`, `T:n,a,b`, `S:p,q,l`.
struct FamilySpec {
  char kind = 'P';
  std::vector<int> args;

  Hypergraph build() const {
    switch (kind) {
      case 'P': return path(args.at(0));
      case 'T': return t_hypertree(HypertreeParams(args.at(0), args.at(1), args.at(2)));
      case 'S': return saw_graph(SawParams(args.at(0), args.at(1), args.at(2)));
    }
    throw std::invalid_argument("unknown family kind");
  }

  std::string text() const {
    std::string out(1, kind);
    out += ':';
    for (std::size_t i = 0; i < args.size(); ++i) out += (i ? "," : "") + std::to_string(args[i]);
    return out;
  }
};

inline FamilySpec parse_family(std::string_view text) {
  if (text.size() < 3 || text[1] != ':')
    throw std::invalid_argument("family spec must look like P:n, T:n,a,b or S:p,q,l");
  FamilySpec spec;
  spec.kind = text[0];
  const std::size_t want = spec.kind == 'P' ? 1 : (spec.kind == 'T' || spec.kind == 'S') ? 3 : 0;
  if (want == 0) throw std::invalid_argument("unknown family '" + std::string(1, text[0]) + "'");
  std::string_view rest = text.substr(2);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    auto field = rest.substr(0, comma);
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty())
      throw std::invalid_argument("family spec: bad integer '" + std::string(field) + "'");
    spec.args.push_back(value);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
    if (rest.empty()) throw std::invalid_argument("family spec: trailing comma");
  }
  if (spec.args.size() != want)
    throw std::invalid_argument("family spec '" + std::string(text) + "' expects " +
                                std::to_string(want) + " parameter(s)");
  spec.build();  // validates the parameters
  return spec;
}

}  // namespace distspec
