#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "distspec/families.hpp"
#include "distspec/hypergraph.hpp"
#include "distspec/spectral.hpp"

namespace distspec {

/// A lemma applied outside its hypotheses.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct LemmaOutcome {
  std::string lemma;
  std::string instance;
  Verdict verdict = Verdict::pass;
  /// Smallest slack over every asserted relation: the gap of a strict
  /// inequality, or tolerance minus error for an identity.
  double margin = std::numeric_limits<double>::infinity();
  std::size_t relations = 0;
  double rho = 0.0;
  double residual = 0.0;
  /// First relation that failed or was not certified.
  std::string detail;
};

/// Hypertree with its distance matrix and spectrum, computed once.
struct Analyzed {
  Hypergraph graph;
  DistanceMatrix dist;
  SpectralResult spectrum;

  static Analyzed of(Hypergraph g, double tol = kDefaultTolerance) {
    auto d = distance_matrix(g);
    auto s = spectral_radius(d, tol);
    return {std::move(g), std::move(d), std::move(s)};
  }
  double x(VertexId v) const { return spectrum.perron.at(v); }
  double rho() const { return spectrum.rho; }
};

namespace detail {

// Accumulates relations into one outcome. Strict inequalities need a gap
// beyond the guard band; identities need |error| <= identity tolerance.
class Certifier {
 public:
  Certifier(std::string lemma, std::string instance, const SpectralResult& s) {
    out_.lemma = std::move(lemma);
    out_.instance = std::move(instance);
    out_.rho = s.rho;
    out_.residual = s.residual;
    guard_ = s.guard_band();
    identity_tol_ = 100.0 * s.residual;
  }

  /// Asserts gap > 0.
  void positive(double gap, const std::string& what) {
    note(gap, gap > guard_ ? Verdict::pass : gap < -guard_ ? Verdict::fail : Verdict::inconclusive, what);
  }

  /// Asserts lhs == rhs.
  void identity(double lhs, double rhs, const std::string& what) {
    const double slack = identity_tol_ - std::abs(lhs - rhs);
    note(slack, slack >= 0 ? Verdict::pass : Verdict::fail, what);
  }

  LemmaOutcome finish() && { return std::move(out_); }

 private:
  void note(double slack, Verdict v, const std::string& what) {
    ++out_.relations;
    out_.margin = std::min(out_.margin, slack);
    if (v == Verdict::pass) return;
    if (out_.verdict == Verdict::pass || (v == Verdict::fail && out_.verdict != Verdict::fail)) {
      out_.verdict = v;
      out_.detail = what;
    }
  }

  LemmaOutcome out_;
  double guard_ = 0.0;
  double identity_tol_ = 0.0;
};

inline std::vector<VertexId> equidistant(const DistanceMatrix& d, VertexId a, VertexId b) {
  std::vector<VertexId> out;
  for (VertexId w = 0; w < d.order(); ++w)
    if (d(w, a) == d(w, b)) out.push_back(w);
  return out;
}

inline void require_family_hypotheses(int n, int a, int b) {
  if (a < 0 || b < a + 2 || 2 * (a + b) >= n - 1)
    throw HypothesisError("need a >= 0, b >= a + 2 and 2(a+b) < n - 1, got T(" + std::to_string(n) +
                          "," + std::to_string(a) + "," + std::to_string(b) + ")");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Two-edge identities on hypertrees

/// One admissible choice for the two-edge identities.
struct TwoEdgeChoice {
  EdgeIndex e1, e2;
  VertexId u1, v1, u2, v2;
};

inline bool two_edge_admissible(const Analyzed& t, const TwoEdgeChoice& c) {
  const auto& e1 = t.graph.edge(c.e1);
  const auto& e2 = t.graph.edge(c.e2);
  auto in = [](const Edge& e, VertexId v) { return std::binary_search(e.begin(), e.end(), v); };
  return c.e1 != c.e2 && in(e1, c.u1) && in(e1, c.v1) && in(e2, c.u2) && in(e2, c.v2) &&
         t.dist(c.u1, c.u2) == t.dist(c.v1, c.v2) + 2;
}

/// Every admissible (e1, e2, u1, v1, u2, v2) of a hypertree.
inline std::vector<TwoEdgeChoice> two_edge_choices(const Analyzed& t) {
  std::vector<TwoEdgeChoice> out;
  const auto& g = t.graph;
  for (EdgeIndex e1 = 0; e1 < g.size(); ++e1)
    for (EdgeIndex e2 = 0; e2 < g.size(); ++e2) {
      if (e1 == e2) continue;
      for (VertexId u1 : g.edge(e1))
        for (VertexId v1 : g.edge(e1))
          for (VertexId u2 : g.edge(e2))
            for (VertexId v2 : g.edge(e2)) {
              TwoEdgeChoice c{e1, e2, u1, v1, u2, v2};
              if (u1 != v1 && u2 != v2 && two_edge_admissible(t, c)) out.push_back(c);
            }
    }
  return out;
}

/// With T_i the component of T - e_i holding u_i and A_i the vertices
/// equidistant from u_i and v_i:
///   rho (x_u1 - x_u2) - rho (x_v1 - x_v2) = 2 (s(T_2) - s(T_1)) + s(A_2) - s(A_1).
/// When e_i = {u_i, v_i, w_i} with w_i pendant, also checks the two
/// companion identities in x_w.
inline LemmaOutcome check_two_edge_identity(const Analyzed& t, const TwoEdgeChoice& c) {
  if (!is_hypertree(t.graph)) throw HypothesisError("two-edge identity needs a hypertree");
  if (!two_edge_admissible(t, c))
    throw HypothesisError("need u_i, v_i in e_i and d(u1,u2) = d(v1,v2) + 2");

  const auto& g = t.graph;
  const auto& x = t.spectrum.perron;
  const double rho = t.rho();
  const auto t1 = component_without_edge(g, c.e1, c.u1);
  const auto t2 = component_without_edge(g, c.e2, c.u2);
  const double s_t1 = sigma(x, t1), s_t2 = sigma(x, t2);
  const double s_a1 = sigma(x, detail::equidistant(t.dist, c.u1, c.v1));
  const double s_a2 = sigma(x, detail::equidistant(t.dist, c.u2, c.v2));

  std::string instance = "e" + std::to_string(c.e1) + ",e" + std::to_string(c.e2) + " u1=" +
                         std::to_string(c.u1) + " v1=" + std::to_string(c.v1) + " u2=" +
                         std::to_string(c.u2) + " v2=" + std::to_string(c.v2);
  detail::Certifier cert("two-edge", std::move(instance), t.spectrum);
  cert.identity(rho * (x[c.u1] - x[c.u2]) - rho * (x[c.v1] - x[c.v2]),
                2 * (s_t2 - s_t1) + s_a2 - s_a1, "identity (i)");

  auto third = [&](EdgeIndex e, VertexId u, VertexId v) -> std::optional<VertexId> {
    const auto& edge = g.edge(e);
    if (edge.size() != 3) return std::nullopt;
    for (VertexId w : edge)
      if (w != u && w != v) return degree(g, w) == 1 ? std::optional<VertexId>(w) : std::nullopt;
    return std::nullopt;
  };
  const auto w1 = third(c.e1, c.u1, c.v1), w2 = third(c.e2, c.u2, c.v2);
  if (w1 && w2) {
    const double dw = x[*w1] - x[*w2];
    cert.identity((rho + 1) * dw - rho * (x[c.v1] - x[c.v2]), -dw + s_t2 - s_t1, "identity (ii-a)");
    cert.identity(rho * (x[c.u1] - x[c.u2]) - (rho + 1) * dw, s_t2 - s_t1, "identity (ii-b)");
  }
  return std::move(cert).finish();
}

// ---------------------------------------------------------------------------
// Perron-entry properties of T(n,a,b)

/// For b >= l/2: with e the edge through v_{l-b} and v_{l-b+1}, the
/// component of T - e at v_{l-b} carries less Perron weight than the one at
/// v_{l-b+1}.
inline LemmaOutcome check_sigma_split(int n, int a, int b, double tol = kDefaultTolerance) {
  detail::require_family_hypotheses(n, a, b);
  const HypertreeParams p(n, a, b);
  if (2 * b < p.ell()) throw HypothesisError("sigma split needs b >= l/2 for " + p.label());
  const auto t = Analyzed::of(t_hypertree(p), tol);
  const int q = p.ell() - b;
  const auto e = static_cast<EdgeIndex>(q - 1);  // e_q = {v_q, v_{q+1}, w_q}
  const auto t1 = component_without_edge(t.graph, e, p.v(q));
  const auto t2 = component_without_edge(t.graph, e, p.v(q + 1));
  detail::Certifier cert("sigma-split", p.label(), t.spectrum);
  cert.positive(sigma(t.spectrum.perron, t2) - sigma(t.spectrum.perron, t1), "s(T_1) < s(T_2)");
  return std::move(cert).finish();
}

inline void require_short_tail(const HypertreeParams& p) {
  if (2 * p.b() >= p.ell()) throw HypothesisError("needs b < l/2 for " + p.label());
}

/// For b < l/2: x_{v_p} > x_{v_{p1+1}}; x_{v_i} > x_{v_{l+1-i}} and
/// x_{w_i} > x_{w_{l-i}} for i <= a; x_{v_{a+1}} > x_{v_{l-a}}.
inline LemmaOutcome check_perron_ordering(int n, int a, int b, double tol = kDefaultTolerance) {
  detail::require_family_hypotheses(n, a, b);
  const HypertreeParams p(n, a, b);
  require_short_tail(p);
  const auto t = Analyzed::of(t_hypertree(p), tol);
  const int ell = p.ell();
  auto xv = [&](int i) { return t.x(p.v(i)); };
  auto xw = [&](int i) { return t.x(p.w(i)); };
  detail::Certifier cert("ordering", p.label(), t.spectrum);
  cert.positive(xv(p.p()) - xv(p.p1() + 1), "(i) x_v[p] > x_v[p1+1]");
  for (int i = 1; i <= a; ++i) {
    cert.positive(xv(i) - xv(ell + 1 - i), "(ii) x_v[" + std::to_string(i) + "] > x_v[l+1-i]");
    cert.positive(xw(i) - xw(ell - i), "(ii) x_w[" + std::to_string(i) + "] > x_w[l-i]");
  }
  cert.positive(xv(a + 1) - xv(ell - a), "(ii) x_v[a+1] > x_v[l-a]");
  return std::move(cert).finish();
}

/// For b < l/2: the difference chains of (i) for i <= a, the strictly
/// decreasing positive chain x_{v_{a+1+i}} - x_{v_{l-b+1-i}} of (ii), and
/// x_{v_{l-b+1}} < x_{v_{l-a}} of (iii).
inline LemmaOutcome check_difference_monotonicity(int n, int a, int b, double tol = kDefaultTolerance) {
  detail::require_family_hypotheses(n, a, b);
  const HypertreeParams p(n, a, b);
  require_short_tail(p);
  const auto t = Analyzed::of(t_hypertree(p), tol);
  const int ell = p.ell();
  auto xv = [&](int i) { return t.x(p.v(i)); };
  auto xw = [&](int i) { return t.x(p.w(i)); };
  detail::Certifier cert("monotonicity", p.label(), t.spectrum);

  for (int i = 1; i <= a; ++i) {
    const double next = xv(i + 1) - xv(ell + 1 - (i + 1));
    cert.positive(next - (xv(i) - xv(ell + 1 - i)), "(i) v-chain at i=" + std::to_string(i));
    // Printed as x_{v_{i+1}} - x_{v_{l-i}}, identical to `next`.
    cert.positive(xv(i + 1) - xv(ell - i) - (xw(i) - xw(ell - i)), "(i) w-chain at i=" + std::to_string(i));
  }
  auto gap = [&](int i) { return xv(a + 1 + i) - xv(ell - b + 1 - i); };
  const int last = (ell - b - a - 1) / 2 - 1;
  for (int i = 1; i <= last; ++i) {
    cert.positive(gap(i) - gap(i + 1), "(ii) decreasing at i=" + std::to_string(i));
    cert.positive(gap(i + 1), "(ii) positive at i=" + std::to_string(i + 1));
  }
  cert.positive(xv(ell - a) - xv(ell - b + 1), "(iii) x_v[l-b+1] < x_v[l-a]");
  return std::move(cert).finish();
}

/// (2a+1)(r-1) + r/(r-1) * sum_{i=1}^{floor((r-1)/2)} (r - 2i)
inline double status_lower_bound(int a, int r) {
  if (r <= 1) throw std::invalid_argument("status bound needs r >= 2");
  double s = 0.0;
  for (int i = 1; i <= (r - 1) / 2; ++i) s += r - 2 * i;
  return (2 * a + 1) * (r - 1) + static_cast<double>(r) / (r - 1) * s;
}

/// For b < l/2 (so r = l - b - a > 2): rho(T(n,a,b)) exceeds
/// status_lower_bound(a, r).
inline LemmaOutcome check_status_bound(int n, int a, int b, double tol = kDefaultTolerance) {
  detail::require_family_hypotheses(n, a, b);
  const HypertreeParams p(n, a, b);
  require_short_tail(p);
  if (p.r() <= 2) throw HypothesisError("status bound needs r > 2 for " + p.label());
  const auto t = Analyzed::of(t_hypertree(p), tol);
  detail::Certifier cert("status-bound", p.label(), t.spectrum);
  cert.positive(t.rho() - status_lower_bound(a, p.r()), "rho > bound");
  return std::move(cert).finish();
}

/// Triples (n, a, b) with 2 <= n <= nmax, a >= 0, b >= a + 2,
/// 2(a+b) < n - 1 that also satisfy `extra`.
inline std::vector<HypertreeParams> family_grid(int nmax, const std::function<bool(const HypertreeParams&)>& extra) {
  std::vector<HypertreeParams> out;
  for (int n = 2; n <= nmax; ++n)
    for (int a = 0; 2 * (2 * a + 2) < n - 1; ++a)
      for (int b = a + 2; 2 * (a + b) < n - 1; ++b) {
        HypertreeParams p(n, a, b);
        if (!extra || extra(p)) out.push_back(p);
      }
  return out;
}

}  // namespace distspec
