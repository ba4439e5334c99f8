#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "distspec/enumerate.hpp"
#include "distspec/lemma_checks.hpp"
#include "distspec/report.hpp"
#include "distspec/transforms.hpp"

namespace distspec {

struct SuiteOptions {
  std::optional<int> nmax;  // suite default when unset
  int trials = 0;           // random instances (entry suite)
  std::uint64_t seed = 1;
  double tol = kDefaultTolerance;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"two-edge", "sigma-split", "ordering", "monotonicity",
                                              "status-bound", "entry", "grafts", "rebalance"};
  return names;
}

inline int default_nmax(const std::string& suite) {
  if (suite == "two-edge" || suite == "entry" || suite == "grafts") return 8;
  if (suite == "rebalance") return 30;
  return 20;
}

/// "n: a-b c-d-e ..." on one line.
inline std::string one_line(const Hypergraph& g) {
  std::string s = std::to_string(g.order()) + ":";
  for (const auto& e : g.edges()) {
    s += ' ';
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "-" : "") + std::to_string(e[i]);
  }
  return s;
}

/// Every rank-3 hypertree with 2 <= n <= nmax, one per isomorphism class.
inline std::vector<Hypergraph> all_rank3_hypertrees(int nmax, int nmin = 2) {
  std::vector<Hypergraph> out;
  for (int n = nmin; n <= nmax; ++n)
    for (int k = 0; k <= (n - 1) / 2; ++k)
      for (auto& m : enumerate_hypertrees(n, k)) out.push_back(std::move(m.graph));
  return out;
}

namespace detail {

// Folds several outcomes on one instance into a single record.
inline Record merge(const std::string& suite, const std::string& instance, const std::vector<LemmaOutcome>& all,
                    const SpectralResult& s) {
  Record r{suite, instance, "pass", s.rho};
  Verdict worst = Verdict::pass;
  for (const auto& o : all) {
    r.relations += o.relations;
    r.margin = std::min(r.margin, o.margin);
    if (o.verdict == Verdict::fail && worst != Verdict::fail) {
      worst = Verdict::fail;
      r.detail = o.instance + ": " + o.detail;
    } else if (o.verdict == Verdict::inconclusive && worst == Verdict::pass) {
      worst = Verdict::inconclusive;
      r.detail = o.instance + ": " + o.detail;
    }
  }
  r.verdict = to_string(worst);
  return r;
}

inline Record entry_record(const Hypergraph& g, const std::string& instance, double tol) {
  const auto s = spectral_radius(g, tol);
  Certifier cert("entry", instance, s);
  for (VertexId u = 0; u < g.order(); ++u) {
    const auto nb = g.neighbors(u);
    for (VertexId v : nb)
      for (VertexId w : nb) {
        const auto nv = g.neighbors(v);
        if (v == w || std::binary_search(nv.begin(), nv.end(), w)) continue;
        cert.positive(entry_difference(g, s, u, v, w),
                      "u=" + std::to_string(u) + " v=" + std::to_string(v) + " w=" + std::to_string(w));
      }
  }
  auto o = std::move(cert).finish();
  return {"entry", instance, to_string(o.verdict), o.rho, o.margin, o.relations, o.detail};
}

// Tally of graft checks on one hypertree.
struct GraftTally {
  std::size_t held = 0, tied = 0, skipped = 0, inconclusive = 0, failures = 0;
  double margin = std::numeric_limits<double>::infinity();
  std::string first_failure;

  void add(const GraftReport& r, const std::string& what) {
    switch (r.hypothesis) {
      case Hypothesis::failed: ++skipped; return;
      case Hypothesis::inconclusive: ++inconclusive; return;
      case Hypothesis::tied: ++tied; break;
      case Hypothesis::held: ++held; break;
    }
    margin = std::min(margin, r.margin);
    if (!r.rho_increased && failures++ == 0) first_failure = what;
  }

  std::optional<Record> record(const std::string& suite, const std::string& instance, double rho) const {
    if (held + tied + inconclusive == 0) return std::nullopt;
    Record r{suite, instance, "pass", rho, margin, held + tied};
    if (failures) {
      r.verdict = "fail";
      r.detail = first_failure;
    } else if (held + tied == 0) {
      r.verdict = "inconclusive";
    }
    if (r.detail.empty())
      r.detail = "tied=" + std::to_string(tied) + " inconclusive-hypothesis=" + std::to_string(inconclusive) +
                 " hypothesis-failed=" + std::to_string(skipped);
    return r;
  }
};

inline void edge_move_records(const Hypergraph& g, double tol, std::vector<Record>& out) {
  GraftTally tally;
  for (VertexId u = 0; u < g.order(); ++u) {
    const auto base = branches_at(g, u);
    const std::size_t t = base.branches.size();
    if (t < 3) continue;
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = 0; j < t; ++j) {
        if (i == j) continue;
        BranchSplit split{u, {base.branches[i], base.branches[j]}};
        for (std::size_t k = 0; k < t; ++k)
          if (k != i && k != j) split.branches.push_back(base.branches[k]);
        for (VertexId v : split.branches[1])
          for (std::uint32_t mask = 1; mask < (1u << (t - 2)); ++mask) {
            std::vector<std::size_t> moved;
            for (std::size_t b = 0; b < t - 2; ++b)
              if (mask >> b & 1) moved.push_back(b + 3);
            tally.add(check_edge_move_lemma(g, split, v, moved, tol),
                      "u=" + std::to_string(u) + " v=" + std::to_string(v) + " mask=" + std::to_string(mask));
          }
      }
  }
  if (auto r = tally.record("grafts/edge-move", one_line(g), spectral_radius(g, tol).rho)) out.push_back(*r);
}

inline void vertex_move_records(const Hypergraph& g, double tol, std::vector<Record>& out) {
  GraftTally tally;
  for (EdgeIndex e = 0; e < g.size(); ++e) {
    const Edge& edge = g.edge(e);
    const std::size_t t = edge.size();
    if (t < 3) continue;
    const auto label = component_labels(g, [&](EdgeIndex i) { return i == e; });
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = 0; j < t; ++j) {
        if (i == j) continue;
        EdgeSplit split{e, {edge[i], edge[j]}};
        for (std::size_t k = 0; k < t; ++k)
          if (k != i && k != j) split.w.push_back(edge[k]);
        auto size_of = [&](VertexId w) { return std::count(label.begin(), label.end(), label[w]); };
        if (size_of(split.w[0]) < 2 || size_of(split.w[1]) < 2) continue;
        for (EdgeIndex target = 0; target < g.size(); ++target) {
          const Edge& te = g.edge(target);
          if (target == e || label[te[0]] != label[split.w[1]]) continue;
          for (std::uint32_t mask = 1; mask < (1u << (t - 2)); ++mask) {
            std::vector<std::size_t> moved;
            for (std::size_t b = 0; b < t - 2; ++b)
              if (mask >> b & 1) moved.push_back(b + 3);
            tally.add(check_vertex_move_lemma(g, split, moved, target, tol),
                      "e=" + std::to_string(e) + " w1=" + std::to_string(split.w[0]) +
                          " w2=" + std::to_string(split.w[1]) + " e'=" + std::to_string(target));
          }
        }
      }
  }
  if (auto r = tally.record("grafts/vertex-move", one_line(g), spectral_radius(g, tol).rho)) out.push_back(*r);
}

}  // namespace detail

/// Runs one named suite over its grid. Throws std::invalid_argument for an
/// unknown suite name.
inline std::vector<Record> run_suite(const std::string& suite, const SuiteOptions& opts) {
  const int nmax = opts.nmax.value_or(default_nmax(suite));
  const double tol = opts.tol;
  std::vector<Record> out;

  if (suite == "two-edge") {
    for (auto& g : all_rank3_hypertrees(nmax)) {
      const auto t = Analyzed::of(std::move(g), tol);
      std::vector<LemmaOutcome> all;
      for (const auto& c : two_edge_choices(t)) all.push_back(check_two_edge_identity(t, c));
      if (!all.empty()) out.push_back(detail::merge(suite, one_line(t.graph), all, t.spectrum));
    }
  } else if (suite == "sigma-split") {
    for (const auto& p : family_grid(nmax, [](const HypertreeParams& p) { return 2 * p.b() >= p.ell(); }))
      out.push_back(to_record(suite, check_sigma_split(p.n(), p.a(), p.b(), tol)));
  } else if (suite == "ordering" || suite == "monotonicity" || suite == "status-bound") {
    const bool status = suite == "status-bound";
    for (const auto& p : family_grid(nmax, [&](const HypertreeParams& p) {
           return 2 * p.b() < p.ell() && (!status || p.r() > 2);
         })) {
      const auto o = suite == "ordering"       ? check_perron_ordering(p.n(), p.a(), p.b(), tol)
                     : suite == "monotonicity" ? check_difference_monotonicity(p.n(), p.a(), p.b(), tol)
                                               : check_status_bound(p.n(), p.a(), p.b(), tol);
      out.push_back(to_record(suite, o));
    }
  } else if (suite == "entry") {
    for (const auto& g : all_rank3_hypertrees(nmax, 3)) out.push_back(detail::entry_record(g, one_line(g), tol));
    std::mt19937_64 rng(opts.seed);
    for (int trial = 0; trial < opts.trials; ++trial) {
      const int n = 3 + static_cast<int>(rng() % 10);
      const auto g = random_connected_hypergraph(rng, n);
      out.push_back(detail::entry_record(g, "random#" + std::to_string(trial) + " " + one_line(g), tol));
    }
  } else if (suite == "grafts") {
    for (const auto& g : all_rank3_hypertrees(nmax, 4)) {
      detail::edge_move_records(g, tol, out);
      detail::vertex_move_records(g, tol, out);
    }
  } else if (suite == "rebalance") {
    for (const auto& p : family_grid(nmax, {})) {
      const auto r = check_rebalance(p.n(), p.a(), p.b(), tol);
      out.push_back({suite, p.label(), r.rho_increased ? "pass" : "fail", r.after.rho, r.margin, 1,
                     "rho(" + HypertreeParams(p.n(), p.a() + 1, p.b() - 1).label() + ") - rho(" + p.label() + ")"});
    }
  } else {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
  return out;
}

}  // namespace distspec
