#include <gtest/gtest.h>

#include <random>

#include "distspec/enumerate.hpp"
#include "distspec/families.hpp"
#include "distspec/suites.hpp"
#include "distspec/transforms.hpp"
#include "support/oracles.hpp"

using namespace distspec;

namespace {

GraftErrc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const GraftError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no GraftError thrown";
  return GraftErrc::bad_edge_index;
}

std::size_t excess(const Hypergraph& g) {
  std::size_t s = 0;
  for (const auto& e : g.edges()) s += e.size() - 1;
  return s;
}

const Hypergraph kStar(4, {{0, 1}, {0, 2}, {0, 3}});

}  // namespace

TEST(MoveEdges, Examples) {
  EXPECT_TRUE(same_edge_set(move_edges(kStar, 0, 1, {2}), Hypergraph(4, {{0, 1}, {0, 2}, {1, 3}})));
  EXPECT_EQ(move_edges(kStar, 0, 1, {}), kStar);
}

TEST(MoveEdges, NamedErrors) {
  EXPECT_EQ(code_of([] { move_edges(kStar, 0, 1, {0}); }), GraftErrc::target_in_edge);
  EXPECT_EQ(code_of([] { move_edges(kStar, 1, 2, {2}); }), GraftErrc::source_not_in_edge);
  EXPECT_EQ(code_of([] { move_edges(Hypergraph(3, {{0, 1}, {0, 2}, {1, 2}}), 0, 1, {1}); }),
            GraftErrc::duplicate_result_edge);
  EXPECT_EQ(code_of([] { move_edges(kStar, 0, 1, {7}); }), GraftErrc::bad_edge_index);
  EXPECT_STREQ(to_string(GraftErrc::target_in_edge), "u-in-edge");
  EXPECT_STREQ(to_string(GraftErrc::source_not_in_edge), "v-not-in-edge");
}

TEST(MoveEdges, ReversibleAndPreservesHypertrees) {
  std::mt19937_64 rng(67);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 9);
    const auto g = random_connected_hypergraph(rng, n, 3, 0);
    const auto from = static_cast<VertexId>(rng() % g.order());
    const auto& inc = g.incident(from);
    std::vector<EdgeIndex> which;
    for (EdgeIndex e : inc)
      if (rng() % 2) which.push_back(e);
    auto to = static_cast<VertexId>(rng() % g.order());
    bool valid = to != from;
    for (EdgeIndex e : which) valid = valid && !std::binary_search(g.edge(e).begin(), g.edge(e).end(), to);
    if (!valid) continue;
    Hypergraph h;
    try {
      h = move_edges(g, from, to, which);
    } catch (const GraftError& e) {
      EXPECT_EQ(e.code(), GraftErrc::duplicate_result_edge);
      continue;
    }
    EXPECT_EQ(h.order(), g.order());
    EXPECT_EQ(h.size(), g.size());
    EXPECT_EQ(excess(h), excess(g));
    EXPECT_TRUE(same_edge_set(move_edges(h, to, from, which), g));
    // Hypertree preserved iff `to` stays reachable from `from` without the moved edges.
    const auto label = component_labels(g, [&](EdgeIndex i) {
      return std::find(which.begin(), which.end(), i) != which.end();
    });
    if (label[from] == label[to]) {
      EXPECT_TRUE(is_hypertree(h)) << to_text(g);
      EXPECT_EQ(is_hypertree(h), !has_loose_cycle(h));
      ++checked;
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(MoveVertices, Examples) {
  const Hypergraph g(5, {{0, 1}, {2, 3, 4}});
  EXPECT_TRUE(same_edge_set(move_vertices(g, 1, 0, {4}), Hypergraph(5, {{0, 1, 4}, {2, 3}})));
  EXPECT_EQ(move_vertices(g, 1, 0, {}), g);
}

TEST(MoveVertices, NamedErrors) {
  const Hypergraph g(6, {{0, 1}, {2, 3, 4}, {1, 2, 5}});
  EXPECT_EQ(code_of([&] { move_vertices(g, 1, 0, {0}); }), GraftErrc::not_in_source);
  EXPECT_EQ(code_of([&] { move_vertices(g, 1, 2, {2}); }), GraftErrc::already_in_target);
  EXPECT_EQ(code_of([&] { move_vertices(g, 1, 0, {3, 4}); }), GraftErrc::source_too_small);
  EXPECT_EQ(code_of([&] { move_vertices(g, 1, 1, {3}); }), GraftErrc::same_edge);
  EXPECT_EQ(code_of([&] { move_vertices(g, 9, 1, {3}); }), GraftErrc::bad_edge_index);
  EXPECT_EQ(code_of([] { move_vertices(Hypergraph(4, {{0, 1, 2}, {0, 2}, {0, 1}, {2, 3}}), 0, 3, {1}); }),
            GraftErrc::duplicate_result_edge);
}

TEST(MoveVertices, ReversibleAndPreservesCounts) {
  std::mt19937_64 rng(71);
  int moved = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = random_connected_hypergraph(rng, 4 + static_cast<int>(rng() % 8), 4, 2);
    const auto s = static_cast<EdgeIndex>(rng() % g.size()), t = static_cast<EdgeIndex>(rng() % g.size());
    if (s == t || g.edge(s).size() < 3) continue;
    const VertexId v = g.edge(s)[rng() % g.edge(s).size()];
    Hypergraph h;
    try {
      h = move_vertices(g, s, t, {v});
    } catch (const GraftError&) {
      continue;
    }
    ++moved;
    EXPECT_EQ(h.order(), g.order());
    EXPECT_EQ(excess(h), excess(g));
    EXPECT_TRUE(same_edge_set(move_vertices(h, t, s, {v}), g));
  }
  EXPECT_GT(moved, 30);
}

TEST(MoveVertices, RebalanceStepYieldsTheNextHypertree) {
  for (const auto& p : family_grid(16, {})) {
    const auto g = t_hypertree(p);
    const int ell = p.ell();
    const auto h = move_vertices(g, EdgeIndex(ell - p.b() - 1), EdgeIndex(p.a()), {p.w(ell - p.b())});
    EXPECT_TRUE(isomorphic(h, t_hypertree(HypertreeParams(p.n(), p.a() + 1, p.b() - 1)))) << p.label();
  }
}

TEST(BranchesAt, SplitsAtCutVertex) {
  const Hypergraph spider(7, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}});
  const auto split = branches_at(spider, 0);
  EXPECT_EQ(split.branches, (std::vector<std::vector<VertexId>>{{1, 2}, {3, 4}, {5, 6}}));
  EXPECT_EQ(branches_at(spider, 2).branches.size(), 1u);
}

TEST(EdgeMoveLemma, SymmetricSpider) {
  const Hypergraph spider(7, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}});
  const auto r = check_edge_move_lemma(spider, branches_at(spider, 0), 4, {3});
  EXPECT_EQ(r.hypothesis, Hypothesis::tied);
  EXPECT_TRUE(r.hypothesis_held);
  EXPECT_TRUE(r.rho_increased);
  EXPECT_NEAR(r.after.rho, spectral_radius(path(7)).rho, 1e-9);
  EXPECT_DOUBLE_EQ(r.margin, r.after.rho - r.before.rho);
  EXPECT_TRUE(r.consistent());
}

TEST(EdgeMoveLemma, BadDecompositions) {
  const Hypergraph spider(7, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}});
  EXPECT_THROW(check_edge_move_lemma(path(5), branches_at(path(5), 2), 3, {3}), DecompositionError);
  auto split = branches_at(spider, 0);
  EXPECT_THROW(check_edge_move_lemma(spider, split, 2, {3}), DecompositionError);  // v not in branch 2
  EXPECT_THROW(check_edge_move_lemma(spider, split, 4, {}), DecompositionError);
  EXPECT_THROW(check_edge_move_lemma(spider, split, 4, {2}), DecompositionError);
  split.branches[0] = {1};
  split.branches[1] = {2, 3, 4};
  EXPECT_THROW(check_edge_move_lemma(spider, split, 4, {3}), DecompositionError);
}

TEST(VertexMoveLemma, SymmetricSides) {
  const Hypergraph g(6, {{0, 1, 2}, {0, 3}, {1, 4}, {2, 5}});
  const auto r = check_vertex_move_lemma(g, EdgeSplit{0, {0, 1, 2}}, {3}, 2);
  EXPECT_EQ(r.hypothesis, Hypothesis::tied);
  EXPECT_TRUE(r.hypothesis_held);
  EXPECT_TRUE(r.rho_increased);
}

TEST(VertexMoveLemma, BadSplits) {
  const Hypergraph g(4, {{0, 1, 2}, {0, 3}});
  EXPECT_THROW(check_vertex_move_lemma(g, EdgeSplit{0, {0, 1, 2}}, {3}, 1), DecompositionError);  // |H2| = 1
  const Hypergraph h(6, {{0, 1, 2}, {0, 3}, {1, 4}, {2, 5}});
  EXPECT_THROW(check_vertex_move_lemma(h, EdgeSplit{0, {0, 1, 3}}, {3}, 2), DecompositionError);
  EXPECT_THROW(check_vertex_move_lemma(h, EdgeSplit{0, {0, 1, 2}}, {3}, 1), DecompositionError);  // e' in H1
  EXPECT_THROW(check_vertex_move_lemma(h, EdgeSplit{1, {0, 3}}, {3}, 2), DecompositionError);
  EXPECT_THROW(check_vertex_move_lemma(h, EdgeSplit{0, {0, 1, 2}}, {2}, 2), DecompositionError);
}

// Hypothesis held implies rho increased, over every decomposition of every
// rank-3 hypertree with n <= 8.
TEST(GraftLemmas, ExhaustiveUpToEight) {
  SuiteOptions opts;
  opts.nmax = 8;
  std::size_t edge_moves = 0, vertex_moves = 0;
  for (const auto& r : run_suite("grafts", opts)) {
    EXPECT_NE(r.verdict, "fail") << r.suite << " " << r.instance << " " << r.detail;
    (r.suite == "grafts/edge-move" ? edge_moves : vertex_moves) += r.relations;
  }
  EXPECT_GT(edge_moves, 1000u);
  EXPECT_GT(vertex_moves, 100u);
}

TEST(EntryInequality, Examples) {
  EXPECT_TRUE(check_entry_inequality(path(3), 1, 0, 2));
  EXPECT_THROW(check_entry_inequality(Hypergraph(3, {{0, 1, 2}}), 0, 1, 2), std::invalid_argument);
  EXPECT_THROW(check_entry_inequality(path(4), 1, 0, 3), std::invalid_argument);
  EXPECT_THROW(check_entry_inequality(Hypergraph(4, {{0, 1}, {2, 3}}), 0, 1, 1), DisconnectedError);
  for (const auto& g : all_rank3_hypertrees(7, 3))
    for (VertexId u = 0; u < g.order(); ++u)
      for (VertexId v : g.neighbors(u))
        for (VertexId w : g.neighbors(u)) {
          const auto nv = g.neighbors(v);
          if (v != w && !std::binary_search(nv.begin(), nv.end(), w)) ASSERT_TRUE(check_entry_inequality(g, u, v, w));
        }
}

TEST(Rebalance, Examples) {
  for (auto [n, a, b] : {std::tuple{12, 0, 2}, std::tuple{20, 1, 3}}) {
    const auto r = check_rebalance(n, a, b);
    EXPECT_TRUE(r.rho_increased);
    EXPECT_GT(r.margin, 1e-9);
    const auto dense_before = oracle::dense_perron(distance_matrix(t_hypertree(HypertreeParams(n, a, b)))).first;
    const auto dense_after = oracle::dense_perron(distance_matrix(t_hypertree(HypertreeParams(n, a + 1, b - 1)))).first;
    EXPECT_NEAR(r.margin, dense_after - dense_before, 1e-8);
  }
  EXPECT_THROW(check_rebalance(12, 0, 1), std::invalid_argument);
  EXPECT_THROW(check_rebalance(12, 1, 2), std::invalid_argument);
  EXPECT_THROW(check_rebalance(9, 0, 4), std::invalid_argument);
}
