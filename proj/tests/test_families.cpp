#include <gtest/gtest.h>

#include "distspec/families.hpp"
#include "distspec/spectral.hpp"

using namespace distspec;

TEST(Path, Examples) {
  EXPECT_EQ(path(2), Hypergraph(2, {{0, 1}}));
  EXPECT_EQ(path(4), Hypergraph(4, {{0, 1}, {1, 2}, {2, 3}}));
  EXPECT_EQ(path(1).size(), 0u);
  EXPECT_THROW(path(0), std::invalid_argument);
  for (int n = 2; n <= 9; ++n) EXPECT_TRUE(same_edge_set(two_section(path(n)), path(n)));
}

TEST(HypertreeParams, Validation) {
  EXPECT_NO_THROW(HypertreeParams(7, 1, 2));
  EXPECT_THROW(HypertreeParams(7, 2, 1), std::invalid_argument);
  EXPECT_THROW(HypertreeParams(7, -1, 1), std::invalid_argument);
  EXPECT_THROW(HypertreeParams(6, 1, 2), std::invalid_argument);
  EXPECT_THROW(HypertreeParams(1, 0, 0), std::invalid_argument);
  const HypertreeParams p(12, 1, 3);
  EXPECT_EQ(p.ell(), 8);
  EXPECT_EQ(p.r(), 4);
  EXPECT_EQ(p.p(), 4);
  EXPECT_EQ(p.p1(), 4);
  EXPECT_THROW(p.w(2), std::out_of_range);
  EXPECT_THROW(p.v(9), std::out_of_range);
}

TEST(THypertree, T711Layout) {
  const HypertreeParams p(7, 1, 1);
  const auto g = t_hypertree(p);
  EXPECT_EQ(p.ell(), 5);
  EXPECT_TRUE(same_edge_set(g, Hypergraph(7, {{p.v(1), p.v(2), p.w(1)},
                                              {p.v(2), p.v(3)},
                                              {p.v(3), p.v(4)},
                                              {p.v(4), p.v(5), p.w(4)}})));
  EXPECT_EQ(p.w(1), 5u);
  EXPECT_EQ(p.w(4), 6u);
  std::size_t excess = 0;
  for (const auto& e : g.edges()) excess += e.size() - 1;
  EXPECT_EQ(excess, 6u);
}

TEST(THypertree, T502) {
  const HypertreeParams p(5, 0, 2);
  const auto g = t_hypertree(p);
  EXPECT_EQ(p.ell(), 3);
  EXPECT_EQ(g.order(), 5u);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g.edge(0).size(), 3u);
  EXPECT_EQ(g.edge(1).size(), 3u);
  EXPECT_TRUE(p.has_w(1) && p.has_w(2));
}

TEST(THypertree, AlwaysARank3Hypertree) {
  for (int n = 2; n <= 12; ++n)
    for (int a = 0; 2 * a <= (n - 1) / 2; ++a)
      for (int b = a; a + b <= (n - 1) / 2; ++b) {
        const HypertreeParams p(n, a, b);
        const auto g = t_hypertree(p);
        ASSERT_TRUE(is_hypertree(g)) << p.label();
        EXPECT_LE(g.rank(), 3u);
        std::size_t threes = 0;
        for (const auto& e : g.edges()) threes += e.size() == 3;
        EXPECT_EQ(threes, std::size_t(a + b));
        for (int i = 1; i < p.ell(); ++i) {
          auto e = g.edge(static_cast<EdgeIndex>(i - 1));
          EXPECT_TRUE(std::binary_search(e.begin(), e.end(), p.v(i)));
          EXPECT_TRUE(std::binary_search(e.begin(), e.end(), p.v(i + 1)));
          EXPECT_EQ(e.size() == 3, p.has_w(i));
          if (p.has_w(i)) EXPECT_TRUE(std::binary_search(e.begin(), e.end(), p.w(i)));
        }
      }
}

TEST(SawGraph, Examples) {
  for (int n = 2; n <= 9; ++n) EXPECT_TRUE(same_edge_set(saw_graph(SawParams(0, 0, n - 1)), path(n)));
  const auto s112 = saw_graph(SawParams(1, 1, 2));
  EXPECT_EQ(s112.order(), 7u);
  EXPECT_EQ(s112.size(), 8u);
  EXPECT_TRUE(s112.is_uniform(2));
  for (int n = 4; n <= 9; ++n) {
    const auto g = saw_graph(SawParams(0, 1, n - 3));
    EXPECT_EQ(g.order(), std::size_t(n));
    EXPECT_EQ(g.size(), std::size_t(n));  // one cycle
  }
  EXPECT_THROW(SawParams(-1, 0, 2), std::invalid_argument);
  EXPECT_THROW(SawParams(0, 0, 0), std::invalid_argument);
}

// Under the shared id layout the saw-graph is exactly the 2-section.
TEST(SawGraph, EqualsTwoSectionUnderLayout) {
  for (int n = 2; n <= 13; ++n)
    for (int a = 0; 2 * a <= (n - 1) / 2; ++a)
      for (int b = a; a + b <= (n - 1) / 2; ++b) {
        const auto t = t_hypertree(HypertreeParams(n, a, b));
        const auto s = saw_graph(SawParams(a, b, n - 2 * (a + b) - 1));
        ASSERT_TRUE(same_edge_set(two_section(t), s)) << n << "," << a << "," << b;
        ASSERT_TRUE(check_o_correspondence(HypertreeParams(n, a, b)));
        ASSERT_NEAR(spectral_radius(t).rho, spectral_radius(s).rho, 1e-9);
      }
}

TEST(FamilySpec, Parse) {
  EXPECT_EQ(parse_family("P:3").build(), path(3));
  EXPECT_EQ(parse_family("T:7,1,1").build(), t_hypertree(HypertreeParams(7, 1, 1)));
  EXPECT_EQ(parse_family("S:1,1,2").build(), saw_graph(SawParams(1, 1, 2)));
  EXPECT_EQ(parse_family("T:9,1,2").text(), "T:9,1,2");
  for (const char* bad : {"", "P", "P:", "Q:3", "P:3,4", "T:7,1", "T:7,2,1", "S:1,1,", "P:x", "P:0", "T:7,,1"})
    EXPECT_THROW(parse_family(bad), std::invalid_argument) << bad;
}
