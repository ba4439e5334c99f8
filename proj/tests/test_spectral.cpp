#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "distspec/enumerate.hpp"
#include "distspec/families.hpp"
#include "distspec/spectral.hpp"
#include "support/oracles.hpp"

using namespace distspec;

namespace {

Hypergraph p3() { return path(3); }

// Residual contract, positivity, unit norm and the row-sum sandwich.
void expect_contract(const Hypergraph& g, double tol = kDefaultTolerance) {
  const auto d = distance_matrix(g);
  const auto s = spectral_radius(d, tol);
  double norm2 = 0.0;
  for (double v : s.perron) {
    ASSERT_GT(v, 0.0) << to_text(g);
    norm2 += v * v;
  }
  EXPECT_NEAR(norm2, 1.0, 1e-12);
  EXPECT_LE(s.residual, std::max(tol * std::max(1.0, s.rho), detail::rounding_floor(d)));
  double worst = 0.0;
  for (VertexId u = 0; u < g.order(); ++u) worst = std::max(worst, eigenequation_residual(d, s.rho, s.perron, u));
  EXPECT_LE(worst, s.residual * (1 + 1e-9));
  long lo = d.row_sum(0), hi = d.row_sum(0);
  for (VertexId u = 0; u < g.order(); ++u) {
    lo = std::min(lo, d.row_sum(u));
    hi = std::max(hi, d.row_sum(u));
  }
  EXPECT_GE(s.rho, static_cast<double>(lo) - 1e-9);
  EXPECT_LE(s.rho, static_cast<double>(hi) + 1e-9);
  EXPECT_GE(s.rho, static_cast<double>(min_status(d)) - 1e-9);
}

}  // namespace

TEST(SpectralRadius, SmallExactValues) {
  const auto p2 = spectral_radius(path(2));
  EXPECT_NEAR(p2.rho, 1.0, 1e-10);
  EXPECT_NEAR(p2.perron[0], 1 / std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(p2.perron[1], 1 / std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(spectral_radius(Hypergraph(3, {{0, 1, 2}})).rho, 2.0, 1e-10);
  // Largest root of lambda^2 - 2 lambda - 2.
  EXPECT_NEAR(spectral_radius(p3()).rho, 1.0 + std::sqrt(3.0), 1e-8);
  // K_n distances: rho = n - 1.
  for (int n = 2; n <= 7; ++n) {
    Edge all;
    for (int v = 0; v < n; ++v) all.push_back(VertexId(v));
    EXPECT_NEAR(spectral_radius(Hypergraph(std::size_t(n), {all})).rho, n - 1.0, 1e-10);
  }
}

TEST(SpectralRadius, IsDeterministic) {
  const auto g = t_hypertree(HypertreeParams(11, 1, 3));
  const auto a = spectral_radius(g), b = spectral_radius(g);
  EXPECT_EQ(a.rho, b.rho);
  EXPECT_EQ(a.perron, b.perron);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(SpectralRadius, RejectsBadTolerance) {
  EXPECT_THROW(spectral_radius(path(3), 0.0), std::invalid_argument);
  EXPECT_THROW(spectral_radius(path(3), -1.0), std::invalid_argument);
}

TEST(SpectralRadius, MatchesDenseEigensolver) {
  std::vector<Hypergraph> battery{path(2), path(3), path(7), Hypergraph(3, {{0, 1, 2}})};
  for (int n = 5; n <= 12; ++n) battery.push_back(t_hypertree(HypertreeParams(n, 0, (n - 1) / 2)));
  battery.push_back(saw_graph(SawParams(2, 1, 3)));
  std::mt19937_64 rng(17);
  for (int i = 0; i < 40; ++i) battery.push_back(random_connected_hypergraph(rng, 2 + static_cast<int>(rng() % 11)));
  for (const auto& g : battery) {
    const auto d = distance_matrix(g);
    const auto s = spectral_radius(d);
    const auto [rho, x] = oracle::dense_perron(d);
    ASSERT_NEAR(s.rho, rho, 1e-8) << to_text(g);
    for (std::size_t v = 0; v < x.size(); ++v) ASSERT_NEAR(s.perron[v], x[v], 1e-6) << to_text(g);
  }
}

TEST(SpectralRadius, PerronFrobeniusContract) {
  for (int n = 2; n <= 10; ++n) {
    expect_contract(path(n));
    for (int k = 0; k <= (n - 1) / 2; ++k)
      for (const auto& m : enumerate_hypertrees(n, k)) {
        if (n <= 8) expect_contract(m.graph);
      }
  }
  std::mt19937_64 rng(23);
  for (int i = 0; i < 500; ++i) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const auto g = random_connected_hypergraph(rng, n, 3, 0);  // hypertree-shaped
    ASSERT_TRUE(is_hypertree(g));
    expect_contract(g);
  }
}

TEST(SpectralRadius, TighterToleranceTightensResidual) {
  const auto g = t_hypertree(HypertreeParams(15, 2, 4));
  const auto loose = spectral_radius(g, 1e-6), tight = spectral_radius(g, 1e-12);
  EXPECT_LE(tight.residual, loose.residual);
  EXPECT_NEAR(loose.rho, tight.rho, 1e-5);
}

TEST(SpectralRadius, PathMonotonicity) {
  double previous = 0.0;
  for (int n = 2; n <= 12; ++n) {
    const double rho = spectral_radius(path(n)).rho;
    EXPECT_GT(rho, previous);
    previous = rho;
  }
}

TEST(Rayleigh, Examples) {
  const auto d2 = distance_matrix(path(2));
  const std::vector<double> e0{1.0, 0.0}, half{1 / std::sqrt(2.0), 1 / std::sqrt(2.0)};
  EXPECT_DOUBLE_EQ(rayleigh(d2, e0), 0.0);
  EXPECT_NEAR(rayleigh(d2, half), 1.0, 1e-15);
  const std::vector<double> uniform(3, 1 / std::sqrt(3.0));
  EXPECT_NEAR(rayleigh(distance_matrix(p3()), uniform), 8.0 / 3.0, 1e-14);
  EXPECT_THROW(rayleigh(d2, std::vector<double>{1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(rayleigh(d2, std::vector<double>{-1.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(rayleigh(d2, std::vector<double>{0.0, 0.0}), std::invalid_argument);
}

TEST(Rayleigh, NeverExceedsRho) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const auto g = random_connected_hypergraph(rng, 2 + static_cast<int>(rng() % 10));
    const auto d = distance_matrix(g);
    const double rho = spectral_radius(d).rho;
    for (int j = 0; j < 100; ++j) {
      std::vector<double> x(g.order());
      double norm = 0.0;
      for (double& v : x) {
        v = unit(rng);
        norm += v * v;
      }
      for (double& v : x) v /= std::sqrt(norm);
      ASSERT_LE(rayleigh(d, x), rho + 1e-9);
    }
  }
}

TEST(EigenequationResidual, Examples) {
  const auto d2 = distance_matrix(path(2));
  const std::vector<double> half{1 / std::sqrt(2.0), 1 / std::sqrt(2.0)};
  EXPECT_NEAR(eigenequation_residual(d2, 1.0, half, 0), 0.0, 1e-15);
  const std::vector<double> uniform(3, 1 / std::sqrt(3.0));
  EXPECT_GT(eigenequation_residual(distance_matrix(p3()), 1 + std::sqrt(3.0), uniform, 0), 0.1);
  const auto s = spectral_radius(p3());
  EXPECT_LE(eigenequation_residual(distance_matrix(p3()), s.rho, s.perron, 1), s.residual);
}

TEST(Sigma, Examples) {
  const std::vector<double> half{1 / std::sqrt(2.0), 1 / std::sqrt(2.0)};
  EXPECT_EQ(sigma(half, std::vector<VertexId>{}), 0.0);
  EXPECT_NEAR(sigma(half, std::vector<VertexId>{0, 1}), std::sqrt(2.0), 1e-15);
  EXPECT_THROW(sigma(half, std::vector<VertexId>{2}), std::out_of_range);
  const auto s = spectral_radius(p3());
  EXPECT_GT(sigma(s.perron, std::vector<VertexId>{0, 2}), sigma(s.perron, std::vector<VertexId>{1}));
  // Ends : center = 1 : 2/rho.
  EXPECT_NEAR(s.perron[1] / s.perron[0], 2.0 / s.rho, 1e-9);
}

TEST(Status, Examples) {
  const auto d3 = distance_matrix(p3());
  EXPECT_EQ(status(d3, 1), 2);
  EXPECT_EQ(status(d3, 0), 3);
  EXPECT_EQ(min_status(d3), 2);
  const auto k3 = distance_matrix(Hypergraph(3, {{0, 1, 2}}));
  for (VertexId u = 0; u < 3; ++u) EXPECT_EQ(status(k3, u), 2);
  const auto d4 = distance_matrix(path(4));
  EXPECT_EQ((std::vector<long>{status(d4, 0), status(d4, 1), status(d4, 2), status(d4, 3)}),
            (std::vector<long>{6, 4, 4, 6}));
  EXPECT_EQ(min_status(d4), 4);
}

TEST(Status, RhoAtLeastMinStatus) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    const auto g = random_connected_hypergraph(rng, 2 + static_cast<int>(rng() % 11));
    const auto d = distance_matrix(g);
    ASSERT_GE(spectral_radius(d).rho, static_cast<double>(min_status(d)) - 1e-9);
  }
}
