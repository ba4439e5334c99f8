#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "distspec/hypergraph.hpp"

namespace distspec {

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr std::size_t kIterationCap = 1'000'000;

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Distance spectral radius with its positive unit Perron vector.
/// `residual` is the max-norm of D x - rho x, floored at the rounding
/// error of a matrix-vector product so that it never reports exactness the
/// arithmetic cannot resolve.
struct SpectralResult {
  double rho = 0.0;
  std::vector<double> perron;
  double residual = 0.0;
  std::size_t iterations = 0;

  /// Width of the band inside which a strict inequality is not certified.
  double guard_band() const { return 10.0 * residual; }
};

namespace detail {

inline void multiply(const DistanceMatrix& d, std::span<const double> x, std::span<double> out) {
  const std::size_t n = d.order();
  const int* row = d.entries().data();
  for (std::size_t u = 0; u < n; ++u, row += n) {
    double s = 0.0;
    for (std::size_t v = 0; v < n; ++v) s += row[v] * x[v];
    out[u] = s;
  }
}

inline double rounding_floor(const DistanceMatrix& d) {
  long max_row = 0;
  for (VertexId u = 0; u < d.order(); ++u) max_row = std::max(max_row, d.row_sum(u));
  return 4.0 * static_cast<double>(d.order()) * std::numeric_limits<double>::epsilon() *
         static_cast<double>(std::max(max_row, 1L));
}

}  // namespace detail

/// Power iteration on D + I (the shift makes the iteration primitive even
/// when D is periodic, e.g. P_2), starting from the normalized all-ones
/// vector. Stops once successive Rayleigh quotients and the residual are
/// both below tol * max(1, rho).
inline SpectralResult spectral_radius(const DistanceMatrix& d, double tol = kDefaultTolerance) {
  if (!(tol > 0.0)) throw std::invalid_argument("spectral_radius: tolerance must be positive");
  const std::size_t n = d.order();
  if (n == 0) throw std::invalid_argument("spectral_radius: empty matrix");

  const double floor = detail::rounding_floor(d);
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> dx(n);
  double previous = -1.0;

  for (std::size_t it = 1; it <= kIterationCap; ++it) {
    detail::multiply(d, x, dx);
    const double rho = std::inner_product(x.begin(), x.end(), dx.begin(), 0.0);
    double residual = 0.0;
    for (std::size_t u = 0; u < n; ++u) residual = std::max(residual, std::abs(dx[u] - rho * x[u]));
    const double scale = std::max(1.0, rho);
    const double target = std::max(tol * scale, floor);
    if (std::abs(rho - previous) < target && residual <= target) {
      if (!std::all_of(x.begin(), x.end(), [](double v) { return v > 0.0; }))
        throw ConvergenceError("Perron vector has a non-positive entry");
      return SpectralResult{rho, std::move(x), std::max(residual, floor), it};
    }
    previous = rho;
    double norm = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      dx[u] += x[u];
      norm += dx[u] * dx[u];
    }
    norm = std::sqrt(norm);
    for (std::size_t u = 0; u < n; ++u) x[u] = dx[u] / norm;
  }
  throw ConvergenceError("power iteration did not converge within " +
                         std::to_string(kIterationCap) + " iterations");
}

inline SpectralResult spectral_radius(const Hypergraph& g, double tol = kDefaultTolerance) {
  return spectral_radius(distance_matrix(g), tol);
}

/// x^T D x for a nonnegative unit vector x.
inline double rayleigh(const DistanceMatrix& d, std::span<const double> x) {
  if (x.size() != d.order()) throw std::invalid_argument("rayleigh: dimension mismatch");
  double norm2 = 0.0;
  bool nonzero = false;
  for (double v : x) {
    if (v < 0.0) throw std::invalid_argument("rayleigh: vector has a negative entry");
    nonzero = nonzero || v > 0.0;
    norm2 += v * v;
  }
  if (!nonzero || std::abs(norm2 - 1.0) > 1e-9)
    throw std::invalid_argument("rayleigh: vector is not a unit vector");
  double s = 0.0;
  for (VertexId u = 0; u < d.order(); ++u)
    for (VertexId v = u + 1; v < d.order(); ++v) s += d(u, v) * x[u] * x[v];
  return 2.0 * s;
}

/// |sum_v d(u,v) x_v - rho x_u|
inline double eigenequation_residual(const DistanceMatrix& d, double rho,
                                     std::span<const double> x, VertexId u) {
  if (x.size() != d.order() || u >= d.order())
    throw std::invalid_argument("eigenequation_residual: dimension mismatch");
  double s = 0.0;
  for (VertexId v = 0; v < d.order(); ++v) s += d(u, v) * x[v];
  return std::abs(s - rho * x[u]);
}

/// Sum of the entries of x over the vertex set s.
inline double sigma(std::span<const double> x, std::span<const VertexId> s) {
  double total = 0.0;
  for (VertexId v : s) {
    if (v >= x.size()) throw std::out_of_range("sigma: vertex " + std::to_string(v) + " out of range");
    total += x[v];
  }
  return total;
}

/// Transmission of u: row sum of D at u.
inline long status(const DistanceMatrix& d, VertexId u) {
  if (u >= d.order()) throw std::out_of_range("status: vertex out of range");
  return d.row_sum(u);
}

inline long min_status(const DistanceMatrix& d) {
  if (d.order() == 0) throw std::invalid_argument("min_status: empty matrix");
  long best = d.row_sum(0);
  for (VertexId u = 1; u < d.order(); ++u) best = std::min(best, d.row_sum(u));
  return best;
}

}  // namespace distspec
