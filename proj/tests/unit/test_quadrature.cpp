#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "infometric/numeric/quadrature.hpp"

using namespace infometric;

TEST_CASE("gauss-legendre weights sum to two and nodes are symmetric") {
  for (std::size_t n : {1u, 2u, 5u, 16u, 127u, 512u}) {
    CAPTURE(n);
    const GaussLegendreRule rule = gauss_legendre(n);
    const double total = std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);
    CHECK(total == doctest::Approx(2.0).epsilon(1e-14));
    for (std::size_t i = 0; i < n; ++i) CHECK(rule.nodes[i] == -rule.nodes[n - 1 - i]);
    for (std::size_t i = 1; i < n; ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
  }
  CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("n-point rule integrates polynomials of degree 2n-1 exactly") {
  const std::size_t n = 6;
  const GaussLegendreRule rule = gauss_legendre(n);
  for (int degree = 0; degree <= 11; ++degree) {
    CAPTURE(degree);
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) q += rule.weights[i] * std::pow(rule.nodes[i], degree);
    const double exact = degree % 2 == 1 ? 0.0 : 2.0 / (degree + 1);
    CHECK(q == doctest::Approx(exact).epsilon(1e-14));
  }
}

TEST_CASE("interval nodes integrate the exponential") {
  const NodeSet nodes = interval_nodes(20, 0.0, 2.0);
  double q = 0.0;
  for (std::size_t i = 0; i < nodes.x.size(); ++i) q += nodes.w[i] * std::exp(nodes.x[i]);
  CHECK(q == doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("both compactifications integrate a rational tail") {
  // ∫₀^∞ r³/(1 + r²)⁴ dr = 1/12
  const auto f = [](double r) { return r * r * r / std::pow(1.0 + r * r, 4); };
  for (Compactification map : {Compactification::algebraic_map, Compactification::tangent_map}) {
    const QuadResult q =
        integrate_doubling(f, [map](std::size_t n) { return half_line_nodes(n, 1.0, map); }, 16, 1e-13, 8);
    CHECK(q.converged);
    CHECK(q.value == doctest::Approx(1.0 / 12.0).epsilon(1e-13));
  }
}

TEST_CASE("algebraic map turns a rational integrand into a polynomial") {
  // With u = r²/(1+r²) the integrand above becomes u(1−u)/2: exact at 2 nodes.
  const auto f = [](double r) { return r * r * r / std::pow(1.0 + r * r, 4); };
  const NodeSet nodes = half_line_nodes(2, 1.0, Compactification::algebraic_map);
  double q = 0.0;
  for (std::size_t i = 0; i < 2; ++i) q += nodes.w[i] * f(nodes.x[i]);
  CHECK(q == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
}

TEST_CASE("radial segment nodes reach the requested upper limit") {
  // ∫₀^R r/(1+r²)² dr = R²/(2(1+R²))
  const auto f = [](double r) { return r / std::pow(1.0 + r * r, 2); };
  for (double upper : {0.5, 1.0, 10.0}) {
    const NodeSet nodes = radial_segment_nodes(8, upper, 1.0);
    double q = 0.0;
    for (std::size_t i = 0; i < nodes.x.size(); ++i) {
      CHECK(nodes.x[i] < upper);
      q += nodes.w[i] * f(nodes.x[i]);
    }
    CHECK(q == doctest::Approx(upper * upper / (2.0 * (1.0 + upper * upper))).epsilon(1e-14));
  }
}

TEST_CASE("doubling reports non-convergence instead of throwing") {
  // Integrable singularity at 0 converges only algebraically.
  const auto f = [](double x) { return 1.0 / std::sqrt(x); };
  const QuadResult q = integrate_doubling(f, [](std::size_t n) { return interval_nodes(n, 0.0, 1.0); }, 4, 1e-14, 3);
  CHECK_FALSE(q.converged);
  CHECK(q.doublings == 3);
  CHECK(q.nodes == 32);
  CHECK(q.err > 0.0);
}

TEST_CASE("first-order algebraic map suits odd-dimensional measures") {
  // ∫₀^∞ exp(−r²/2) dr = sqrt(π/2); in u = r/(1+r) the integrand is smooth at 0.
  const auto f = [](double r) { return std::exp(-0.5 * r * r); };
  const QuadResult q = integrate_doubling(
      f, [](std::size_t n) { return half_line_nodes(n, 1.0, Compactification::algebraic_map, 1); }, 32, 1e-13, 6);
  CHECK(q.converged);
  CHECK(q.value == doctest::Approx(std::sqrt(kPi / 2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(half_line_nodes(8, 1.0, Compactification::algebraic_map, 3), std::invalid_argument);
}
