#include "infometric/numeric/quadrature.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>

#include "infometric/kernels/kernels.hpp"

namespace infometric {

namespace {

// Returns (P_n(x), P_n'(x)).
std::pair<double, double> legendre(std::size_t n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (std::size_t k = 2; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
    p0 = p1;
    p1 = p2;
  }
  return {p1, static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussLegendreRule gauss_legendre(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double nn = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (nn + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

NodeSet interval_nodes(std::size_t n, double a, double b) {
  const GaussLegendreRule rule = gauss_legendre(n);
  NodeSet out;
  out.x.resize(n);
  out.w.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t k = 0; k < n; ++k) {
    out.x[k] = mid + half * rule.nodes[k];
    out.w[k] = half * rule.weights[k];
  }
  return out;
}

NodeSet half_line_nodes(std::size_t n, double scale, Compactification map, int exponent) {
  if (exponent != 1 && exponent != 2) throw std::invalid_argument("half_line_nodes: exponent must be 1 or 2");
  const GaussLegendreRule rule = gauss_legendre(n);
  NodeSet out;
  out.x.resize(n);
  out.w.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = 0.5 * (rule.nodes[k] + 1.0);
    const double wu = 0.5 * rule.weights[k];
    if (map == Compactification::algebraic_map) {
      const double one_minus = 0.5 * (1.0 - rule.nodes[k]);
      if (exponent == 1) {
        out.x[k] = scale * u / one_minus;
        out.w[k] = wu * scale / (one_minus * one_minus);
      } else {
        out.x[k] = scale * std::sqrt(u / one_minus);
        out.w[k] = wu * scale / (2.0 * std::sqrt(u) * one_minus * std::sqrt(one_minus));
      }
    } else {
      const double angle = 0.5 * kPi * u;
      const double c = std::cos(angle);
      out.x[k] = scale * std::tan(angle);
      out.w[k] = wu * scale * 0.5 * kPi / (c * c);
    }
  }
  return out;
}

NodeSet radial_segment_nodes(std::size_t n, double upper, double scale) {
  const double u_max = (upper * upper) / (scale * scale + upper * upper);
  const GaussLegendreRule rule = gauss_legendre(n);
  NodeSet out;
  out.x.resize(n);
  out.w.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = 0.5 * u_max * (rule.nodes[k] + 1.0);
    const double wu = 0.5 * u_max * rule.weights[k];
    const double one_minus = 1.0 - u;
    out.x[k] = scale * std::sqrt(u / one_minus);
    out.w[k] = wu * scale / (2.0 * std::sqrt(u) * one_minus * std::sqrt(one_minus));
  }
  return out;
}

QuadResult integrate_doubling(const std::function<double(double)>& f,
                              const std::function<NodeSet(std::size_t)>& make_nodes, std::size_t n0,
                              double rel_tol, int max_doublings, double abs_floor) {
  auto evaluate = [&](std::size_t n) {
    const NodeSet nodes = make_nodes(n);
    std::vector<double> values(n);
    for (std::size_t k = 0; k < n; ++k) values[k] = f(nodes.x[k]);
    return kernels::dot(nodes.w, values);
  };

  QuadResult out;
  std::size_t n = n0;
  double previous = evaluate(n);
  out.value = previous;
  out.nodes = n;
  out.err = std::numeric_limits<double>::infinity();
  for (int d = 1; d <= max_doublings; ++d) {
    n *= 2;
    const double current = evaluate(n);
    out.value = current;
    out.nodes = n;
    out.doublings = d;
    out.err = std::abs(current - previous);
    if (out.err <= std::max(rel_tol * std::abs(current), abs_floor)) {
      out.converged = true;
      return out;
    }
    previous = current;
  }
  return out;
}

}  // namespace infometric
