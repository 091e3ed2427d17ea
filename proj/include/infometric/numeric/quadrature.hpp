#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace infometric {

// Gauss–Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point rule from Newton iteration on the three-term Legendre recurrence.
GaussLegendreRule gauss_legendre(std::size_t n);

// Maps of [0, 1) onto [0, ∞) with a length scale s:
//   algebraic_map: r = s·sqrt(u/(1−u)), i.e. u = r²/(s² + r²)
//   tangent_map:   r = s·tan(πu/2)
enum class Compactification { algebraic_map, tangent_map };

// Nodes and weights (Jacobian folded in) for ∫_a^b f(x) dx.
struct NodeSet {
  std::vector<double> x;
  std::vector<double> w;
};

NodeSet interval_nodes(std::size_t n, double a, double b);

// Nodes and weights for ∫_0^∞ f(r) dr through the chosen compactification.
// The algebraic map takes u = r^e/(s^e + r^e); e = 2 suits radial measures
// r^{d−1} dr of even d, e = 1 those of odd d (no √u endpoint singularity).
NodeSet half_line_nodes(std::size_t n, double scale, Compactification map, int exponent = 2);

// Nodes and weights for ∫_0^R f(r) dr, integrated in u = r²/(s²+r²) so that
// rational integrands stay rational.
NodeSet radial_segment_nodes(std::size_t n, double upper, double scale);

struct QuadResult {
  double value = 0.0;
  double err = 0.0;  // |last − previous| over the final doubling
  bool converged = false;
  int doublings = 0;
  std::size_t nodes = 0;
};

// Adaptive node doubling: evaluate the rule produced by make_nodes(n) for
// n = n0, 2n0, ... until successive results differ by at most
// rel_tol·|value| (or abs_floor), or max_doublings is exhausted.
QuadResult integrate_doubling(const std::function<double(double)>& f,
                              const std::function<NodeSet(std::size_t)>& make_nodes, std::size_t n0,
                              double rel_tol, int max_doublings, double abs_floor = 0.0);

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace infometric
