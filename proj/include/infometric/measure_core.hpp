#pragma once

// Pullback of the information (Fisher-type) metric to finite-parameter
// families of positive densities:
//
//   g_ij(θ) = ∫ (∂_i e / e)(∂_j e / e) e · w dx
//
// where e = density(θ, ·) and w is the domain weight (volume-form ratio).

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "infometric/numeric/quadrature.hpp"

namespace infometric {

using Vector = std::vector<double>;
using PointFn = std::function<double(std::span<const double> x)>;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NonFiniteIntegrand : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StepUnderflow : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Domain {
  enum class Kind { euclidean, euclidean4_weighted };

  Kind kind = Kind::euclidean;
  int dim = 1;
  PointFn weight;  // empty means constant 1
  bool radial_reducible = false;

  static Domain euclidean(int dim);
  static Domain euclidean4_weighted(PointFn weight);

  double weight_at(std::span<const double> x) const { return weight ? weight(x) : 1.0; }
};

// One admissible range per parameter slot.
struct ParamInterval {
  double lower;
  double upper;
  bool lower_open = false;
  bool upper_open = false;

  bool contains(double v) const {
    const bool above = lower_open ? v > lower : v >= lower;
    const bool below = upper_open ? v < upper : v <= upper;
    return above && below;
  }
};

using ParamDomain = std::vector<ParamInterval>;

// Exact angular reduction for families whose scores have the form
//   ∂_i log e(θ, x) = radial_i(r) + linear_i(r) · ⟨x − center, direction_i⟩,
// with e and the domain weight depending on r = |x − center| only. Then
//   g_ij = |S^{d−1}| ∫ r^{d−1} e w [radial_i radial_j + linear_i linear_j (r²/d)⟨dir_i, dir_j⟩] dr
// since the mixed radial·linear terms are odd.
struct RadialBatch {
  std::vector<double> density;
  std::vector<double> weight;
  std::vector<std::vector<double>> radial;  // [direction][node]
  std::vector<std::vector<double>> linear;  // [direction][node]

  void resize(std::size_t directions, std::size_t nodes);
};

struct RadialReduction {
  int dim = 4;
  std::function<double(std::span<const double> theta)> scale;  // length scale for the compactification
  std::function<Vector(std::span<const double> theta)> center;
  // direction_i as a dim-vector; a zero vector for purely radial scores
  std::function<std::vector<Vector>(std::span<const double> theta)> directions;
  std::function<void(std::span<const double> theta, std::span<const double> r, RadialBatch& out)> evaluate;
};

struct DensityFamily {
  using Evaluator = std::function<double(std::span<const double> theta, std::span<const double> x)>;
  using DirectionalEvaluator =
      std::function<double(std::span<const double> theta, std::span<const double> x, std::size_t i)>;

  std::string name;
  std::size_t param_dim = 0;
  Domain domain;
  Evaluator density;
  DirectionalEvaluator score;  // ∂_i log density, optional
  DirectionalEvaluator deriv;  // ∂_i density, optional
  ParamDomain param_domain;
  // Center and length scale of the bulk of the density; used to place the
  // radial-angular product rule. Defaults to origin and 1.
  std::function<Vector(std::span<const double> theta)> locate_center;
  std::function<double(std::span<const double> theta)> locate_scale;
  std::optional<RadialReduction> reduction;

  bool admissible(std::span<const double> theta) const;
  void require_admissible(std::span<const double> theta) const;
};

struct QuadratureScheme {
  std::size_t radial_nodes = 128;
  std::size_t angular_nodes = 16;
  double rel_tol = 1e-8;
  int max_doublings = 6;
  Compactification compactification = Compactification::algebraic_map;
};

class GramMatrix {
 public:
  GramMatrix() = default;
  explicit GramMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, 0.0), err_(dim * dim, 0.0) {}

  std::size_t dim() const { return dim_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  double error(std::size_t i, std::size_t j) const { return err_[i * dim_ + j]; }

  // Writes both (i, j) and (j, i); symmetry holds exactly by construction.
  void set(std::size_t i, std::size_t j, double value, double error);

  const Vector& entries() const { return entries_; }
  const Vector& errors() const { return err_; }
  double max_error() const;
  double min_eigenvalue() const;
  bool positive_semidefinite() const { return min_eigenvalue() >= -max_error(); }

  Vector theta;
  bool converged = false;
  int doublings = 0;
  std::size_t nodes = 0;

 private:
  std::size_t dim_ = 0;
  Vector entries_;
  Vector err_;
};

enum class GramRoute {
  automatic,     // reduction when the family provides one, else product rule
  reduced,       // exact angular reduction, 1D adaptive quadrature
  product_rule,  // radial × spherical product rule over the full domain
};

// How per-node scores are obtained on the product-rule route.
enum class ScoreSource { automatic, analytic, finite_difference };

GramMatrix info_gram(const DensityFamily& family, std::span<const double> theta, const QuadratureScheme& scheme,
                     GramRoute route = GramRoute::automatic, ScoreSource scores = ScoreSource::automatic);

QuadResult total_mass(const DensityFamily& family, std::span<const double> theta, const QuadratureScheme& scheme,
                      GramRoute route = GramRoute::automatic);

// Central difference of log density in direction i, one Richardson step:
//   D(h) = (log e(θ + h e_i) − log e(θ − h e_i)) / 2h,  result = (4 D(h/2) − D(h)) / 3.
double score_fd(const DensityFamily& family, std::span<const double> theta, std::span<const double> x,
                std::size_t i, double step);

double default_fd_step(std::span<const double> theta, std::size_t i);

// 1D normal location-scale family, θ = (mean, σ); Fisher metric diag(1/σ², 2/σ²).
DensityFamily gaussian_location_scale_family();

}  // namespace infometric
