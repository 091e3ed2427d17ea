#include "infometric/measure_core.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string_view>

#include "infometric/kernels/kernels.hpp"

namespace infometric {

Domain Domain::euclidean(int dim) {
  if (dim < 1 || dim > 4) throw DomainError("Domain::euclidean: dim must be in 1..4");
  Domain d;
  d.kind = Kind::euclidean;
  d.dim = dim;
  return d;
}

Domain Domain::euclidean4_weighted(PointFn weight) {
  Domain d;
  d.kind = Kind::euclidean4_weighted;
  d.dim = 4;
  d.weight = std::move(weight);
  return d;
}

void RadialBatch::resize(std::size_t directions, std::size_t nodes) {
  density.assign(nodes, 0.0);
  weight.assign(nodes, 1.0);
  radial.assign(directions, std::vector<double>(nodes, 0.0));
  linear.assign(directions, std::vector<double>(nodes, 0.0));
}

bool DensityFamily::admissible(std::span<const double> theta) const {
  if (theta.size() != param_dim) return false;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!std::isfinite(theta[i])) return false;
    if (i < param_domain.size() && !param_domain[i].contains(theta[i])) return false;
  }
  return true;
}

void DensityFamily::require_admissible(std::span<const double> theta) const {
  if (admissible(theta)) return;
  std::ostringstream msg;
  msg << name << ": parameter outside the admissible domain (";
  for (std::size_t i = 0; i < theta.size(); ++i) msg << (i ? ", " : "") << theta[i];
  msg << ")";
  throw DomainError(msg.str());
}

void GramMatrix::set(std::size_t i, std::size_t j, double value, double error) {
  entries_[i * dim_ + j] = value;
  entries_[j * dim_ + i] = value;
  err_[i * dim_ + j] = error;
  err_[j * dim_ + i] = error;
}

double GramMatrix::max_error() const {
  double m = 0.0;
  for (double e : err_) m = std::max(m, e);
  return m;
}

double GramMatrix::min_eigenvalue() const {
  if (dim_ == 0) return 0.0;
  Eigen::MatrixXd m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

namespace {

double sphere_area(int dim) {
  switch (dim) {
    case 1:
      return 2.0;
    case 2:
      return 2.0 * kPi;
    case 3:
      return 4.0 * kPi;
    case 4:
      return 2.0 * kPi * kPi;
    default:
      throw DomainError("sphere_area: dim must be in 1..4");
  }
}

double power_dim_minus_one(double r, int dim) {
  double out = 1.0;
  for (int k = 1; k < dim; ++k) out *= r;
  return out;
}

void check_density(double value, std::string_view family) {
  if (!std::isfinite(value) || value < 0.0) {
    std::ostringstream msg;
    msg << family << ": non-finite or negative density at a quadrature node (" << value << ")";
    throw NonFiniteIntegrand(msg.str());
  }
}

// Unit-sphere product rule: directions and weights summing to |S^{d−1}|.
struct SphereRule {
  std::vector<Vector> directions;
  std::vector<double> weights;
};

SphereRule sphere_rule(int dim, std::size_t m) {
  SphereRule rule;
  const auto add = [&rule](Vector dir, double w) {
    rule.directions.push_back(std::move(dir));
    rule.weights.push_back(w);
  };
  switch (dim) {
    case 1:
      add({1.0}, 1.0);
      add({-1.0}, 1.0);
      break;
    case 2: {
      for (std::size_t k = 0; k < m; ++k) {
        const double phi = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(m);
        add({std::cos(phi), std::sin(phi)}, 2.0 * kPi / static_cast<double>(m));
      }
      break;
    }
    case 3: {
      const NodeSet z = interval_nodes(m, -1.0, 1.0);
      const std::size_t na = 2 * m;
      for (std::size_t i = 0; i < m; ++i) {
        const double rho = std::sqrt(1.0 - z.x[i] * z.x[i]);
        for (std::size_t k = 0; k < na; ++k) {
          const double phi = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(na);
          add({rho * std::cos(phi), rho * std::sin(phi), z.x[i]}, z.w[i] * 2.0 * kPi / static_cast<double>(na));
        }
      }
      break;
    }
    case 4: {
      // Hopf coordinates with w = sin²η: dS = ½ dw dξ₁ dξ₂.
      const NodeSet w = interval_nodes(m, 0.0, 1.0);
      const std::size_t na = 2 * m;
      const double dxi = 2.0 * kPi / static_cast<double>(na);
      for (std::size_t i = 0; i < m; ++i) {
        const double c = std::sqrt(1.0 - w.x[i]);
        const double s = std::sqrt(w.x[i]);
        for (std::size_t a = 0; a < na; ++a) {
          const double xi1 = dxi * static_cast<double>(a);
          for (std::size_t b = 0; b < na; ++b) {
            const double xi2 = dxi * static_cast<double>(b);
            add({c * std::cos(xi1), c * std::sin(xi1), s * std::cos(xi2), s * std::sin(xi2)},
                0.5 * w.w[i] * dxi * dxi);
          }
        }
      }
      break;
    }
    default:
      throw DomainError("sphere_rule: dim must be in 1..4");
  }
  return rule;
}

std::size_t sphere_size(int dim, std::size_t m) {
  switch (dim) {
    case 1:
      return 2;
    case 2:
      return m;
    case 3:
      return m * 2 * m;
    default:
      return m * 4 * m * m;
  }
}

Vector family_center(const DensityFamily& family, std::span<const double> theta) {
  if (family.locate_center) return family.locate_center(theta);
  return Vector(static_cast<std::size_t>(family.domain.dim), 0.0);
}

double family_scale(const DensityFamily& family, std::span<const double> theta) {
  return family.locate_scale ? family.locate_scale(theta) : 1.0;
}

// Per-level evaluation: returns Gram entries (row-major, p×p) or a 1×1 mass.
struct LevelResult {
  Vector gram;
  double mass = 0.0;
};

LevelResult reduced_level(const DensityFamily& family, std::span<const double> theta, std::size_t n,
                          Compactification map, bool want_gram) {
  const RadialReduction& red = *family.reduction;
  const NodeSet nodes = half_line_nodes(n, red.scale(theta), map);
  RadialBatch batch;
  const std::size_t p = family.param_dim;
  batch.resize(p, n);
  red.evaluate(theta, nodes.x, batch);

  const double area = sphere_area(red.dim);
  std::vector<double> base(n);
  for (std::size_t k = 0; k < n; ++k) {
    check_density(batch.density[k], family.name);
    base[k] = nodes.w[k] * area * power_dim_minus_one(nodes.x[k], red.dim) * batch.density[k] * batch.weight[k];
  }
  LevelResult out;
  out.mass = kernels::sum(base);
  if (!want_gram) return out;

  std::vector<double> base_r2(n);
  for (std::size_t k = 0; k < n; ++k) base_r2[k] = base[k] * (nodes.x[k] * nodes.x[k]);
  const std::vector<Vector> dirs = red.directions(theta);
  out.gram.assign(p * p, 0.0);
  const double inv_dim = 1.0 / static_cast<double>(red.dim);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      double value = kernels::dot3(base, batch.radial[i], batch.radial[j]);
      double overlap = 0.0;
      for (std::size_t c = 0; c < dirs[i].size(); ++c) overlap += dirs[i][c] * dirs[j][c];
      if (overlap != 0.0) value += overlap * inv_dim * kernels::dot3(base_r2, batch.linear[i], batch.linear[j]);
      out.gram[i * p + j] = value;
      out.gram[j * p + i] = value;
    }
  }
  return out;
}

double node_score(const DensityFamily& family, std::span<const double> theta, std::span<const double> x,
                  std::size_t i, double density, ScoreSource source) {
  switch (source) {
    case ScoreSource::analytic:
      if (family.score) return family.score(theta, x, i);
      return family.deriv(theta, x, i) / density;
    case ScoreSource::finite_difference:
      return score_fd(family, theta, x, i, default_fd_step(theta, i));
    case ScoreSource::automatic:
      break;
  }
  return 0.0;
}

LevelResult product_level(const DensityFamily& family, std::span<const double> theta, std::size_t n_radial,
                          std::size_t n_angular, Compactification map, bool want_gram, ScoreSource source) {
  const int dim = family.domain.dim;
  const Vector center = family_center(family, theta);
  const NodeSet radial = half_line_nodes(n_radial, family_scale(family, theta), map, dim % 2 == 0 ? 2 : 1);
  const SphereRule sphere = sphere_rule(dim, n_angular);
  const std::size_t p = family.param_dim;
  const std::size_t total = radial.x.size() * sphere.weights.size();

  std::vector<double> base(total);
  std::vector<std::vector<double>> scores(want_gram ? p : 0, std::vector<double>(total, 0.0));
  Vector x(static_cast<std::size_t>(dim));
  std::size_t node = 0;
  for (std::size_t a = 0; a < sphere.weights.size(); ++a) {
    for (std::size_t k = 0; k < radial.x.size(); ++k, ++node) {
      const double r = radial.x[k];
      for (int c = 0; c < dim; ++c) x[c] = center[c] + r * sphere.directions[a][c];
      const double e = family.density(theta, x);
      check_density(e, family.name);
      base[node] = radial.w[k] * sphere.weights[a] * power_dim_minus_one(r, dim) * e * family.domain.weight_at(x);
      if (!want_gram || e == 0.0) continue;  // underflowed tail contributes nothing
      for (std::size_t i = 0; i < p; ++i) scores[i][node] = node_score(family, theta, x, i, e, source);
    }
  }
  LevelResult out;
  out.mass = kernels::sum(base);
  if (!want_gram) return out;
  out.gram.assign(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      const double value = kernels::dot3(base, scores[i], scores[j]);
      out.gram[i * p + j] = value;
      out.gram[j * p + i] = value;
    }
  }
  return out;
}

GramRoute resolve_route(const DensityFamily& family, GramRoute route) {
  if (route == GramRoute::automatic) return family.reduction ? GramRoute::reduced : GramRoute::product_rule;
  if (route == GramRoute::reduced && !family.reduction) {
    throw DomainError(family.name + ": no angular reduction available");
  }
  return route;
}

ScoreSource resolve_scores(const DensityFamily& family, ScoreSource source) {
  if (source == ScoreSource::automatic) {
    return (family.score || family.deriv) ? ScoreSource::analytic : ScoreSource::finite_difference;
  }
  if (source == ScoreSource::analytic && !family.score && !family.deriv) {
    throw DomainError(family.name + ": no analytic score or derivative available");
  }
  return source;
}

LevelResult evaluate_level(const DensityFamily& family, std::span<const double> theta, GramRoute route,
                           std::size_t n_radial, std::size_t n_angular, const QuadratureScheme& scheme,
                           bool want_gram, ScoreSource source) {
  if (route == GramRoute::reduced) return reduced_level(family, theta, n_radial, scheme.compactification, want_gram);
  return product_level(family, theta, n_radial, n_angular, scheme.compactification, want_gram, source);
}

void validate_scheme(const QuadratureScheme& scheme) {
  if (scheme.radial_nodes == 0 || scheme.angular_nodes == 0) throw DomainError("quadrature: node counts must be positive");
  if (!(scheme.rel_tol > 0.0)) throw DomainError("quadrature: rel_tol must be positive");
  if (scheme.max_doublings < 1) throw DomainError("quadrature: max_doublings must be at least 1");
}

}  // namespace

GramMatrix info_gram(const DensityFamily& family, std::span<const double> theta, const QuadratureScheme& scheme,
                     GramRoute route, ScoreSource scores) {
  validate_scheme(scheme);
  family.require_admissible(theta);
  route = resolve_route(family, route);
  if (route == GramRoute::product_rule) scores = resolve_scores(family, scores);

  const std::size_t p = family.param_dim;
  std::size_t n_radial = scheme.radial_nodes;
  std::size_t n_angular = scheme.angular_nodes;
  LevelResult previous = evaluate_level(family, theta, route, n_radial, n_angular, scheme, true, scores);

  GramMatrix out(p);
  out.theta.assign(theta.begin(), theta.end());
  for (int d = 1; d <= scheme.max_doublings; ++d) {
    n_radial *= 2;
    if (route == GramRoute::product_rule) n_angular *= 2;
    const LevelResult current = evaluate_level(family, theta, route, n_radial, n_angular, scheme, true, scores);

    double scale = 0.0;
    double worst = 0.0;
    for (std::size_t k = 0; k < p * p; ++k) {
      scale = std::max(scale, std::abs(current.gram[k]));
      worst = std::max(worst, std::abs(current.gram[k] - previous.gram[k]));
    }
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i; j < p; ++j)
        out.set(i, j, current.gram[i * p + j], std::abs(current.gram[i * p + j] - previous.gram[i * p + j]));
    out.doublings = d;
    out.nodes = n_radial * (route == GramRoute::product_rule ? sphere_size(family.domain.dim, n_angular) : 1);
    out.converged = worst <= scheme.rel_tol * scale;
    if (out.converged) break;
    previous = current;
  }
  return out;
}

QuadResult total_mass(const DensityFamily& family, std::span<const double> theta, const QuadratureScheme& scheme,
                      GramRoute route) {
  validate_scheme(scheme);
  family.require_admissible(theta);
  route = resolve_route(family, route);

  std::size_t n_radial = scheme.radial_nodes;
  std::size_t n_angular = scheme.angular_nodes;
  const auto level = [&] {
    return evaluate_level(family, theta, route, n_radial, n_angular, scheme, false, ScoreSource::automatic).mass;
  };
  QuadResult out;
  double previous = level();
  out.value = previous;
  out.nodes = n_radial;
  out.err = std::numeric_limits<double>::infinity();
  for (int d = 1; d <= scheme.max_doublings; ++d) {
    n_radial *= 2;
    if (route == GramRoute::product_rule) n_angular *= 2;
    const double current = level();
    out.value = current;
    out.err = std::abs(current - previous);
    out.doublings = d;
    out.nodes = n_radial;
    if (out.err <= scheme.rel_tol * std::abs(current)) {
      out.converged = true;
      break;
    }
    previous = current;
  }
  return out;
}

double default_fd_step(std::span<const double> theta, std::size_t i) {
  return 1e-5 * std::max(std::abs(theta[i]), 1.0);
}

double score_fd(const DensityFamily& family, std::span<const double> theta, std::span<const double> x,
                std::size_t i, double step) {
  if (i >= family.param_dim) throw DomainError(family.name + ": score direction out of range");
  if (!(step >= 1e-12 * std::max(std::abs(theta[i]), 1.0)) || !std::isfinite(step)) {
    throw StepUnderflow(family.name + ": finite-difference step below 1e-12 of the parameter scale");
  }
  Vector shifted(theta.begin(), theta.end());
  const auto log_density_at = [&](double offset) {
    shifted[i] = theta[i] + offset;
    family.require_admissible(shifted);
    const double e = family.density(shifted, x);
    if (!(e > 0.0) || !std::isfinite(e)) {
      throw NonFiniteIntegrand(family.name + ": density not positive at a finite-difference probe");
    }
    return std::log(e);
  };
  const auto central = [&](double h) { return (log_density_at(h) - log_density_at(-h)) / (2.0 * h); };
  return (4.0 * central(0.5 * step) - central(step)) / 3.0;
}

DensityFamily gaussian_location_scale_family() {
  DensityFamily f;
  f.name = "gaussian_location_scale";
  f.param_dim = 2;
  f.domain = Domain::euclidean(1);
  f.param_domain = {{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()},
                    {0.0, std::numeric_limits<double>::infinity(), true, false}};
  f.density = [](std::span<const double> theta, std::span<const double> x) {
    const double z = (x[0] - theta[0]) / theta[1];
    return std::exp(-0.5 * z * z) / (std::sqrt(2.0 * kPi) * theta[1]);
  };
  f.score = [](std::span<const double> theta, std::span<const double> x, std::size_t i) {
    const double sigma = theta[1];
    const double dx = x[0] - theta[0];
    if (i == 0) return dx / (sigma * sigma);
    return -1.0 / sigma + dx * dx / (sigma * sigma * sigma);
  };
  f.locate_center = [](std::span<const double> theta) { return Vector{theta[0]}; };
  f.locate_scale = [](std::span<const double> theta) { return theta[1]; };
  return f;
}

}  // namespace infometric
