#include "infometric/instanton_models.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "infometric/kernels/kernels.hpp"

namespace infometric {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double squared_distance(const BpstParams& p, std::span<const double> x) {
  double r2 = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double d = x[i] - p.center[i];
    r2 += d * d;
  }
  return r2;
}

BpstParams params_from_theta(std::span<const double> theta) {
  return BpstParams{theta[0], {theta[1], theta[2], theta[3], theta[4]}};
}

double bpst_scale_score(const BpstParams& p, double r2) {
  return 4.0 / p.lambda - 8.0 * p.lambda / (p.lambda * p.lambda + r2);
}

double affine_d(std::span<const double> x) { return 1.0 + x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]; }

}  // namespace

void BpstParams::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("BPST scale must be positive and finite");
  for (double c : center)
    if (!std::isfinite(c)) throw DomainError("BPST center must be finite");
}

double bpst_density(const BpstParams& p, std::span<const double> x) {
  const double l2 = p.lambda * p.lambda;
  const double q = l2 + squared_distance(p, x);
  const double q2 = q * q;
  return 48.0 * (l2 * l2) / (q2 * q2);
}

std::array<double, 4> bpst_density_gradient(const BpstParams& p, std::span<const double> x) {
  const double q = p.lambda * p.lambda + squared_distance(p, x);
  const double factor = -8.0 * bpst_density(p, x) / q;
  return {factor * (x[0] - p.center[0]), factor * (x[1] - p.center[1]), factor * (x[2] - p.center[2]),
          factor * (x[3] - p.center[3])};
}

DensityFamily bpst_family() {
  DensityFamily f;
  f.name = "bpst";
  f.param_dim = 5;
  f.domain = Domain::euclidean(4);
  f.domain.radial_reducible = true;
  f.param_domain = {{0.0, kInf, true, false}, {-kInf, kInf}, {-kInf, kInf}, {-kInf, kInf}, {-kInf, kInf}};
  f.density = [](std::span<const double> theta, std::span<const double> x) {
    return bpst_density(params_from_theta(theta), x);
  };
  f.score = [](std::span<const double> theta, std::span<const double> x, std::size_t i) {
    const BpstParams p = params_from_theta(theta);
    const double r2 = squared_distance(p, x);
    if (i == 0) return bpst_scale_score(p, r2);
    return 8.0 * (x[i - 1] - p.center[i - 1]) / (p.lambda * p.lambda + r2);
  };
  f.locate_center = [](std::span<const double> theta) { return Vector(theta.begin() + 1, theta.end()); };
  f.locate_scale = [](std::span<const double> theta) { return theta[0]; };

  RadialReduction red;
  red.dim = 4;
  red.scale = [](std::span<const double> theta) { return theta[0]; };
  red.center = [](std::span<const double> theta) { return Vector(theta.begin() + 1, theta.end()); };
  red.directions = [](std::span<const double>) {
    std::vector<Vector> dirs(5, Vector(4, 0.0));
    for (std::size_t i = 0; i < 4; ++i) dirs[i + 1][i] = 1.0;
    return dirs;
  };
  red.evaluate = [](std::span<const double> theta, std::span<const double> r, RadialBatch& out) {
    kernels::active().bpst_radial(theta[0], r, kernels::BpstBatch{out.density, out.radial[0], out.linear[1]});
    for (std::size_t i = 2; i < 5; ++i) out.linear[i] = out.linear[1];
  };
  f.reduction = std::move(red);
  return f;
}

void Cp2Params::validate() const {
  if (!(t >= 0.0 && t < 1.0)) throw DomainError("CP2 family parameter t must lie in [0, 1)");
}

double Cp2Params::lambda() const { return std::sqrt(1.0 - t * t); }

Cp2Pointwise cp2_pointwise_at(const Cp2Params& p, double D) {
  p.validate();
  const double t = p.t;
  const double t2 = t * t;
  const double one_minus = 1.0 - t2;
  const double dm = D - t2;
  const double dm4 = std::pow(dm, 4);
  const double dm5 = dm4 * dm;
  const double d3 = D * D * D;
  Cp2Pointwise out{};
  out.D = D;
  out.pair_rad = 32.0 * t * one_minus * d3 * (-D * D + D * (3.0 - 4.0 * t2) + 3.0 * t2 - t2 * t2) / dm5;
  out.pair_tan_coeff = -96.0 * t2 * one_minus * one_minus * d3 * (D + t2) / dm5;
  out.f_norm_sq = 16.0 * d3 * one_minus * one_minus * (D + 2.0 * t2) / dm4;
  out.vol_ratio = 1.0 / d3;
  return out;
}

Cp2Pointwise cp2_pointwise(const Cp2Params& p, std::complex<double> z1, std::complex<double> z2) {
  return cp2_pointwise_at(p, 1.0 + std::norm(z1) + std::norm(z2));
}

std::array<double, 4> covector_direction(const Covector& mu) {
  // Re(μ₁ z₁) = Re μ₁ · x₀ − Im μ₁ · x₁ for z₁ = x₀ + i x₁.
  return {mu[0].real(), -mu[0].imag(), mu[1].real(), -mu[1].imag()};
}

DensityFamily cp2_family(std::vector<Covector> tangential) {
  if (tangential.empty()) {
    using C = std::complex<double>;
    tangential = {Covector{C(1, 0), C(0, 0)}, Covector{C(0, 1), C(0, 0)}, Covector{C(0, 0), C(1, 0)},
                  Covector{C(0, 0), C(0, 1)}};
  }
  std::vector<Vector> dirs(tangential.size() + 1, Vector(4, 0.0));
  for (std::size_t k = 0; k < tangential.size(); ++k) {
    const auto v = covector_direction(tangential[k]);
    dirs[k + 1].assign(v.begin(), v.end());
  }

  DensityFamily f;
  f.name = "cp2";
  f.param_dim = tangential.size() + 1;
  f.domain = Domain::euclidean4_weighted([](std::span<const double> x) {
    const double d = affine_d(x);
    return 1.0 / (d * d * d);
  });
  f.domain.radial_reducible = true;
  f.param_domain.push_back({0.0, 1.0, false, true});
  for (std::size_t k = 0; k < tangential.size(); ++k) f.param_domain.push_back({0.0, 0.0});

  f.density = [](std::span<const double> theta, std::span<const double> x) {
    return cp2_pointwise_at(Cp2Params{theta[0]}, affine_d(x)).f_norm_sq;
  };
  f.score = [dirs](std::span<const double> theta, std::span<const double> x, std::size_t i) {
    const Cp2Pointwise pw = cp2_pointwise_at(Cp2Params{theta[0]}, affine_d(x));
    if (i == 0) return 2.0 * pw.pair_rad / pw.f_norm_sq;
    double re_mu_z = 0.0;
    for (std::size_t c = 0; c < 4; ++c) re_mu_z += dirs[i][c] * x[c];
    return 2.0 * pw.pair_tan_coeff * re_mu_z / pw.f_norm_sq;
  };

  RadialReduction red;
  red.dim = 4;
  red.scale = [](std::span<const double>) { return 1.0; };
  red.center = [](std::span<const double>) { return Vector(4, 0.0); };
  red.directions = [dirs](std::span<const double>) { return dirs; };
  red.evaluate = [](std::span<const double> theta, std::span<const double> r, RadialBatch& out) {
    const std::size_t p = out.radial.size();
    std::vector<double> tangential_coeff(r.size());
    kernels::active().cp2_radial(theta[0], r,
                                 kernels::Cp2Batch{out.density, out.weight, out.radial[0], tangential_coeff});
    for (std::size_t k = 1; k < p; ++k) out.linear[k] = tangential_coeff;
  };
  f.reduction = std::move(red);
  return f;
}

namespace {

GramValue entry(const GramMatrix& g, std::size_t i, std::size_t j) {
  return GramValue{g(i, j), g.error(i, j), g.converged, g.doublings, g.nodes};
}

}  // namespace

GramValue cp2_radial_gram(const Cp2Params& p, const QuadratureScheme& scheme) {
  p.validate();
  const DensityFamily family = cp2_family({Covector{}});
  const std::vector<double> theta{p.t, 0.0};
  return entry(info_gram(family, theta, scheme, GramRoute::reduced), 0, 0);
}

GramValue cp2_tangential_gram(const Cp2Params& p, const Covector& mu, const Covector& nu,
                              const QuadratureScheme& scheme) {
  p.validate();
  const DensityFamily family = cp2_family({mu, nu});
  const std::vector<double> theta{p.t, 0.0, 0.0};
  return entry(info_gram(family, theta, scheme, GramRoute::reduced), 1, 2);
}

ModelIntegrals model_integrals(double upper, double rel_tol) {
  if (!(upper > 0.0)) throw DomainError("model_integrals: upper limit must be positive");
  const auto nodes = [upper](std::size_t n) { return radial_segment_nodes(n, upper, 1.0); };
  const auto first = [](double rho) {
    const double r2 = rho * rho;
    const double q = 1.0 + r2;
    const double q3 = q * q * q;
    return rho * r2 * (1.0 - r2) * (1.0 - r2) / (q3 * q3);
  };
  const auto second = [](double rho) {
    const double r2 = rho * rho;
    const double q = 1.0 + r2;
    const double q3 = q * q * q;
    return rho * r2 * r2 / (q3 * q3);
  };
  return ModelIntegrals{integrate_doubling(first, nodes, 16, rel_tol, 8, 1e-300),
                        integrate_doubling(second, nodes, 16, rel_tol, 8, 1e-300)};
}

double divergence_identity_residual(const BpstParams& p, VectorField field, std::span<const double> x) {
  p.validate();
  const double e = bpst_density(p, x);
  const auto grad = bpst_density_gradient(p, x);
  const double r2 = squared_distance(p, x);
  if (field.kind == VectorField::Kind::dilation) {
    double flow = 0.0;
    for (std::size_t i = 0; i < 4; ++i) flow += (x[i] - p.center[i]) * grad[i];
    return p.lambda * bpst_scale_score(p, r2) * e + 4.0 * e + flow;
  }
  if (field.axis >= 4) throw DomainError("translation axis must be in 0..3");
  const std::size_t i = field.axis;
  const double center_score = 8.0 * (x[i] - p.center[i]) / (p.lambda * p.lambda + r2);
  return center_score * e + grad[i];
}

}  // namespace infometric
