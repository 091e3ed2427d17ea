#include "infometric/warp_curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "infometric/numeric/quadrature.hpp"

namespace infometric {
namespace {

constexpr double kDivergenceLimit = 1e9;
constexpr double kArcRelTol = 1e-13;
constexpr double kStabilityTol = 1e-6;

// Value and Richardson-extrapolated central first and second differences.
Jet2 fd_jet(const std::function<double(double)>& g, double x, double h) {
  const double f0 = g(x);
  const double fp = g(x + h), fm = g(x - h);
  const double fp2 = g(x + 0.5 * h), fm2 = g(x - 0.5 * h);
  const double d1_h = (fp - fm) / (2.0 * h);
  const double d1_h2 = (fp2 - fm2) / h;
  const double d2_h = (fp - 2.0 * f0 + fm) / (h * h);
  const double d2_h2 = (fp2 - 2.0 * f0 + fm2) / (0.25 * h * h);
  return Jet2(f0, (4.0 * d1_h2 - d1_h) / 3.0, (4.0 * d2_h2 - d2_h) / 3.0);
}

Jet2 inverse_square(double lambda) {
  const Jet2 lam = Jet2::variable(lambda);
  return reciprocal(lam * lam);
}

std::array<double, 3> curvatures_at(const WarpedMetric& m, double lambda, double step_factor) {
  const Jet2 F = m.F_at(lambda, step_factor);
  const Jet2 H = m.H_at(lambda, step_factor);
  if (!(F.v > 0.0) || !(H.v > 0.0))
    throw DomainError("warped metric coefficients must be positive at lambda = " + std::to_string(lambda));
  const Jet2 phi = sqrt(H);
  const Jet2 root_f = sqrt(F);
  const double p = phi.d1 / root_f.v;  // dφ/dr
  const double p_lambda = (phi.d2 - p * root_f.d1) / root_f.v;
  const double phi_rr = p_lambda / root_f.v;
  return {-phi_rr / phi.v / m.scale, (m.k_tt1 - p * p) / H.v / m.scale, (m.k_tt4 - p * p) / H.v / m.scale};
}

double relative_change(double a, double b) {
  const double denom = std::max(std::abs(b), std::numeric_limits<double>::min());
  return std::abs(a - b) / denom;
}

ArcLength integrate_length(const WarpedMetric& m, double a, double b) {
  ArcLength out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  const double ulo = std::log(lo);
  const double uhi = std::log(hi);
  const auto integrand = [&m](double u) {
    const double lambda = std::exp(u);
    return std::sqrt(m.F(lambda)) * lambda;
  };
  const auto nodes = [ulo, uhi](std::size_t n) { return interval_nodes(n, ulo, uhi); };
  const QuadResult q = integrate_doubling(integrand, nodes, 32, kArcRelTol, 8, 1e-300);
  const double root_scale = std::sqrt(m.scale);
  out.value = root_scale * q.value;
  out.err = root_scale * q.err;
  out.converged = q.converged;
  out.divergent = !std::isfinite(out.value) || out.value > kDivergenceLimit;
  return out;
}

// Value of the interpolating polynomial through (x_k, y_k) at x = 0.
double neville_at_zero(std::vector<double> x, std::vector<double> y) {
  const std::size_t n = x.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = 0; i + level < n; ++i)
      y[i] = (x[i + level] * y[i] - x[i] * y[i + 1]) / (x[i + level] - x[i]);
  return y[0];
}

double lambda_at_vertex_distance(const WarpedMetric& m, double target) {
  const double root_scale = std::sqrt(m.scale);
  const auto distance = [&](double lambda) { return distance_to_vertex(m, lambda).value / root_scale; };
  double a = 0.5 * (m.lambda_lo + m.lambda_hi);
  while (distance(a) < target) {
    a = m.lambda_lo + 0.5 * (a - m.lambda_lo);
    if (a - m.lambda_lo < 1e-12) throw DomainError("vertex distance beyond the working interval");
  }
  double b = m.lambda_hi;
  double x = std::max(a, m.lambda_hi - target);
  if (!(x > a && x < b)) x = 0.5 * (a + b);
  for (int iter = 0; iter < 200; ++iter) {
    const double residual = distance(x) - target;  // decreasing in λ
    if (residual > 0.0) a = x; else b = x;
    const double slope = -std::sqrt(m.F(x));
    double next = x - residual / slope;
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  return x;
}

}  // namespace

const char* preset_name(Preset p) {
  switch (p) {
    case Preset::info_cp2:
      return "info";
    case Preset::hyperbolic_model:
      return "hyp";
    case Preset::collar_model:
      return "collar";
    case Preset::vertex_model:
      return "vertex";
    case Preset::custom:
      return "custom";
  }
  return "custom";
}

void WarpedMetric::require_contains(double lambda) const {
  if (!contains(lambda))
    throw DomainError("lambda = " + std::to_string(lambda) + " outside the working interval of " + name);
}

Jet2 WarpedMetric::F_at(double lambda, double step_factor) const {
  if (F_jet) return F_jet(lambda);
  const double h = std::min(fd_step * step_factor * lambda, 0.45 * std::min(lambda - lambda_lo, lambda_hi - lambda));
  return fd_jet(F, lambda, h);
}

Jet2 WarpedMetric::H_at(double lambda, double step_factor) const {
  if (H_jet) return H_jet(lambda);
  const double h = std::min(fd_step * step_factor * lambda, 0.45 * std::min(lambda - lambda_lo, lambda_hi - lambda));
  return fd_jet(H, lambda, h);
}

WarpedMetric info_cp2_metric(Transcription tr, double scale) {
  WarpedMetric m;
  m.preset = Preset::info_cp2;
  m.name = std::string("info_cp2/") + transcription_name(tr);
  m.F = [tr](double l) { return f_coeff(l, tr) / (l * l); };
  m.H = [tr](double l) { return h_coeff(l, tr) / (l * l); };
  m.F_jet = [tr](double l) { return f_jet(l, tr) * inverse_square(l); };
  m.H_jet = [tr](double l) { return h_jet(l, tr) * inverse_square(l); };
  m.scale = scale;
  m.has_vertex = true;
  return m;
}

WarpedMetric hyperbolic_metric(double c) {
  WarpedMetric m;
  m.preset = Preset::hyperbolic_model;
  m.name = "hyperbolic";
  m.F = [](double l) { return 1.0 / (l * l); };
  m.H = m.F;
  m.F_jet = inverse_square;
  m.H_jet = inverse_square;
  m.scale = c;
  m.k_tt1 = 0.0;
  m.k_tt4 = 0.0;
  m.lambda_hi = std::numeric_limits<double>::infinity();
  return m;
}

WarpedMetric collar_metric(double c) {
  WarpedMetric m = hyperbolic_metric(c);
  m.preset = Preset::collar_model;
  m.name = "collar";
  m.k_tt1 = 1.0;
  m.k_tt4 = 4.0;
  m.lambda_hi = 1.0;
  return m;
}

WarpedMetric vertex_metric() {
  WarpedMetric m;
  m.preset = Preset::vertex_model;
  m.name = "vertex";
  m.F = [](double) { return 1.0; };
  m.H = [](double l) { return 3.0 * (1.0 - l) * (1.0 - l); };
  m.F_jet = [](double) { return Jet2(1.0); };
  m.H_jet = [](double l) { return Jet2(3.0 * (1.0 - l) * (1.0 - l), -6.0 * (1.0 - l), 6.0); };
  m.has_vertex = true;
  return m;
}

WarpedMetric custom_metric(std::string name, std::function<double(double)> F, std::function<double(double)> H,
                           double scale, double k_tt1, double k_tt4, double lambda_lo, double lambda_hi) {
  WarpedMetric m;
  m.preset = Preset::custom;
  m.name = std::move(name);
  m.F = std::move(F);
  m.H = std::move(H);
  m.scale = scale;
  m.k_tt1 = k_tt1;
  m.k_tt4 = k_tt4;
  m.lambda_lo = lambda_lo;
  m.lambda_hi = lambda_hi;
  return m;
}

ArcLength arclength(const WarpedMetric& m, double lambda1, double lambda2) {
  m.require_contains(lambda1);
  m.require_contains(lambda2);
  return integrate_length(m, lambda1, lambda2);
}

ArcLength distance_to_vertex(const WarpedMetric& m, double lambda) {
  if (!m.has_vertex) throw DomainError(m.name + " has no vertex at finite distance");
  m.require_contains(lambda);
  return integrate_length(m, lambda, m.lambda_hi);
}

CurvatureSample primary_curvatures(const WarpedMetric& m, double lambda, double lambda_ref) {
  m.require_contains(lambda);
  CurvatureSample out;
  out.lambda = lambda;
  std::array<double, 3> sigma = curvatures_at(m, lambda, 1.0);
  if (!m.analytic()) {
    const std::array<double, 3> halved = curvatures_at(m, lambda, 0.5);
    for (std::size_t k = 0; k < 3; ++k) out.fd_change = std::max(out.fd_change, relative_change(sigma[k], halved[k]));
    out.stable = out.fd_change <= kStabilityTol;
    sigma = halved;
  }
  out.sigma_TN = sigma[0];
  out.sigma_TT1 = sigma[1];
  out.sigma_TT4 = sigma[2];
  if (m.contains(lambda_ref)) {
    const double length = integrate_length(m, lambda_ref, lambda).value;
    out.r = lambda >= lambda_ref ? length : -length;
  }
  return out;
}

VertexLimits vertex_asymptotics(const WarpedMetric& m, const std::vector<double>& r_sequence, double stability_tol) {
  if (!m.has_vertex) throw DomainError(m.name + " has no vertex at finite distance");
  if (r_sequence.size() < 5) throw DomainError("vertex_asymptotics needs at least five r values");
  for (std::size_t k = 0; k < r_sequence.size(); ++k) {
    if (!(r_sequence[k] > 0.0)) throw DomainError("vertex_asymptotics: r values must be positive");
    if (k > 0 && !(r_sequence[k] < r_sequence[k - 1]))
      throw DomainError("vertex_asymptotics: r values must decrease toward the vertex");
  }

  VertexLimits out;
  out.r = r_sequence;
  std::array<std::vector<double>, 4> y;
  for (double r : r_sequence) {
    const double lambda = lambda_at_vertex_distance(m, r);
    out.lambda.push_back(lambda);
    const auto sigma = curvatures_at(m, lambda, 1.0);
    y[0].push_back(m.scale * sigma[0]);
    y[1].push_back(r * r * m.scale * sigma[1]);
    y[2].push_back(r * r * m.scale * sigma[2]);
    y[3].push_back(m.H(lambda) / (r * r));
  }

  std::array<double, 4> full{};
  out.stable = true;
  const std::vector<double> tail_r(r_sequence.begin() + 1, r_sequence.end());
  for (std::size_t q = 0; q < 4; ++q) {
    full[q] = neville_at_zero(r_sequence, y[q]);
    const double reduced = neville_at_zero(tail_r, std::vector<double>(y[q].begin() + 1, y[q].end()));
    out.spread[q] = std::abs(full[q] - reduced);
    // Limits are scale-free and O(1); a zero limit is judged absolutely.
    if (!std::isfinite(full[q]) || out.spread[q] > stability_tol * std::max(std::abs(full[q]), 1.0)) out.stable = false;
  }
  out.sigma_TN_limit = full[0];
  out.r2_sigma_TT1_limit = full[1];
  out.r2_sigma_TT4_limit = full[2];
  out.fs_coefficient = full[3];
  return out;
}

CollarLimits collar_limits(const WarpedMetric& m, const std::vector<double>& lambda_sequence) {
  CollarLimits out;
  std::vector<std::pair<double, double>> rows;
  for (double lambda : lambda_sequence) {
    if (!(lambda > 0.0 && lambda <= 0.2)) throw DomainError("collar_limits: lambda values must lie in (0, 0.2]");
    const auto sigma = curvatures_at(m, lambda, 1.0);
    double dev = 0.0;
    for (double s : sigma) dev = std::max(dev, std::abs(m.scale * s + 1.0));
    out.lambda.push_back(lambda);
    out.deviation.push_back(dev);
    out.max_deviation = std::max(out.max_deviation, dev);
    rows.emplace_back(lambda, dev);
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  out.monotone = true;
  for (std::size_t k = 1; k < rows.size(); ++k)
    if (rows[k].second > rows[k - 1].second) out.monotone = false;
  return out;
}

GeodesicTrace geodesic_trace(const WarpedMetric& m, std::array<double, 2> start, std::array<double, 2> velocity,
                             std::size_t steps, double step_size) {
  m.require_contains(start[0]);
  if (velocity[0] == 0.0 && velocity[1] == 0.0) throw DomainError("geodesic_trace: velocity must be nonzero");
  if (!(step_size > 0.0)) throw DomainError("geodesic_trace: step size must be positive");

  using State = std::array<double, 4>;  // λ, s, λ̇, ṡ
  const auto rhs = [&m](const State& y) {
    const Jet2 F = m.F_at(y[0]);
    const Jet2 H = m.H_at(y[0]);
    const double ld = y[2], sd = y[3];
    return State{ld, sd, (-0.5 * F.d1 * ld * ld + 0.5 * H.d1 * sd * sd) / F.v, -H.d1 * ld * sd / H.v};
  };
  const auto axpy = [](const State& y, double h, const State& k) {
    return State{y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2], y[3] + h * k[3]};
  };
  // One RK4 step; false when a stage leaves the interval.
  const auto rk4 = [&](const State& y, double h, State& out) {
    const State k1 = rhs(y);
    const State y2 = axpy(y, 0.5 * h, k1);
    if (!m.contains(y2[0])) return false;
    const State k2 = rhs(y2);
    const State y3 = axpy(y, 0.5 * h, k2);
    if (!m.contains(y3[0])) return false;
    const State k3 = rhs(y3);
    const State y4 = axpy(y, h, k3);
    if (!m.contains(y4[0])) return false;
    const State k4 = rhs(y4);
    for (std::size_t i = 0; i < 4; ++i) out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return m.contains(out[0]);
  };
  const auto point = [&m](double time, const State& y) {
    const double F = m.F(y[0]);
    const double H = m.H(y[0]);
    return GeodesicPoint{time, y[0], y[1], y[2], y[3], m.scale * (F * y[2] * y[2] + H * y[3] * y[3]),
                         m.scale * H * y[3]};
  };

  GeodesicTrace trace;
  trace.points.reserve(steps + 1);
  State y{start[0], start[1], velocity[0], velocity[1]};
  double time = 0.0;
  trace.points.push_back(point(time, y));
  const double e0 = trace.points.front().energy;
  const double j0 = trace.points.front().momentum;
  const double min_step = step_size * 1e-9;

  for (std::size_t n = 0; n < steps && !trace.rejected; ++n) {
    double remaining = step_size;
    bool halved = false;
    while (remaining > 0.0) {
      double h = remaining;
      State next{};
      while (!rk4(y, h, next)) {
        h *= 0.5;
        halved = true;
        if (h < min_step) break;
      }
      if (h < min_step) {
        trace.rejected = true;
        break;
      }
      y = next;
      time += h;
      remaining -= h;
    }
    if (halved) ++trace.substeps;
    if (trace.rejected) break;
    const GeodesicPoint p = point(time, y);
    trace.max_energy_drift = std::max(trace.max_energy_drift, std::abs(p.energy - e0) / e0);
    const double j_drift = j0 == 0.0 ? std::abs(p.momentum) : std::abs(p.momentum - j0) / std::abs(j0);
    trace.max_momentum_drift = std::max(trace.max_momentum_drift, j_drift);
    trace.points.push_back(p);
  }
  return trace;
}

CompletenessProbe completeness_probe(const WarpedMetric& m, double lambda0, const std::vector<double>& eps_sequence) {
  m.require_contains(lambda0);
  if (eps_sequence.size() < 2) throw DomainError("completeness_probe needs at least two eps values");
  CompletenessProbe out;
  out.lambda0 = lambda0;
  for (std::size_t k = 0; k < eps_sequence.size(); ++k) {
    const double eps = eps_sequence[k];
    if (!(eps < lambda0)) throw DomainError("completeness_probe: eps values must lie below lambda0");
    if (k > 0 && !(eps < eps_sequence[k - 1])) throw DomainError("completeness_probe: eps values must decrease");
    out.rows.push_back(ProbeRow{eps, std::log(lambda0 / eps), arclength(m, eps, lambda0)});
  }
  const double n = static_cast<double>(out.rows.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& row : out.rows) {
    sx += row.log_ratio;
    sy += row.length.value;
  }
  const double mx = sx / n, my = sy / n;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& row : out.rows) {
    sxy += (row.log_ratio - mx) * (row.length.value - my);
    sxx += (row.log_ratio - mx) * (row.log_ratio - mx);
  }
  out.fitted_slope = sxy / sxx;
  const ProbeRow& last = out.rows.back();
  const ProbeRow& prev = out.rows[out.rows.size() - 2];
  out.tail_slope = (last.length.value - prev.length.value) / (last.log_ratio - prev.log_ratio);
  return out;
}

}  // namespace infometric
