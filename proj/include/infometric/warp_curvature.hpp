#pragma once

// Cohomogeneity-one metrics  scale · (F(λ) dλ² + H(λ) g_fiber)  on an
// interval times CP². The fiber is either Fubini–Study (sectional
// curvatures 1 and 4 on the TT1 and TT4 planes) or flat.

#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "infometric/cp2_closed_form.hpp"
#include "infometric/numeric/jet.hpp"

namespace infometric {

enum class Preset {
  info_cp2,          // F = f/λ², H = h/λ², scale 128π²/5
  hyperbolic_model,  // F = H = 1/λ² over a flat fiber: hyperbolic half-space
  collar_model,      // F = H = 1/λ² over g_FS
  vertex_model,      // dr² + 3r² g_FS with r = 1 − λ
  custom,
};

const char* preset_name(Preset p);

struct WarpedMetric {
  Preset preset = Preset::custom;
  std::string name;

  // Coefficient values. When the jets are present they are used for the
  // derivatives; otherwise derivatives come from Richardson central
  // differences with relative step fd_step.
  std::function<double(double)> F;
  std::function<double(double)> H;
  std::function<Jet2(double)> F_jet;
  std::function<Jet2(double)> H_jet;
  double fd_step = 1e-3;

  double scale = 1.0;
  double k_tt1 = 1.0;  // fiber curvature of the (T, T') plane
  double k_tt4 = 4.0;  // fiber curvature of the (T, JT) plane
  double lambda_lo = 0.0;
  double lambda_hi = 1.0;
  bool has_vertex = false;  // λ_hi is at finite distance (cone vertex)

  bool analytic() const { return static_cast<bool>(F_jet) && static_cast<bool>(H_jet); }
  bool contains(double lambda) const { return lambda > lambda_lo && lambda < lambda_hi; }
  void require_contains(double lambda) const;

  Jet2 F_at(double lambda, double step_factor = 1.0) const;
  Jet2 H_at(double lambda, double step_factor = 1.0) const;
};

WarpedMetric info_cp2_metric(Transcription tr = Transcription::reconciled, double scale = kCollarConstant);
WarpedMetric hyperbolic_metric(double c = 1.0);
WarpedMetric collar_metric(double c = 1.0);
WarpedMetric vertex_metric();
WarpedMetric custom_metric(std::string name, std::function<double(double)> F, std::function<double(double)> H,
                           double scale = 1.0, double k_tt1 = 1.0, double k_tt4 = 4.0, double lambda_lo = 0.0,
                           double lambda_hi = 1.0);

struct ArcLength {
  double value = 0.0;
  double err = 0.0;
  bool converged = false;
  bool divergent = false;  // value beyond 1e9 or not finite
};

// ∫ sqrt(scale·F) dλ between the two points, order-independent (unsigned),
// integrated in u = log λ.
ArcLength arclength(const WarpedMetric& m, double lambda1, double lambda2);

// Arc length from λ to the upper end of the interval; needs has_vertex.
ArcLength distance_to_vertex(const WarpedMetric& m, double lambda);

struct CurvatureSample {
  double lambda = 0.0;
  double r = 0.0;  // signed arc length from lambda_ref, increasing toward λ_hi
  double sigma_TN = 0.0;
  double sigma_TT1 = 0.0;
  double sigma_TT4 = 0.0;
  bool stable = true;        // false when halving the difference step moves a value by more than 1e-6
  double fd_change = 0.0;    // largest relative change under step halving; 0 for analytic metrics
};

inline constexpr double kDefaultLambdaRef = 0.5;

// φ = sqrt(scale·H) as a function of arc length r:
//   σ_TN = −φ''/φ,  σ_TT1 = (k_tt1 − φ'²)/φ²,  σ_TT4 = (k_tt4 − φ'²)/φ²
CurvatureSample primary_curvatures(const WarpedMetric& m, double lambda, double lambda_ref = kDefaultLambdaRef);

struct VertexLimits {
  // Limits for the metric divided by its scale.
  double sigma_TN_limit = 0.0;
  double r2_sigma_TT1_limit = 0.0;
  double r2_sigma_TT4_limit = 0.0;
  double fs_coefficient = 0.0;  // H/r², the factor in dr² + r²(·) g_FS
  // Same extrapolation with the largest r dropped; stable when every spread
  // is within stability_tol · max(|limit|, 1).
  std::array<double, 4> spread{};
  bool stable = false;
  std::vector<double> r;
  std::vector<double> lambda;
};

// r_sequence: distances to the vertex (in the scale-free metric), strictly
// decreasing, at least five points. Polynomial extrapolation to r = 0.
VertexLimits vertex_asymptotics(const WarpedMetric& m, const std::vector<double>& r_sequence,
                                double stability_tol = 1e-3);

struct CollarLimits {
  std::vector<double> lambda;
  std::vector<double> deviation;  // max over the three of |scale·σ + 1|
  double max_deviation = 0.0;
  bool monotone = false;  // deviation decreases as λ decreases
};

CollarLimits collar_limits(const WarpedMetric& m, const std::vector<double>& lambda_sequence);

struct GeodesicPoint {
  double time = 0.0;
  double lambda = 0.0;
  double s = 0.0;
  double lambda_dot = 0.0;
  double s_dot = 0.0;
  double energy = 0.0;    // scale·(F λ̇² + H ṡ²)
  double momentum = 0.0;  // scale·H ṡ
};

struct GeodesicTrace {
  std::vector<GeodesicPoint> points;
  double max_energy_drift = 0.0;    // relative to the initial value
  double max_momentum_drift = 0.0;  // relative; absolute when the initial value is 0
  bool rejected = false;            // step underflow at the domain boundary
  std::size_t substeps = 0;         // steps that needed halving
};

inline constexpr double kDefaultGeodesicStep = 1e-3;

// Geodesics of scale·(F dλ² + H ds²) in the 2-strip, classical RK4 with a
// fixed step that is halved only to stay inside the interval.
GeodesicTrace geodesic_trace(const WarpedMetric& m, std::array<double, 2> start, std::array<double, 2> velocity,
                             std::size_t steps, double step_size = kDefaultGeodesicStep);

struct ProbeRow {
  double eps = 0.0;
  double log_ratio = 0.0;  // log(λ0/ε)
  ArcLength length;
};

struct CompletenessProbe {
  double lambda0 = 0.0;
  std::vector<ProbeRow> rows;
  double fitted_slope = 0.0;  // least squares of length against log(λ0/ε)
  double tail_slope = 0.0;    // from the last two rows
};

CompletenessProbe completeness_probe(const WarpedMetric& m, double lambda0, const std::vector<double>& eps_sequence);

}  // namespace infometric
