#pragma once

// Closed-form information metric on the punctured CP² cone
//
//   g = (128π²/5) (f(λ) dλ² + h(λ) g_FS) / λ²,   0 < λ < 1.
//
// Two transcriptions of f, h are available. `printed` is the published
// expression verbatim. `reconciled` is what exact integration of the
// pointwise pairing formulas produces:
//
//   f_reconciled = f_printed / (1 − λ²)²
//   h_reconciled = h_printed with the λ¹⁰·log coefficient 1/81 → 10/81
//
// Only the reconciled pair agrees with the quadrature pipeline; see crosscheck.

#include "infometric/instanton_models.hpp"
#include "infometric/numeric/jet.hpp"

namespace infometric {

enum class Transcription { printed, reconciled };

const char* transcription_name(Transcription tr);

// Above λ = 1 − kDeltaSwitch the coefficients are summed from their Taylor
// series in s = 1 − λ² instead of the cancelling direct expression.
inline constexpr double kDeltaSwitch = 0.05;

double f_coeff(double lambda, Transcription tr = Transcription::reconciled);
double h_coeff(double lambda, Transcription tr = Transcription::reconciled);

// Value with first and second λ-derivative.
Jet2 f_jet(double lambda, Transcription tr = Transcription::reconciled);
Jet2 h_jet(double lambda, Transcription tr = Transcription::reconciled);

struct Cp2MetricCoeffs {
  double lambda = 0.0;
  double f = 0.0;
  double h = 0.0;
  double g_rr_coeff = 0.0;  // (128π²/5) f / λ²
  double g_fs_coeff = 0.0;  // (128π²/5) h / λ²
};

Cp2MetricCoeffs cp2_metric(double lambda, Transcription tr = Transcription::reconciled);

// Closed-form side of one transcription against the quadrature values.
struct ClosedFormSide {
  double closed_radial = 0.0;      // g_rr_coeff · t²/λ²
  double closed_tangential = 0.0;  // g_fs_coeff
  double rel_err_radial = 0.0;
  double rel_err_tangential = 0.0;
};

struct CrossCheckReport {
  double t = 0.0;
  double lambda = 0.0;
  double tolerance = 0.0;

  double quad_radial = 0.0;  // g_tt from cp2_radial_gram
  double quad_radial_err = 0.0;
  double quad_tangential = 0.0;  // cp2_tangential_gram with μ = ν = (1, 0)
  double quad_tangential_err = 0.0;
  bool quad_converged = false;

  // Reconciled transcription; these decide pass/fail.
  double closed_radial = 0.0;
  double closed_tangential = 0.0;
  double rel_err_radial = 0.0;
  double rel_err_tangential = 0.0;
  bool diverged = false;  // either relative error above tolerance

  // Printed transcription, kept for the discrepancy record.
  ClosedFormSide printed;
  double printed_radial_ratio = 0.0;  // quad_radial / printed closed_radial, = t⁻⁴ exactly
  bool printed_discrepancy = false;

  bool passed() const { return quad_converged && !diverged; }
};

// 0 < t < 1. Never adjusts either side; large errors are flagged, not thrown.
CrossCheckReport crosscheck(double t, const QuadratureScheme& scheme, double tolerance = 1e-3);

}  // namespace infometric
