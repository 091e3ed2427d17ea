#include "infometric/cp2_closed_form.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "cp2_series.hpp"

namespace infometric {
namespace {

using LD = long double;
using JetL = Jet<LD>;

void require_open_unit(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0, 1), got " + std::to_string(lambda));
}

JetL log_term(const JetL& l2) { return log(l2 / (3.0L - 2.0L * l2)); }

template <std::size_t N>
JetL horner(const std::array<LD, N>& c, const JetL& x) {
  JetL acc(c[N - 1]);
  for (std::size_t k = N - 1; k-- > 0;) acc = acc * x + c[k];
  return acc;
}

// Numerator shared by both f transcriptions:
//   81 − 270λ² + 315λ⁴ − 180λ⁶ + 60λ⁸ − 6λ¹⁰ + (20λ¹⁰ − 30λ⁸) L
JetL f_numerator(const JetL& l2) {
  const JetL l4 = l2 * l2;
  const JetL l8 = l4 * l4;
  const JetL poly = 81.0L + l2 * (-270.0L + l2 * (315.0L + l2 * (-180.0L + l2 * (60.0L + l2 * -6.0L))));
  return poly + l8 * (20.0L * l2 - 30.0L) * log_term(l2);
}

// 324 − 1080λ² + 1170λ⁴ − 135λ⁶ − 510λ⁸ + 231λ¹⁰ + (90λ⁶ − 120λ⁸ + 40λ¹⁰) L
JetL h_numerator(const JetL& l2) {
  const JetL l6 = l2 * l2 * l2;
  const JetL poly =
      324.0L + l2 * (-1080.0L + l2 * (1170.0L + l2 * (-135.0L + l2 * (-510.0L + l2 * 231.0L))));
  return poly + l6 * (90.0L + l2 * (-120.0L + l2 * 40.0L)) * log_term(l2);
}

// Printed minus reconciled h: (1/81 − 10/81) λ¹⁰ L / s².
JetL h_printed_excess(const JetL& l2, const JetL& s) {
  const JetL l4 = l2 * l2;
  return -(l4 * l4 * l2) * log_term(l2) / (9.0L * s * s);
}

bool use_series(double lambda) { return lambda > 1.0 - kDeltaSwitch; }

JetL f_eval(double lambda, Transcription tr) {
  require_open_unit(lambda);
  const JetL lam = JetL::variable(static_cast<LD>(lambda));
  const JetL l2 = lam * lam;
  const JetL s = 1.0L - l2;
  if (use_series(lambda)) {
    const JetL fr = horner(detail::kFSeries, s);
    return tr == Transcription::reconciled ? fr : s * s * fr;
  }
  const JetL s2 = s * s;
  const JetL denom = tr == Transcription::reconciled ? 81.0L * s2 * s2 : 81.0L * s2;
  return f_numerator(l2) / denom;
}

JetL h_eval(double lambda, Transcription tr) {
  require_open_unit(lambda);
  const JetL lam = JetL::variable(static_cast<LD>(lambda));
  const JetL l2 = lam * lam;
  const JetL s = 1.0L - l2;
  const JetL hr = use_series(lambda) ? horner(detail::kHSeries, s) : h_numerator(l2) / (324.0L * s * s);
  return tr == Transcription::reconciled ? hr : hr + h_printed_excess(l2, s);
}

double rel_err(double approx, double exact) {
  return exact == 0.0 ? std::abs(approx) : std::abs(approx - exact) / std::abs(exact);
}

}  // namespace

const char* transcription_name(Transcription tr) {
  return tr == Transcription::printed ? "printed" : "reconciled";
}

double f_coeff(double lambda, Transcription tr) { return static_cast<double>(f_eval(lambda, tr).v); }
double h_coeff(double lambda, Transcription tr) { return static_cast<double>(h_eval(lambda, tr).v); }
Jet2 f_jet(double lambda, Transcription tr) { return f_eval(lambda, tr).cast<double>(); }
Jet2 h_jet(double lambda, Transcription tr) { return h_eval(lambda, tr).cast<double>(); }

Cp2MetricCoeffs cp2_metric(double lambda, Transcription tr) {
  Cp2MetricCoeffs out;
  out.lambda = lambda;
  out.f = f_coeff(lambda, tr);
  out.h = h_coeff(lambda, tr);
  out.g_rr_coeff = kCollarConstant * out.f / (lambda * lambda);
  out.g_fs_coeff = kCollarConstant * out.h / (lambda * lambda);
  return out;
}

CrossCheckReport crosscheck(double t, const QuadratureScheme& scheme, double tolerance) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("crosscheck: t must lie in (0, 1), got " + std::to_string(t));
  const Cp2Params p{t};
  CrossCheckReport r;
  r.t = t;
  r.lambda = p.lambda();
  r.tolerance = tolerance;

  const GramValue radial = cp2_radial_gram(p, scheme);
  const Covector mu{std::complex<double>(1.0, 0.0), std::complex<double>(0.0, 0.0)};
  const GramValue tangential = cp2_tangential_gram(p, mu, mu, scheme);
  r.quad_radial = radial.value;
  r.quad_radial_err = radial.err;
  r.quad_tangential = tangential.value;
  r.quad_tangential_err = tangential.err;
  r.quad_converged = radial.converged && tangential.converged;

  const double jacobian = (t * t) / (r.lambda * r.lambda);
  const auto side = [&](Transcription tr) {
    const Cp2MetricCoeffs c = cp2_metric(r.lambda, tr);
    ClosedFormSide s;
    s.closed_radial = c.g_rr_coeff * jacobian;
    s.closed_tangential = c.g_fs_coeff;
    s.rel_err_radial = rel_err(s.closed_radial, r.quad_radial);
    s.rel_err_tangential = rel_err(s.closed_tangential, r.quad_tangential);
    return s;
  };

  const ClosedFormSide rec = side(Transcription::reconciled);
  r.closed_radial = rec.closed_radial;
  r.closed_tangential = rec.closed_tangential;
  r.rel_err_radial = rec.rel_err_radial;
  r.rel_err_tangential = rec.rel_err_tangential;
  r.diverged = !(r.rel_err_radial < tolerance && r.rel_err_tangential < tolerance);

  r.printed = side(Transcription::printed);
  r.printed_radial_ratio = r.quad_radial / r.printed.closed_radial;
  r.printed_discrepancy = !(r.printed.rel_err_radial < tolerance && r.printed.rel_err_tangential < tolerance);
  return r;
}

}  // namespace infometric
