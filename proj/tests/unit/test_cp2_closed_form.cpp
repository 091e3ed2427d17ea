#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "infometric/cp2_closed_form.hpp"

using namespace infometric;

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;
using BigJet = Jet<Big>;

constexpr Transcription kP = Transcription::printed;
constexpr Transcription kR = Transcription::reconciled;

// Direct expressions in 50 digits, where the cancellation near λ = 1 is harmless.
BigJet big_f(const Big& lambda, Transcription tr) {
  const BigJet l = BigJet::variable(lambda);
  const BigJet l2 = l * l;
  const BigJet s = Big(1) - l2;
  const BigJet L = log(l2 / (Big(3) - Big(2) * l2));
  const BigJet poly = Big(1) - Big(7) / Big(3) * l2 + Big(14) / Big(9) * ipow(l2, 2) - Big(2) / Big(3) * ipow(l2, 3) +
                      Big(2) / Big(27) * ipow(l2, 4);
  const BigJet fp = poly / s - (Big(30) / Big(81) * ipow(l2, 4) - Big(20) / Big(81) * ipow(l2, 5)) / (s * s) * L;
  return tr == kP ? fp : fp / (s * s);
}

BigJet big_h(const Big& lambda, Transcription tr) {
  const BigJet l = BigJet::variable(lambda);
  const BigJet l2 = l * l;
  const BigJet s = Big(1) - l2;
  const BigJet L = log(l2 / (Big(3) - Big(2) * l2));
  const BigJet poly = Big(1) - Big(7) / Big(3) * l2 + Big(23) / Big(18) * ipow(l2, 2) +
                      Big(93) / Big(108) * ipow(l2, 3) - Big(77) / Big(108) * ipow(l2, 4);
  const Big top = tr == kP ? Big(1) / Big(81) : Big(10) / Big(81);
  const BigJet logc = Big(5) / Big(18) * ipow(l2, 3) - Big(10) / Big(27) * ipow(l2, 4) + top * ipow(l2, 5);
  return poly / s + logc / (s * s) * L;
}

void check_close(const Jet2& got, const BigJet& want, double tol) {
  CHECK(std::abs(got.v - want.v.convert_to<double>()) <= tol * std::abs(want.v.convert_to<double>()));
  CHECK(std::abs(got.d1 - want.d1.convert_to<double>()) <= tol * std::abs(want.d1.convert_to<double>()));
  CHECK(std::abs(got.d2 - want.d2.convert_to<double>()) <= tol * std::abs(want.d2.convert_to<double>()));
}

struct Oracle {
  double lambda, fp, hp, fr, hr;
};

// 40-digit evaluations of the direct expressions.
constexpr Oracle kOracles[] = {
    {0.3, 0.8815443135340162474, 0.8794023565237125454, 1.0645384778819179415, 0.8793996273168727287},
    {0.5, 0.6766173377336120664, 0.6643695771731060312, 1.2028752670819770069, 0.6639254056659698341},
    {0.6, 0.5396494545750769829, 0.5221079808185513308, 1.3175035512086840403, 0.5190803635894614437},
    {0.9, 0.0729042438498315627, 0.6322037374511805340, 2.0195081398845308223, 0.0604048683602569270},
    {0.97, 0.0081470578993256633, 4.0561618725330150705, 2.3325224960205861009, 0.0063211840557079241},
    {0.99, 0.0009668432530400404, 15.004636748685255642, 2.4414617131891629804, 0.0007337110670465427},
    {0.999, 0.0000099660862769278, 164.92568310822938310, 2.4940149606889064283, 0.0000074835213477289},
};

}  // namespace

TEST_CASE("frozen values for both transcriptions") {
  for (const Oracle& o : kOracles) {
    CAPTURE(o.lambda);
    CHECK(f_coeff(o.lambda, kP) == doctest::Approx(o.fp).epsilon(1e-12));
    CHECK(h_coeff(o.lambda, kP) == doctest::Approx(o.hp).epsilon(1e-12));
    CHECK(f_coeff(o.lambda, kR) == doctest::Approx(o.fr).epsilon(1e-12));
    CHECK(h_coeff(o.lambda, kR) == doctest::Approx(o.hr).epsilon(1e-12));
  }
  CHECK(f_coeff(0.5) == f_coeff(0.5, kR));
}

TEST_CASE("transcriptions are related by the expected factors") {
  for (double l : {0.2, 0.5, 0.8, 0.94, 0.96}) {
    const double s = 1.0 - l * l;
    CHECK(f_coeff(l, kP) == doctest::Approx(s * s * f_coeff(l, kR)).epsilon(1e-13));
    const double L = std::log(l * l / (3.0 - 2.0 * l * l));
    CHECK(h_coeff(l, kP) - h_coeff(l, kR) == doctest::Approx(-std::pow(l, 10) * L / (9.0 * s * s)).epsilon(1e-9));
  }
}

TEST_CASE("coefficients approach 1 at the collar") {
  for (Transcription tr : {kP, kR}) {
    CHECK(f_coeff(1e-4, tr) == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(h_coeff(1e-4, tr) == doctest::Approx(1.0).epsilon(1e-7));
    for (double l : {0.1, 0.05, 0.02, 0.01, 1e-3}) {
      CHECK(std::abs(f_coeff(l, tr) - 1.0) <= 3.0 * l * l);
      CHECK(std::abs(h_coeff(l, tr) - 1.0) <= 3.0 * l * l);
    }
  }
}

TEST_CASE("series branch against 50-digit direct evaluation") {
  for (const char* text : {"0.951", "0.97", "0.99", "0.999", "0.99999"}) {
    CAPTURE(text);
    const Big l(text);
    const double ld = l.convert_to<double>();
    for (Transcription tr : {kP, kR}) {
      // Compare at the double nearest the decimal point.
      check_close(f_jet(ld, tr), big_f(Big(ld), tr), 1e-12);
      check_close(h_jet(ld, tr), big_h(Big(ld), tr), 1e-12);
    }
  }
}

TEST_CASE("direct branch against 50-digit direct evaluation") {
  for (double l : {0.01, 0.2, 0.5, 0.7, 0.9, 0.949}) {
    CAPTURE(l);
    for (Transcription tr : {kP, kR}) {
      check_close(f_jet(l, tr), big_f(Big(l), tr), 1e-11);
      check_close(h_jet(l, tr), big_h(Big(l), tr), 1e-11);
    }
  }
}

TEST_CASE("branch switch is continuous") {
  const double edge = 1.0 - kDeltaSwitch;
  const double below = std::nextafter(edge, 0.0);
  const double above = std::nextafter(edge, 1.0);
  for (Transcription tr : {kP, kR}) {
    for (auto jet : {&f_jet, &h_jet}) {
      const Jet2 a = jet(below, tr);
      const Jet2 b = jet(above, tr);
      CHECK(a.v == doctest::Approx(b.v).epsilon(1e-12));
      CHECK(a.d1 == doctest::Approx(b.d1).epsilon(1e-11));
      CHECK(a.d2 == doctest::Approx(b.d2).epsilon(1e-10));
    }
  }
}

TEST_CASE("jets agree with finite differences") {
  for (double l : {0.1, 0.4, 0.8, 0.97}) {
    for (Transcription tr : {kP, kR}) {
      const double e = 1e-5;
      const Jet2 f = f_jet(l, tr);
      const double d1 = (f_coeff(l + e, tr) - f_coeff(l - e, tr)) / (2.0 * e);
      const double d2 = (f_coeff(l + e, tr) - 2.0 * f.v + f_coeff(l - e, tr)) / (e * e);
      CHECK(f.d1 == doctest::Approx(d1).epsilon(1e-7));
      CHECK(f.d2 == doctest::Approx(d2).epsilon(1e-4));
      const Jet2 h = h_jet(l, tr);
      const auto central = [&](double step) { return (h_coeff(l + step, tr) - h_coeff(l - step, tr)) / (2.0 * step); };
      const double h1 = (4.0 * central(e) - central(2.0 * e)) / 3.0;
      CHECK(h.d1 == doctest::Approx(h1).epsilon(1e-7));
    }
  }
}

TEST_CASE("domain is the open unit interval") {
  for (double bad : {0.0, 1.0, -0.5, 1.5, std::nan("")}) {
    CHECK_THROWS_AS(f_coeff(bad), DomainError);
    CHECK_THROWS_AS(h_jet(bad, kP), DomainError);
    CHECK_THROWS_AS(cp2_metric(bad), DomainError);
  }
  CHECK_THROWS_AS(crosscheck(0.0, QuadratureScheme{}), DomainError);
  CHECK_THROWS_AS(crosscheck(1.0, QuadratureScheme{}), DomainError);
}

TEST_CASE("metric coefficients at the collar") {
  const Cp2MetricCoeffs c = cp2_metric(1e-4);
  CHECK(c.g_rr_coeff * 1e-8 == doctest::Approx(kCollarConstant).epsilon(1e-7));
  CHECK(c.g_fs_coeff / c.g_rr_coeff == doctest::Approx(1.0).epsilon(1e-7));
  const Cp2MetricCoeffs m = cp2_metric(0.5, kP);
  CHECK(m.f == f_coeff(0.5, kP));
  CHECK(m.g_fs_coeff == doctest::Approx(kCollarConstant * m.h / 0.25).epsilon(1e-15));
}

TEST_CASE("crosscheck against quadrature") {
  for (double t : {0.05, 0.3, 0.8, 0.99}) {
    CAPTURE(t);
    const CrossCheckReport r = crosscheck(t, QuadratureScheme{});
    CHECK(r.lambda == doctest::Approx(std::sqrt(1.0 - t * t)));
    CHECK(r.quad_converged);
    CHECK(r.passed());
    CHECK_FALSE(r.diverged);
    CHECK(r.rel_err_radial < 1e-9);
    CHECK(r.rel_err_tangential < 1e-9);
    CHECK(r.printed_discrepancy);
    CHECK(r.printed_radial_ratio == doctest::Approx(std::pow(t, -4)).epsilon(1e-9));
  }
}

TEST_CASE("crosscheck flags but does not throw on a tight tolerance") {
  const CrossCheckReport r = crosscheck(0.8, QuadratureScheme{}, 1e-30);
  CHECK(r.diverged);
  CHECK_FALSE(r.passed());
}
