#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "infometric/instanton_models.hpp"

using namespace infometric;

namespace {

using C = std::complex<double>;

QuadratureScheme tight() {
  QuadratureScheme s;
  s.rel_tol = 1e-10;
  return s;
}

}  // namespace

TEST_CASE("bpst density values") {
  const std::array<double, 4> origin{0.0, 0.0, 0.0, 0.0};
  CHECK(bpst_density(BpstParams{}, origin) == 48.0);
  const BpstParams p{0.5, {1.0, 2.0, -1.0, 0.5}};
  const std::array<double, 4> at_center{1.0, 2.0, -1.0, 0.5};
  CHECK(bpst_density(p, at_center) == doctest::Approx(48.0 / std::pow(0.5, 4)).epsilon(1e-15));
}

TEST_CASE("bpst density scales as c^-4") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    const BpstParams p{0.3 + std::abs(u(rng)), {u(rng), u(rng), u(rng), u(rng)}};
    const std::array<double, 4> x{u(rng), u(rng), u(rng), u(rng)};
    for (double c : {0.5, 2.0}) {
      BpstParams q = p;
      q.lambda *= c;
      for (double& b : q.center) b *= c;
      const std::array<double, 4> cx{c * x[0], c * x[1], c * x[2], c * x[3]};
      CHECK(bpst_density(q, cx) == doctest::Approx(bpst_density(p, x) / std::pow(c, 4)).epsilon(1e-13));
    }
  }
}

TEST_CASE("bpst validation") {
  CHECK_THROWS_AS(BpstParams{0.0}.validate(), DomainError);
  CHECK_THROWS_AS(BpstParams{-1.0}.validate(), DomainError);
  CHECK_THROWS_AS((BpstParams{1.0, {NAN, 0.0, 0.0, 0.0}}.validate()), DomainError);
  CHECK_NOTHROW(BpstParams{1e-3}.validate());
}

TEST_CASE("bpst family scores") {
  const DensityFamily f = bpst_family();
  CHECK(f.param_dim == 5);
  CHECK(f.domain.radial_reducible);
  const std::array<double, 5> theta{1.0, 0.0, 0.0, 0.0, 0.0};
  const std::array<double, 4> origin{0.0, 0.0, 0.0, 0.0};
  CHECK(f.score(theta, origin, 0) == -4.0);
  const std::array<double, 5> shifted{0.7, 1.0, -1.0, 2.0, 0.0};
  const std::array<double, 4> at_center{1.0, -1.0, 2.0, 0.0};
  for (std::size_t i = 1; i < 5; ++i) CHECK(f.score(shifted, at_center, i) == 0.0);
}

TEST_CASE("bpst gram is (128 pi^2 / 5) lambda^-2 times identity") {
  const DensityFamily f = bpst_family();
  for (const BpstParams& p : {BpstParams{1.0}, BpstParams{0.5}, BpstParams{2.0, {1.0, 1.0, 0.0, 0.0}},
                              BpstParams{0.05, {-3.0, 0.0, 4.0, 1.0}}}) {
    const auto theta = p.theta();
    const GramMatrix g = info_gram(f, theta, QuadratureScheme{});
    const double want = kCollarConstant / (p.lambda * p.lambda);
    CHECK(g.converged);
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) {
        if (i == j) CHECK(g(i, j) == doctest::Approx(want).epsilon(1e-7));
        else CHECK(std::abs(g(i, j)) <= 1e-9 * want);
      }
    }
  }
}

TEST_CASE("bpst gram scaling equivariance and center independence") {
  const DensityFamily f = bpst_family();
  const QuadratureScheme scheme;
  const BpstParams p{1.3, {0.5, -0.5, 0.25, 1.0}};
  const auto theta = p.theta();
  const GramMatrix g = info_gram(f, theta, scheme);
  for (double c : {0.5, 2.0}) {
    BpstParams q = p;
    q.lambda *= c;
    for (double& b : q.center) b *= c;
    const auto qt = q.theta();
    const GramMatrix gc = info_gram(f, qt, scheme);
    for (std::size_t k = 0; k < 25; ++k)
      CHECK(std::abs(gc.entries()[k] - g.entries()[k] / (c * c)) <= 2.0 * scheme.rel_tol * g(0, 0) / (c * c));
  }
  const BpstParams moved{1.3, {-7.0, 3.0, 0.0, 2.0}};
  const auto mt = moved.theta();
  const GramMatrix gm = info_gram(f, mt, scheme);
  for (std::size_t k = 0; k < 25; ++k) CHECK(gm.entries()[k] == doctest::Approx(g.entries()[k]).epsilon(1e-12));
}

TEST_CASE("bpst total mass is 8 pi^2 for any parameters") {
  const DensityFamily f = bpst_family();
  for (const BpstParams& p : {BpstParams{1.0}, BpstParams{0.1, {5.0, 0.0, 0.0, 0.0}}, BpstParams{4.0}}) {
    const auto theta = p.theta();
    const QuadResult m = total_mass(f, theta, tight());
    CHECK(m.converged);
    CHECK(m.value == doctest::Approx(kInstantonAction).epsilon(1e-12));
  }
}

TEST_CASE("bpst reduced and product routes give the same mass") {
  const BpstParams p{0.8, {0.3, 0.0, 0.0, -0.2}};
  const auto theta = p.theta();
  QuadratureScheme scheme;
  scheme.radial_nodes = 32;
  scheme.angular_nodes = 4;
  scheme.max_doublings = 1;
  const QuadResult product = total_mass(bpst_family(), theta, scheme, GramRoute::product_rule);
  CHECK(product.value == doctest::Approx(kInstantonAction).epsilon(1e-6));
}

TEST_CASE("cp2 pointwise formulas") {
  const Cp2Pointwise zero = cp2_pointwise(Cp2Params{0.0}, C(0.3, 0.1), C(-1.0, 2.0));
  CHECK(zero.pair_rad == 0.0);
  CHECK(zero.pair_tan_coeff == 0.0);
  const Cp2Pointwise at_origin = cp2_pointwise(Cp2Params{0.0}, C(0.0), C(0.0));
  CHECK(at_origin.D == 1.0);
  CHECK(at_origin.f_norm_sq == 16.0);
  CHECK(at_origin.vol_ratio == 1.0);

  const Cp2Pointwise p = cp2_pointwise(Cp2Params{0.6}, C(0.0), C(0.0));
  CHECK(p.pair_rad == doctest::Approx(172.8515625).epsilon(1e-14));
  CHECK(p.pair_tan_coeff == doctest::Approx(-179.296875).epsilon(1e-14));
  CHECK(p.f_norm_sq == doctest::Approx(67.1875).epsilon(1e-14));

  const Cp2Pointwise q = cp2_pointwise(Cp2Params{0.6}, C(1.0, 1.0), C(0.0, 2.0));
  CHECK(q.D == doctest::Approx(7.0));
  CHECK(q.vol_ratio == doctest::Approx(1.0 / 343.0));
}

TEST_CASE("cp2 params") {
  CHECK(Cp2Params{0.6}.lambda() == doctest::Approx(0.8));
  CHECK_THROWS_AS(Cp2Params{1.0}.validate(), DomainError);
  CHECK_THROWS_AS(Cp2Params{-0.1}.validate(), DomainError);
  CHECK_NOTHROW(Cp2Params{0.0}.validate());
}

TEST_CASE("cp2 family reduction agrees with the pointwise scores") {
  const DensityFamily f = cp2_family();
  const std::vector<double> theta{0.7, 0.0, 0.0, 0.0, 0.0};
  const std::vector<double> rho{0.0, 0.5, 2.0, 30.0};
  RadialBatch batch;
  batch.resize(5, rho.size());
  f.reduction->evaluate(theta, rho, batch);
  for (std::size_t k = 0; k < rho.size(); ++k) {
    const std::array<double, 4> x{rho[k], 0.0, 0.0, 0.0};
    const Cp2Pointwise pw = cp2_pointwise(Cp2Params{0.7}, C(rho[k], 0.0), C(0.0));
    CHECK(batch.density[k] == doctest::Approx(pw.f_norm_sq).epsilon(1e-13));
    CHECK(batch.weight[k] == doctest::Approx(pw.vol_ratio).epsilon(1e-13));
    CHECK(batch.radial[0][k] == doctest::Approx(f.score(theta, x, 0)).epsilon(1e-12));
    CHECK(batch.linear[1][k] * rho[k] == doctest::Approx(f.score(theta, x, 1)).epsilon(1e-12));
  }
}

TEST_CASE("cp2 total mass is 8 pi^2 for every t") {
  const DensityFamily f = cp2_family({Covector{}});
  for (double t : {0.0, 0.3, 0.5, 0.9}) {
    const std::vector<double> theta{t, 0.0};
    const QuadResult m = total_mass(f, theta, tight());
    CHECK(m.converged);
    CHECK(m.value == doctest::Approx(kInstantonAction).epsilon(1e-10));
  }
}

TEST_CASE("cp2 radial gram vanishes to order two") {
  const QuadratureScheme scheme;
  const double g1 = cp2_radial_gram(Cp2Params{0.01}, scheme).value;
  const double g2 = cp2_radial_gram(Cp2Params{0.02}, scheme).value;
  CHECK(g1 > 0.0);
  CHECK(std::log(g2 / g1) / std::log(2.0) == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(cp2_radial_gram(Cp2Params{1e-6}, scheme).value < 1e-9);
}

TEST_CASE("cp2 tangential gram is isotropic and orthogonal to the radial direction") {
  const DensityFamily f = cp2_family();
  const std::vector<double> theta{0.8, 0.0, 0.0, 0.0, 0.0};
  const GramMatrix g = info_gram(f, theta, QuadratureScheme{});
  CHECK(g.converged);
  const double diag = g(1, 1);
  for (std::size_t i = 1; i < 5; ++i) {
    CHECK(g(0, i) == 0.0);
    for (std::size_t j = 1; j < 5; ++j) {
      if (i == j) CHECK(g(i, j) == doctest::Approx(diag).epsilon(1e-8));
      else CHECK(std::abs(g(i, j)) <= 1e-8 * diag);
    }
  }
}

TEST_CASE("cp2 radial-tangential cross term vanishes on the product rule") {
  // Independent of the reduction: the integrand is odd under z → −z.
  const DensityFamily f = cp2_family({Covector{C(1.0), C(0.0)}});
  const std::vector<double> theta{0.5, 0.0};
  QuadratureScheme scheme;
  scheme.radial_nodes = 32;
  scheme.angular_nodes = 4;
  scheme.max_doublings = 1;
  const GramMatrix g = info_gram(f, theta, scheme, GramRoute::product_rule);
  CHECK(std::abs(g(0, 1)) <= 1e-12 * g(0, 0));
  const GramMatrix reduced = info_gram(f, theta, QuadratureScheme{}, GramRoute::reduced);
  CHECK(g(1, 1) == doctest::Approx(reduced(1, 1)).epsilon(1e-3));
}

TEST_CASE("cp2 tangential gram follows Re<mu, nu>") {
  const QuadratureScheme scheme;
  const Cp2Params p{0.6};
  const Covector mu{C(1.0), C(0.0)};
  const Covector nu{C(0.0), C(1.0)};
  const Covector i_mu{C(0.0, 1.0), C(0.0)};
  const double self = cp2_tangential_gram(p, mu, mu, scheme).value;
  CHECK(self > 0.0);
  CHECK(std::abs(cp2_tangential_gram(p, mu, nu, scheme).value) <= 1e-12 * self);
  CHECK(std::abs(cp2_tangential_gram(p, mu, i_mu, scheme).value) <= 1e-12 * self);
  const double s = std::sqrt(0.5);
  const Covector mixed{C(s), C(s)};
  CHECK(cp2_tangential_gram(p, mu, mixed, scheme).value == doctest::Approx(s * self).epsilon(1e-10));
  CHECK(cp2_tangential_gram(p, nu, nu, scheme).value == doctest::Approx(self).epsilon(1e-10));
}

TEST_CASE("cp2 integrands decay like |z|^-8 at infinity") {
  // Radial integrand ρ³ dρ times a |z|⁻⁸ density: net ρ⁻⁵.
  const auto integrand = [](double rho) {
    const Cp2Pointwise pw = cp2_pointwise_at(Cp2Params{0.5}, 1.0 + rho * rho);
    return std::pow(rho, 5) * pw.pair_tan_coeff * pw.pair_tan_coeff / pw.f_norm_sq * pw.vol_ratio;
  };
  const double slope = std::log(integrand(2e3) / integrand(1e3)) / std::log(2.0);
  CHECK(slope == doctest::Approx(-5.0).epsilon(1e-3));
}

TEST_CASE("model integrals") {
  const ModelIntegrals inf = model_integrals(1e6);
  CHECK(inf.i1.converged);
  CHECK(std::abs(inf.i1.value - 1.0 / 60.0) < 1e-10);
  CHECK(std::abs(inf.i2.value - 1.0 / 60.0) < 1e-10);
  const ModelIntegrals one = model_integrals(1.0);
  CHECK(one.i1.value == doctest::Approx(1.0 / 120.0).epsilon(1e-13));
  CHECK(one.i2.value == doctest::Approx(1.0 / 120.0).epsilon(1e-13));
  const ModelIntegrals small = model_integrals(1e-3);
  CHECK(small.i1.value < 1e-12);
  CHECK(small.i2.value < 1e-12);
  CHECK_THROWS_AS(model_integrals(0.0), DomainError);
}

TEST_CASE("model integral at N = 1 against a midpoint sum") {
  const int n = 200000;
  double i1 = 0.0;
  for (int k = 0; k < n; ++k) {
    const double r = (k + 0.5) / n;
    const double q = 1.0 + r * r;
    i1 += r * r * r * (1.0 - r * r) * (1.0 - r * r) / std::pow(q, 6);
  }
  i1 /= n;
  CHECK(std::abs(model_integrals(1.0).i1.value - i1) < 1e-6);
}

TEST_CASE("divergence identity residuals vanish") {
  const std::array<double, 4> unit_x{1.0, 0.0, 0.0, 0.0};
  CHECK(std::abs(divergence_identity_residual(BpstParams{}, VectorField::dilation(), unit_x)) < 1e-8);
  const BpstParams p{0.7, {0.1, 0.2, 0.3, 0.4}};
  const std::array<double, 4> at_center{0.1, 0.2, 0.3, 0.4};
  CHECK(std::abs(divergence_identity_residual(p, VectorField::dilation(), at_center)) < 1e-10);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 50; ++k) {
    const std::array<double, 4> x{u(rng), u(rng), u(rng), u(rng)};
    for (std::size_t axis = 0; axis < 4; ++axis)
      CHECK(std::abs(divergence_identity_residual(p, VectorField::translation(axis), x)) < 1e-12);
    CHECK(std::abs(divergence_identity_residual(p, VectorField::dilation(), x)) < 1e-8);
  }
  CHECK_THROWS_AS(divergence_identity_residual(p, VectorField::translation(4), unit_x), DomainError);
}
