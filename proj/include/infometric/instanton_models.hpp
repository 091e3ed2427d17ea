#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "infometric/measure_core.hpp"

namespace infometric {

// 128π²/5: the collar constant of the charge-one information metric.
inline constexpr double kCollarConstant = 128.0 * kPi * kPi / 5.0;
// 8π²: total energy of a charge-one instanton.
inline constexpr double kInstantonAction = 8.0 * kPi * kPi;

// Standard (BPST) instanton on R⁴: scale λ > 0 and center b.
// As a density family the parameter layout is θ = (λ, b₀, b₁, b₂, b₃).
struct BpstParams {
  double lambda = 1.0;
  std::array<double, 4> center{};

  void validate() const;
  std::array<double, 5> theta() const { return {lambda, center[0], center[1], center[2], center[3]}; }
};

// |F|² = 48 λ⁴ / (λ² + |x − b|²)⁴
double bpst_density(const BpstParams& p, std::span<const double> x);

// Spatial gradient of bpst_density.
std::array<double, 4> bpst_density_gradient(const BpstParams& p, std::span<const double> x);

DensityFamily bpst_family();

// Member A_t of the CP² family, 0 ≤ t < 1, with λ = sqrt(1 − t²).
struct Cp2Params {
  double t = 0.0;

  void validate() const;
  double lambda() const;
};

// Pointwise data in the affine chart C² ⊂ CP², D = 1 + |z₁|² + |z₂|².
struct Cp2Pointwise {
  double D;
  double pair_rad;        // (F, d_A η_rad)
  double pair_tan_coeff;  // (F, d_A η_μ) / Re(μ(z₁, z₂))
  double f_norm_sq;       // |F|²
  double vol_ratio;       // D⁻³
};

Cp2Pointwise cp2_pointwise(const Cp2Params& p, std::complex<double> z1, std::complex<double> z2);
Cp2Pointwise cp2_pointwise_at(const Cp2Params& p, double D);

// A covector μ ∈ (C²)*, acting as μ(z) = μ₁z₁ + μ₂z₂.
using Covector = std::array<std::complex<double>, 2>;

// Real 4-vector v with Re(μ(z)) = ⟨v, x⟩ for z = (x₀ + i x₁, x₂ + i x₃).
std::array<double, 4> covector_direction(const Covector& mu);

// The CP² family at A_t as a density family over C² with weight D⁻³:
// slot 0 is the radial direction t, slot k ≥ 1 the tangential direction of
// tangential[k−1]. Only the base point (t, 0, …, 0) is admissible since the
// tangential motion is not represented as a density. Defaults to the four
// real directions μ = (1,0), iμ, ν = (0,1), iν.
DensityFamily cp2_family(std::vector<Covector> tangential = {});

struct GramValue {
  double value = 0.0;
  double err = 0.0;
  bool converged = false;
  int doublings = 0;
  std::size_t nodes = 0;
};

// g_tt = 4 ∫ pair_rad² / |F|² · D⁻³ d⁴x
GramValue cp2_radial_gram(const Cp2Params& p, const QuadratureScheme& scheme);

// 4 ∫ pair_tan_coeff² Re(μz) Re(νz) / |F|² · D⁻³ d⁴x
GramValue cp2_tangential_gram(const Cp2Params& p, const Covector& mu, const Covector& nu,
                              const QuadratureScheme& scheme);

// I₁(N) = ∫₀^N ρ³(1−ρ²)²/(1+ρ²)⁶ dρ,  I₂(N) = ∫₀^N ρ⁵/(1+ρ²)⁶ dρ; both → 1/60.
struct ModelIntegrals {
  QuadResult i1;
  QuadResult i2;
};

ModelIntegrals model_integrals(double upper, double rel_tol = 1e-14);

// Vector fields used in the divergence identity: the dilation r∂_r about the
// center (div = 4) and the coordinate translations ∂_{x_i}.
struct VectorField {
  enum class Kind { dilation, translation };
  Kind kind = Kind::dilation;
  std::size_t axis = 0;

  static VectorField dilation() { return {Kind::dilation, 0}; }
  static VectorField translation(std::size_t axis) { return {Kind::translation, axis}; }
};

// Density-level residual of (F, d_A(ι_X F)) = ½(div(X)|F|² + X(|F|²)):
//   dilation:      λ ∂_λ e + 4 e + X(e)
//   translation i: ∂_{b_i} e + ∂_{x_i} e
// Parameter derivatives come from the family scores, spatial ones from the
// density gradient.
double divergence_identity_residual(const BpstParams& p, VectorField field, std::span<const double> x);

}  // namespace infometric
