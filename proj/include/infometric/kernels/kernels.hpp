#pragma once

// Data-parallel inner loops of the quadrature engine.
//
// Every kernel exists as a scalar reference and (on x86-64) an AVX2 variant.
// The active table is chosen once at first use from the CPU features; setting
// INFOMETRIC_ISA=scalar in the environment forces the reference path.
//
// All reductions follow one canonical pairwise tree (see reduction_tree.hpp),
// and the project is compiled with -ffp-contract=off, so the two variants
// agree bit for bit.

#include <cstddef>
#include <span>
#include <string_view>

namespace infometric::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

// Radial pieces of the BPST energy density at radii r (distance to center).
//   density = 48 λ⁴ / (λ² + r²)⁴
//   scale_score = ∂_λ log density = 4/λ − 8λ/(λ² + r²)
//   center_coeff: ∂_{b_i} log density = center_coeff · (x − b)_i, center_coeff = 8/(λ² + r²)
struct BpstBatch {
  std::span<double> density;
  std::span<double> scale_score;
  std::span<double> center_coeff;
};

// Pointwise data of the CP² family A_t at affine radii ρ (D = 1 + ρ²).
//   density = |F_{A_t}|², volume = D⁻³,
//   radial_score = 2 (F, dη_rad)/|F|², tangential_coeff = 2·pair_tan_coeff/|F|²
struct Cp2Batch {
  std::span<double> density;
  std::span<double> volume;
  std::span<double> radial_score;
  std::span<double> tangential_coeff;
};

struct KernelTable {
  Isa isa;
  // Σ x_k in canonical pairwise order.
  double (*sum)(std::span<const double> x);
  // Σ a_k b_k.
  double (*dot)(std::span<const double> a, std::span<const double> b);
  // Σ w_k a_k b_k, products formed as (w_k a_k) b_k.
  double (*dot3)(std::span<const double> w, std::span<const double> a, std::span<const double> b);
  // out_k = a_k b_k
  void (*multiply)(std::span<const double> a, std::span<const double> b, std::span<double> out);
  void (*bpst_radial)(double lambda, std::span<const double> r, const BpstBatch& out);
  void (*cp2_radial)(double t, std::span<const double> rho, const Cp2Batch& out);
};

bool isa_available(Isa isa);

// Table for a specific ISA; throws std::invalid_argument if it is not available.
const KernelTable& table(Isa isa);

// The dispatched table used by the library.
const KernelTable& active();

// Shorthands through the active table.
inline double sum(std::span<const double> x) { return active().sum(x); }
inline double dot(std::span<const double> a, std::span<const double> b) { return active().dot(a, b); }
inline double dot3(std::span<const double> w, std::span<const double> a, std::span<const double> b) {
  return active().dot3(w, a, b);
}

}  // namespace infometric::kernels
