#pragma once

#include "infometric/kernels/kernels.hpp"

namespace infometric::kernels::detail {

struct BpstConstants {
  double lambda2;
  double amplitude;  // 48 λ⁴
  double four_over_lambda;
  double eight_lambda;
};

inline BpstConstants bpst_constants(double lambda) {
  const double l2 = lambda * lambda;
  return {l2, 48.0 * (l2 * l2), 4.0 / lambda, 8.0 * lambda};
}

// The radial and tangential scores are 2·pairing/|F|²; the D³ factors cancel,
// leaving
//   radial_score     = 4t/(1−t²) · (−D² + D(3−4t²) + 3t² − t⁴) / ((D+2t²)(D−t²))
//   tangential_coeff = −12t² (D+t²) / ((D+2t²)(D−t²))
struct Cp2Constants {
  double t2;
  double two_t2;
  double amplitude;  // 16 (1−t²)²
  double poly_a;     // 3 − 4t²
  double poly_b;     // 3t² − t⁴
  double radial_prefactor;
  double tangential_prefactor;
};

inline Cp2Constants cp2_constants(double t) {
  const double t2 = t * t;
  const double one_minus = 1.0 - t2;
  return {t2,
          2.0 * t2,
          16.0 * (one_minus * one_minus),
          3.0 - 4.0 * t2,
          3.0 * t2 - t2 * t2,
          4.0 * t / one_minus,
          -12.0 * t2};
}

const KernelTable& scalar_table();
#if defined(INFOMETRIC_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace infometric::kernels::detail
