// Scalar reference kernels. The AVX2 variants in avx2.cpp must reproduce
// these results exactly; keep the operation order in sync.

#include "kernels_internal.hpp"
#include "reduction_tree.hpp"

namespace infometric::kernels::detail {
namespace {

template <class Term>
double leaf_sum(std::size_t begin, std::size_t end, const Term& term) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t k = begin;
  for (; k + 4 <= end; k += 4) {
    lane[0] += term(k);
    lane[1] += term(k + 1);
    lane[2] += term(k + 2);
    lane[3] += term(k + 3);
  }
  double acc = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; k < end; ++k) acc += term(k);
  return acc;
}

double sum_scalar(std::span<const double> x) {
  const double* p = x.data();
  return reduce_tree(0, x.size(), [p](std::size_t b, std::size_t e) {
    return leaf_sum(b, e, [p](std::size_t k) { return p[k]; });
  });
}

double dot_scalar(std::span<const double> a, std::span<const double> b) {
  const double* pa = a.data();
  const double* pb = b.data();
  return reduce_tree(0, a.size(), [=](std::size_t lo, std::size_t hi) {
    return leaf_sum(lo, hi, [=](std::size_t k) { return pa[k] * pb[k]; });
  });
}

double dot3_scalar(std::span<const double> w, std::span<const double> a, std::span<const double> b) {
  const double* pw = w.data();
  const double* pa = a.data();
  const double* pb = b.data();
  return reduce_tree(0, w.size(), [=](std::size_t lo, std::size_t hi) {
    return leaf_sum(lo, hi, [=](std::size_t k) { return (pw[k] * pa[k]) * pb[k]; });
  });
}

void multiply_scalar(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] * b[k];
}

void bpst_radial_scalar(double lambda, std::span<const double> r, const BpstBatch& out) {
  const BpstConstants c = bpst_constants(lambda);
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double q = c.lambda2 + r[k] * r[k];
    const double q2 = q * q;
    const double inv_q = 1.0 / q;
    out.density[k] = c.amplitude / (q2 * q2);
    out.scale_score[k] = c.four_over_lambda - c.eight_lambda * inv_q;
    out.center_coeff[k] = 8.0 * inv_q;
  }
}

void cp2_radial_scalar(double t, std::span<const double> rho, const Cp2Batch& out) {
  const Cp2Constants c = cp2_constants(t);
  for (std::size_t k = 0; k < rho.size(); ++k) {
    const double d = 1.0 + rho[k] * rho[k];
    const double d3 = (d * d) * d;
    const double dm = d - c.t2;
    const double dm2 = dm * dm;
    const double dp = d + c.two_t2;
    const double denom = dp * dm;
    const double poly = (d * c.poly_a - d * d) + c.poly_b;
    out.density[k] = ((c.amplitude * d3) * dp) / (dm2 * dm2);
    out.volume[k] = 1.0 / d3;
    out.radial_score[k] = (c.radial_prefactor * poly) / denom;
    out.tangential_coeff[k] = (c.tangential_prefactor * (d + c.t2)) / denom;
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::scalar,       sum_scalar,          dot_scalar, dot3_scalar,
                                 multiply_scalar,   bpst_radial_scalar, cp2_radial_scalar};
  return table;
}

}  // namespace infometric::kernels::detail
