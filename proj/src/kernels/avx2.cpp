// AVX2 variants of the scalar kernels. Built with -mavx2 and only entered
// after a runtime CPU check.

#include <immintrin.h>

#include "kernels_internal.hpp"
#include "reduction_tree.hpp"

namespace infometric::kernels::detail {
namespace {

inline double combine_lanes(__m256d acc) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double sum_avx2(std::span<const double> x) {
  const double* p = x.data();
  return reduce_tree(0, x.size(), [p](std::size_t b, std::size_t e) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = b;
    for (; k + 4 <= e; k += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(p + k));
    double out = combine_lanes(acc);
    for (; k < e; ++k) out += p[k];
    return out;
  });
}

double dot_avx2(std::span<const double> a, std::span<const double> b) {
  const double* pa = a.data();
  const double* pb = b.data();
  return reduce_tree(0, a.size(), [=](std::size_t lo, std::size_t hi) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = lo;
    for (; k + 4 <= hi; k += 4) {
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(pa + k), _mm256_loadu_pd(pb + k)));
    }
    double out = combine_lanes(acc);
    for (; k < hi; ++k) out += pa[k] * pb[k];
    return out;
  });
}

double dot3_avx2(std::span<const double> w, std::span<const double> a, std::span<const double> b) {
  const double* pw = w.data();
  const double* pa = a.data();
  const double* pb = b.data();
  return reduce_tree(0, w.size(), [=](std::size_t lo, std::size_t hi) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = lo;
    for (; k + 4 <= hi; k += 4) {
      const __m256d wa = _mm256_mul_pd(_mm256_loadu_pd(pw + k), _mm256_loadu_pd(pa + k));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(wa, _mm256_loadu_pd(pb + k)));
    }
    double out = combine_lanes(acc);
    for (; k < hi; ++k) out += (pw[k] * pa[k]) * pb[k];
    return out;
  });
}

void multiply_avx2(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  const std::size_t n = out.size();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    _mm256_storeu_pd(out.data() + k, _mm256_mul_pd(_mm256_loadu_pd(a.data() + k), _mm256_loadu_pd(b.data() + k)));
  }
  for (; k < n; ++k) out[k] = a[k] * b[k];
}

void bpst_radial_avx2(double lambda, std::span<const double> r, const BpstBatch& out) {
  const BpstConstants c = bpst_constants(lambda);
  const __m256d lambda2 = _mm256_set1_pd(c.lambda2);
  const __m256d amplitude = _mm256_set1_pd(c.amplitude);
  const __m256d four_over = _mm256_set1_pd(c.four_over_lambda);
  const __m256d eight_lambda = _mm256_set1_pd(c.eight_lambda);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d eight = _mm256_set1_pd(8.0);
  const std::size_t n = r.size();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d rr = _mm256_loadu_pd(r.data() + k);
    const __m256d q = _mm256_add_pd(lambda2, _mm256_mul_pd(rr, rr));
    const __m256d q2 = _mm256_mul_pd(q, q);
    const __m256d inv_q = _mm256_div_pd(one, q);
    _mm256_storeu_pd(out.density.data() + k, _mm256_div_pd(amplitude, _mm256_mul_pd(q2, q2)));
    _mm256_storeu_pd(out.scale_score.data() + k, _mm256_sub_pd(four_over, _mm256_mul_pd(eight_lambda, inv_q)));
    _mm256_storeu_pd(out.center_coeff.data() + k, _mm256_mul_pd(eight, inv_q));
  }
  for (; k < n; ++k) {
    const double q = c.lambda2 + r[k] * r[k];
    const double q2 = q * q;
    const double inv_q = 1.0 / q;
    out.density[k] = c.amplitude / (q2 * q2);
    out.scale_score[k] = c.four_over_lambda - c.eight_lambda * inv_q;
    out.center_coeff[k] = 8.0 * inv_q;
  }
}

void cp2_radial_avx2(double t, std::span<const double> rho, const Cp2Batch& out) {
  const Cp2Constants c = cp2_constants(t);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d t2 = _mm256_set1_pd(c.t2);
  const __m256d two_t2 = _mm256_set1_pd(c.two_t2);
  const __m256d amplitude = _mm256_set1_pd(c.amplitude);
  const __m256d poly_a = _mm256_set1_pd(c.poly_a);
  const __m256d poly_b = _mm256_set1_pd(c.poly_b);
  const __m256d radial_pre = _mm256_set1_pd(c.radial_prefactor);
  const __m256d tangential_pre = _mm256_set1_pd(c.tangential_prefactor);
  const std::size_t n = rho.size();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d r = _mm256_loadu_pd(rho.data() + k);
    const __m256d d = _mm256_add_pd(one, _mm256_mul_pd(r, r));
    const __m256d dd = _mm256_mul_pd(d, d);
    const __m256d d3 = _mm256_mul_pd(dd, d);
    const __m256d dm = _mm256_sub_pd(d, t2);
    const __m256d dm2 = _mm256_mul_pd(dm, dm);
    const __m256d dp = _mm256_add_pd(d, two_t2);
    const __m256d denom = _mm256_mul_pd(dp, dm);
    const __m256d poly = _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(d, poly_a), dd), poly_b);
    const __m256d density = _mm256_div_pd(_mm256_mul_pd(_mm256_mul_pd(amplitude, d3), dp), _mm256_mul_pd(dm2, dm2));
    _mm256_storeu_pd(out.density.data() + k, density);
    _mm256_storeu_pd(out.volume.data() + k, _mm256_div_pd(one, d3));
    _mm256_storeu_pd(out.radial_score.data() + k, _mm256_div_pd(_mm256_mul_pd(radial_pre, poly), denom));
    _mm256_storeu_pd(out.tangential_coeff.data() + k,
                     _mm256_div_pd(_mm256_mul_pd(tangential_pre, _mm256_add_pd(d, t2)), denom));
  }
  for (; k < n; ++k) {
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

const KernelTable& avx2_table() {
  static const KernelTable table{Isa::avx2,    sum_avx2,         dot_avx2,       dot3_avx2,
                                 multiply_avx2, bpst_radial_avx2, cp2_radial_avx2};
  return table;
}

}  // namespace infometric::kernels::detail
