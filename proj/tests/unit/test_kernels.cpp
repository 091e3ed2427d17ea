#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "infometric/kernels/kernels.hpp"

using namespace infometric::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

// Lengths around the lane width, the leaf size and a few odd tails.
const std::vector<std::size_t> kSizes{0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 63, 64, 65, 127, 128, 129, 255, 1000, 4099};

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("scalar table is always available") {
  CHECK(isa_available(Isa::scalar));
  CHECK(table(Isa::scalar).isa == Isa::scalar);
  CHECK(isa_name(Isa::avx2) == "avx2");
}

TEST_CASE("unavailable isa is rejected") {
  if (isa_available(Isa::avx2)) return;
  CHECK_THROWS_AS(table(Isa::avx2), std::invalid_argument);
}

TEST_CASE("scalar reductions are exact on small integers") {
  const auto& k = table(Isa::scalar);
  std::vector<double> x(1000);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i + 1);
  CHECK(k.sum(x) == 500500.0);
  CHECK(k.dot(x, x) == 333833500.0);
  std::vector<double> ones(x.size(), 1.0);
  CHECK(k.dot3(ones, x, ones) == 500500.0);
  CHECK(k.sum(std::span<const double>{}) == 0.0);
}

TEST_CASE("scalar and avx2 reductions agree bit for bit") {
  if (!isa_available(Isa::avx2)) return;
  const auto& s = table(Isa::scalar);
  const auto& v = table(Isa::avx2);
  std::mt19937_64 rng(20240611);
  for (std::size_t n : kSizes) {
    CAPTURE(n);
    const auto a = random_vector(rng, n, -1.0, 1.0);
    const auto b = random_vector(rng, n, -1e3, 1e3);
    const auto w = random_vector(rng, n, 0.0, 1e-2);
    CHECK(same_bits(s.sum(a), v.sum(a)));
    CHECK(same_bits(s.dot(a, b), v.dot(a, b)));
    CHECK(same_bits(s.dot3(w, a, b), v.dot3(w, a, b)));
    std::vector<double> out_s(n), out_v(n);
    s.multiply(a, b, out_s);
    v.multiply(a, b, out_v);
    for (std::size_t i = 0; i < n; ++i) CHECK(same_bits(out_s[i], out_v[i]));
  }
}

TEST_CASE("scalar and avx2 integrand batches agree bit for bit") {
  if (!isa_available(Isa::avx2)) return;
  const auto& s = table(Isa::scalar);
  const auto& v = table(Isa::avx2);
  std::mt19937_64 rng(7);
  for (std::size_t n : kSizes) {
    CAPTURE(n);
    const auto r = random_vector(rng, n, 0.0, 50.0);
    for (double lambda : {0.1, 1.0, 3.7}) {
      std::vector<double> d1(n), s1(n), c1(n), d2(n), s2(n), c2(n);
      s.bpst_radial(lambda, r, BpstBatch{d1, s1, c1});
      v.bpst_radial(lambda, r, BpstBatch{d2, s2, c2});
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(same_bits(d1[i], d2[i]));
        CHECK(same_bits(s1[i], s2[i]));
        CHECK(same_bits(c1[i], c2[i]));
      }
    }
    for (double t : {0.0, 0.3, 0.9, 0.999}) {
      std::vector<double> a1(n), b1(n), c1(n), e1(n), a2(n), b2(n), c2(n), e2(n);
      s.cp2_radial(t, r, Cp2Batch{a1, b1, c1, e1});
      v.cp2_radial(t, r, Cp2Batch{a2, b2, c2, e2});
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(same_bits(a1[i], a2[i]));
        CHECK(same_bits(b1[i], b2[i]));
        CHECK(same_bits(c1[i], c2[i]));
        CHECK(same_bits(e1[i], e2[i]));
      }
    }
  }
}

TEST_CASE("bpst batch matches the closed form") {
  const auto& k = table(Isa::scalar);
  const std::vector<double> r{0.0, 0.5, 1.0, 2.0};
  std::vector<double> d(4), sc(4), cc(4);
  const double lambda = 0.7;
  k.bpst_radial(lambda, r, BpstBatch{d, sc, cc});
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double q = lambda * lambda + r[i] * r[i];
    CHECK(d[i] == doctest::Approx(48.0 * std::pow(lambda, 4) / std::pow(q, 4)).epsilon(1e-14));
    CHECK(sc[i] == doctest::Approx(4.0 / lambda - 8.0 * lambda / q).epsilon(1e-14));
    CHECK(cc[i] == doctest::Approx(8.0 / q).epsilon(1e-14));
  }
}

TEST_CASE("active table honours the environment override") {
  const char* forced = std::getenv("INFOMETRIC_ISA");
  if (forced != nullptr && std::string(forced) == "scalar") CHECK(active().isa == Isa::scalar);
  else CHECK((active().isa == Isa::avx2) == isa_available(Isa::avx2));
}
