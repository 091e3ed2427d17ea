#pragma once

// Second-order forward-mode jets: value plus first and second derivative with
// respect to one scalar variable. Used to differentiate the closed-form metric
// coefficients without finite differences.

#include <cmath>

namespace infometric {

template <class T>
struct Jet {
  T v{};
  T d1{};
  T d2{};

  constexpr Jet() = default;
  constexpr Jet(T value) : v(value) {}  // NOLINT: constants promote implicitly
  constexpr Jet(T value, T first, T second) : v(value), d1(first), d2(second) {}

  static constexpr Jet variable(T x) { return Jet(x, T(1), T(0)); }

  template <class U>
  constexpr Jet<U> cast() const {
    return Jet<U>(static_cast<U>(v), static_cast<U>(d1), static_cast<U>(d2));
  }

  constexpr Jet operator-() const { return Jet(-v, -d1, -d2); }

  constexpr Jet& operator+=(const Jet& o) {
    v += o.v;
    d1 += o.d1;
    d2 += o.d2;
    return *this;
  }
  constexpr Jet& operator-=(const Jet& o) {
    v -= o.v;
    d1 -= o.d1;
    d2 -= o.d2;
    return *this;
  }
  constexpr Jet& operator*=(const Jet& o) {
    *this = Jet(v * o.v, d1 * o.v + v * o.d1, d2 * o.v + T(2) * d1 * o.d1 + v * o.d2);
    return *this;
  }
  constexpr Jet& operator/=(const Jet& o) { return *this *= reciprocal(o); }

  friend constexpr Jet reciprocal(const Jet& a) {
    const T inv = T(1) / a.v;
    const T inv2 = inv * inv;
    return Jet(inv, -a.d1 * inv2, -a.d2 * inv2 + T(2) * a.d1 * a.d1 * inv2 * inv);
  }

  friend constexpr Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend constexpr Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend constexpr Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend constexpr Jet operator/(Jet a, const Jet& b) { return a /= b; }
  friend constexpr Jet operator+(Jet a, T b) { return a += Jet(b); }
  friend constexpr Jet operator+(T a, Jet b) { return b += Jet(a); }
  friend constexpr Jet operator-(Jet a, T b) { return a -= Jet(b); }
  friend constexpr Jet operator-(T a, const Jet& b) { return Jet(a) - b; }
  friend constexpr Jet operator*(Jet a, T b) { return Jet(a.v * b, a.d1 * b, a.d2 * b); }
  friend constexpr Jet operator*(T a, Jet b) { return b * a; }
  friend constexpr Jet operator/(Jet a, T b) { return a * (T(1) / b); }
  friend constexpr Jet operator/(T a, const Jet& b) { return a * reciprocal(b); }

  friend Jet log(const Jet& a) {
    using std::log;
    const T inv = T(1) / a.v;
    return Jet(log(a.v), a.d1 * inv, a.d2 * inv - a.d1 * a.d1 * inv * inv);
  }

  friend Jet sqrt(const Jet& a) {
    using std::sqrt;
    const T root = sqrt(a.v);
    const T half_inv = T(1) / (T(2) * root);
    return Jet(root, a.d1 * half_inv, a.d2 * half_inv - a.d1 * a.d1 * half_inv / (T(2) * a.v));
  }
};

template <class T>
constexpr Jet<T> square(const Jet<T>& a) {
  return a * a;
}

template <class T>
constexpr Jet<T> ipow(Jet<T> base, unsigned n) {
  Jet<T> out(T(1));
  while (n != 0) {
    if (n & 1u) out *= base;
    base *= base;
    n >>= 1u;
  }
  return out;
}

using Jet2 = Jet<double>;

}  // namespace infometric
