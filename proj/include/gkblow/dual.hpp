#pragma once

#include <Eigen/Core>
#include <array>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace gkblow {

/// Forward-mode dual scalar carrying a value and N directional derivatives.
/// Nesting (Dual<Dual<double,4>,4>, ...) yields exact higher derivatives.
template <class T, int N>
struct Dual {
  T val{};
  std::array<T, N> grad{};

  Dual() = default;
  Dual(const T& v) : val(v) {}  // NOLINT: implicit by design (scalar promotion)
  template <class U = T, std::enable_if_t<!std::is_same_v<U, double>, int> = 0>
  Dual(double v) : val(v) {}    // NOLINT: promote a plain constant through the tower

  static Dual seeded(const T& v, int direction) {
    Dual d(v);
    d.grad[direction] = T(1);
    return d;
  }

  Dual operator-() const {
    Dual r(-val);
    for (int i = 0; i < N; ++i) r.grad[i] = -grad[i];
    return r;
  }

  Dual& operator+=(const Dual& o) {
    val += o.val;
    for (int i = 0; i < N; ++i) grad[i] += o.grad[i];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    val -= o.val;
    for (int i = 0; i < N; ++i) grad[i] -= o.grad[i];
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    for (int i = 0; i < N; ++i) grad[i] = grad[i] * o.val + val * o.grad[i];
    val *= o.val;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    const T inv = T(1) / o.val;
    val *= inv;
    for (int i = 0; i < N; ++i) grad[i] = (grad[i] - val * o.grad[i]) * inv;
    return *this;
  }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }

  friend bool operator<(const Dual& a, const Dual& b) { return leaf_value(a) < leaf_value(b); }
  friend bool operator>(const Dual& a, const Dual& b) { return leaf_value(a) > leaf_value(b); }
  friend bool operator<=(const Dual& a, const Dual& b) { return leaf_value(a) <= leaf_value(b); }
  friend bool operator>=(const Dual& a, const Dual& b) { return leaf_value(a) >= leaf_value(b); }
  friend bool operator==(const Dual& a, const Dual& b) { return a.val == b.val && a.grad == b.grad; }
  friend bool operator!=(const Dual& a, const Dual& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Dual& d) { return os << leaf_value(d); }
};

inline double leaf_value(double x) { return x; }
template <class T, int N>
double leaf_value(const Dual<T, N>& d) {
  return leaf_value(d.val);
}

template <class S>
struct scalar_depth : std::integral_constant<int, 0> {};
template <class T, int N>
struct scalar_depth<Dual<T, N>> : std::integral_constant<int, scalar_depth<T>::value + 1> {};
template <class S>
inline constexpr int scalar_depth_v = scalar_depth<S>::value;

// Chain-rule lifts of the math functions the potentials need.
using std::exp;
using std::log;
using std::sqrt;

template <class T, int N>
Dual<T, N> sqrt(const Dual<T, N>& a) {
  Dual<T, N> r(sqrt(a.val));
  const T s = T(1) / (T(2) * r.val);
  for (int i = 0; i < N; ++i) r.grad[i] = a.grad[i] * s;
  return r;
}

template <class T, int N>
Dual<T, N> log(const Dual<T, N>& a) {
  Dual<T, N> r(log(a.val));
  const T s = T(1) / a.val;
  for (int i = 0; i < N; ++i) r.grad[i] = a.grad[i] * s;
  return r;
}

template <class T, int N>
Dual<T, N> exp(const Dual<T, N>& a) {
  Dual<T, N> r(exp(a.val));
  for (int i = 0; i < N; ++i) r.grad[i] = a.grad[i] * r.val;
  return r;
}

template <class T, int N>
Dual<T, N> abs(const Dual<T, N>& a) {
  return leaf_value(a) < 0.0 ? -a : a;
}

}  // namespace gkblow

namespace Eigen {

template <class T, int N>
struct NumTraits<gkblow::Dual<T, N>> : NumTraits<double> {
  using Real = gkblow::Dual<T, N>;
  using NonInteger = gkblow::Dual<T, N>;
  using Nested = gkblow::Dual<T, N>;
  using Literal = gkblow::Dual<T, N>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 1 + N,
    MulCost = 1 + 2 * N,
  };
  static Real epsilon() { return Real(NumTraits<double>::epsilon()); }
  static Real dummy_precision() { return Real(NumTraits<double>::dummy_precision()); }
  static Real highest() { return Real(NumTraits<double>::highest()); }
  static Real lowest() { return Real(NumTraits<double>::lowest()); }
  static int digits10() { return NumTraits<double>::digits10(); }
};

}  // namespace Eigen
