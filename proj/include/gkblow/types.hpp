#pragma once

#include <Eigen/Dense>

#include "gkblow/dual.hpp"

// Conventions used throughout.
//
// Real coordinates on a chart of C^2 are ordered (Re u, Im u, Re v, Im v).
// Endomorphisms act on column vectors. A 2-form F is the antisymmetric
// matrix with F(X,Y) = X^T F Y; applying an endomorphism A to a form means
// plugging A into the FIRST slot, form_app(F,A) = A^T F. A bivector is the
// antisymmetric matrix Q acting on covectors through its first slot,
// Q(alpha) = Q * alpha, so the Hamiltonian field of f is X = Q * df. These
// two slot choices are calibrated against each other: they make the flow
// transport equation F I0 + I0^T F + F Q F = 0 hold for the quadrature with
// the same matrix Q that appears in the chart closed form of the Poisson
// structure, and they make the reference Kaehler metric positive-definite.
// The operator d^c is d^c f = -df o I on functions (so dd^c = 2i del delbar)
// and d^c w = -(dw)(I.,I.,I.) on I-invariant 2-forms.

namespace gkblow {

using D1 = Dual<double, 4>;
using D2 = Dual<D1, 4>;
using D3 = Dual<D2, 4>;

template <class S> using Vec4T = Eigen::Matrix<S, 4, 1>;
template <class S> using Mat4T = Eigen::Matrix<S, 4, 4>;
template <class S> using Mat8T = Eigen::Matrix<S, 8, 8>;

using Vec4 = Vec4T<double>;
using Mat4 = Mat4T<double>;   // endomorphism of the real tangent space
using Form2 = Mat4;           // antisymmetric, covariant
using Bivec = Mat4;           // antisymmetric, contravariant
using Sym4 = Mat4;            // symmetric, covariant
using Form1 = Vec4;           // covector
using GCMat = Mat8T<double>;  // endomorphism of T + T*

/// 3-form storage: comp[l] = T(e_i,e_j,e_k) with (i,j,k) the increasing
/// complement of l in {0,1,2,3}.
template <class S> using Form3T = Vec4T<S>;
using Form3 = Form3T<double>;

struct Tolerances {
  double algebraic = 1e-12;       // exact pointwise identities
  double derived = 1e-10;         // consequences of exact identities
  double discretization = 1e-6;   // flow/quadrature-limited residuals
};

/// A complex number over any scalar in the dual tower (std::complex is only
/// specified for the builtin floating types).
template <class S>
struct CScalar {
  S re{}, im{};
  CScalar() = default;
  CScalar(const S& r) : re(r) {}
  CScalar(const S& r, const S& i) : re(r), im(i) {}
  S abs2() const { return re * re + im * im; }
  CScalar conj() const { return {re, -im}; }
  friend CScalar operator+(const CScalar& a, const CScalar& b) { return {a.re + b.re, a.im + b.im}; }
  friend CScalar operator-(const CScalar& a, const CScalar& b) { return {a.re - b.re, a.im - b.im}; }
  friend CScalar operator-(const CScalar& a) { return {-a.re, -a.im}; }
  friend CScalar operator*(const CScalar& a, const CScalar& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend CScalar operator/(const CScalar& a, const CScalar& b) {
    const S d = S(1) / b.abs2();
    return {(a.re * b.re + a.im * b.im) * d, (a.im * b.re - a.re * b.im) * d};
  }
};

template <class S>
CScalar<S> first_complex(const Vec4T<S>& p) { return {p[0], p[1]}; }
template <class S>
CScalar<S> second_complex(const Vec4T<S>& p) { return {p[2], p[3]}; }

/// Standard complex structure, I e_x = e_y per complex coordinate.
template <class S = double>
Mat4T<S> standard_complex_structure() {
  Mat4T<S> m = Mat4T<S>::Zero();
  m(1, 0) = S(1); m(0, 1) = S(-1);
  m(3, 2) = S(1); m(2, 3) = S(-1);
  return m;
}

/// dx1^dy1 + dx2^dy2 (the flat Kaehler form of g = Id, I standard).
template <class S = double>
Mat4T<S> standard_kaehler_form() {
  Mat4T<S> m = Mat4T<S>::Zero();
  m(0, 1) = S(1); m(1, 0) = S(-1);
  m(2, 3) = S(1); m(3, 2) = S(-1);
  return m;
}

/// Real 2x2 block of multiplication by h.
template <class S>
Eigen::Matrix<S, 2, 2> rot_block(const CScalar<S>& h) {
  Eigen::Matrix<S, 2, 2> m;
  m << h.re, -h.im, h.im, h.re;
  return m;
}

/// Real 4x4 of the complex-linear map with matrix [[a,b],[c,d]].
template <class S>
Mat4T<S> real_of_complex_linear(const CScalar<S>& a, const CScalar<S>& b,
                                const CScalar<S>& c, const CScalar<S>& d) {
  Mat4T<S> m;
  m.template block<2, 2>(0, 0) = rot_block(a);
  m.template block<2, 2>(0, 2) = rot_block(b);
  m.template block<2, 2>(2, 0) = rot_block(c);
  m.template block<2, 2>(2, 2) = rot_block(d);
  return m;
}

/// Bivector matrix of Re(h du^dv) in the chart whose complex coordinates are
/// (u,v): contracting a covector into the first slot reproduces the chart
/// closed forms (e.g. Q(d log|u|^2 ...) formulas).
template <class S>
Mat4T<S> real_holomorphic_bivector(const CScalar<S>& h) {
  Eigen::Matrix<S, 2, 2> sh;
  sh << h.re, h.im, h.im, -h.re;
  Mat4T<S> q = Mat4T<S>::Zero();
  q.template block<2, 2>(0, 2) = -S(0.25) * sh;
  q.template block<2, 2>(2, 0) = S(0.25) * sh;
  return q;
}

/// A^T F: the endomorphism A applied to the first slot of the 2-form F.
template <class S>
Mat4T<S> form_app(const Mat4T<S>& F, const Mat4T<S>& A) {
  return A.transpose() * F;
}

template <class S>
Vec4T<S> value_of(const Vec4T<S>& p) { return p; }
template <class T, int N>
Vec4T<T> value_of(const Vec4T<Dual<T, N>>& p) {
  Vec4T<T> v;
  for (int i = 0; i < 4; ++i) v[i] = p[i].val;
  return v;
}

inline Vec4 leaf_point(const Vec4& p) { return p; }
template <class S>
Vec4 leaf_point(const Vec4T<S>& p) {
  Vec4 v;
  for (int i = 0; i < 4; ++i) v[i] = leaf_value(p[i]);
  return v;
}

inline double max_abs(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  return m.cwiseAbs().maxCoeff();
}

}  // namespace gkblow
