#pragma once

#include <Eigen/Eigenvalues>
#include <utility>

#include "gkblow/errors.hpp"
#include "gkblow/types.hpp"

namespace gkblow {

enum class Sign { plus, minus };

template <class S>
Mat4T<S> commutator(const Mat4T<S>& a, const Mat4T<S>& b) {
  return a * b - b * a;
}

/// Transport residual F I0 + I0^T F + F Q F of a closed 2-form F against the
/// holomorphic Poisson data (I0, Q). Zero iff F deforms I0 into I0 + Q F.
template <class S>
Mat4T<S> brane_residual(const Mat4T<S>& F, const Mat4T<S>& I0, const Mat4T<S>& Q) {
  return F * I0 + I0.transpose() * F + F * Q * F;
}

/// Real part of the holomorphic Poisson structure from the bi-Hermitian data,
/// (1/8)[I+,I-] g^{-1}. For the flow-built models this equals Q/4 (the global
/// scale against the chart closed form is 4; see the report provenance).
inline Bivec poisson_bivector(const Mat4& Ip, const Mat4& Im, const Mat4& ginv,
                              double tol = 1e-12) {
  Bivec q = 0.125 * commutator<double>(Ip, Im) * ginv;
  const double scale = std::max(1.0, max_abs(q));
  if (max_abs(Mat4(q + q.transpose())) > tol * scale)
    throw NotAntisymmetric("poisson_bivector: result is not antisymmetric (incompatible inputs)");
  return 0.5 * (q - q.transpose().eval());
}

/// (1/2)(I+ -/+ I-) g^{-1}: the real Poisson structures underlying the pair.
inline Bivec real_poisson(const Mat4& Ip, const Mat4& Im, const Mat4& ginv, Sign sign) {
  return 0.5 * (sign == Sign::plus ? Mat4(Ip - Im) : Mat4(Ip + Im)) * ginv;
}

/// The same structures from the Hermitian forms, -(1/2)(wp^{-1} -/+ wm^{-1}).
/// wp, wm are the compositions g I_pm (maps T -> T*, the orientation in which
/// the published identity holds; the first-slot form matrix is its negative).
inline Bivec real_poisson_from_forms(const Form2& wp, const Form2& wm, Sign sign) {
  const double dp = std::abs(wp.determinant());
  const double dm = std::abs(wm.determinant());
  if (dp < 1e-14 || dm < 1e-14)
    throw SingularForm("real_poisson_from_forms: a Hermitian form is singular");
  const Mat4 ip = wp.inverse();
  const Mat4 im = wm.inverse();
  return -0.5 * (sign == Sign::plus ? Mat4(ip - im) : Mat4(ip + im));
}

struct DerivedStructures {
  Mat4 I1;
  Sym4 g;
  Form2 b;
};

template <class S>
struct DerivedStructuresT {
  Mat4T<S> I1, g, b;
};

/// Complex structure, symmetric tensor and 2-form produced by a transport
/// solution F of (I0, Q): I1 = I0 + Q F, g = -1/2 F((I0+I1).,.),
/// b = -1/2 F((-I0+I1).,.).
template <class S>
DerivedStructuresT<S> derived_structures_unchecked(const Mat4T<S>& F, const Mat4T<S>& I0,
                                                   const Mat4T<S>& Q) {
  DerivedStructuresT<S> out;
  out.I1 = I0 + Q * F;
  out.g = S(-0.5) * form_app<S>(F, Mat4T<S>(I0 + out.I1));
  out.b = S(-0.5) * form_app<S>(F, Mat4T<S>(out.I1 - I0));
  return out;
}

inline DerivedStructures derived_structures(const Form2& F, const Mat4& I0, const Bivec& Q,
                                            double tol = 1e-8) {
  if (max_abs(brane_residual<double>(F, I0, Q)) > tol)
    throw BraneViolated("derived_structures: F does not solve the transport equation for (I0, Q)");
  auto r = derived_structures_unchecked<double>(F, I0, Q);
  return {r.I1, r.g, r.b};
}

/// Groupoid composition: F01 (a morphism of I0) followed by F12 (a morphism of
/// I1 = I0 + Q F01) composes by addition.
inline Form2 compose_morphisms(const Form2& F01, const Form2& F12, const Mat4& I0,
                               const Bivec& Q, double tol = 1e-6) {
  if (max_abs(brane_residual<double>(F01, I0, Q)) > tol)
    throw MorphismViolated("compose_morphisms: F01 is not a morphism of (I0, Q)");
  const Mat4 I1 = I0 + Q * F01;
  if (max_abs(brane_residual<double>(F12, I1, Q)) > tol)
    throw MorphismViolated("compose_morphisms: F12 is not a morphism of (I1, Q)");
  return F01 + F12;
}

/// 8x8 generalized complex structure from the bi-Hermitian data; squares to
/// -Id whenever the forms are invertible, and the pair commutes exactly when
/// the data is generalized Kaehler. wp, wm as in real_poisson_from_forms
/// (maps g I_pm); b enters only through a conjugation, so the certified
/// properties (square, commutator) are independent of its orientation.
inline GCMat reconstruct_gc(const Form2& b, const Mat4& Ip, const Mat4& Im, const Form2& wp,
                            const Form2& wm, Sign sign) {
  if (std::abs(wp.determinant()) < 1e-14 || std::abs(wm.determinant()) < 1e-14)
    throw SingularForm("reconstruct_gc: a Hermitian form is singular");
  const Mat4 wpi = wp.inverse();
  const Mat4 wmi = wm.inverse();
  const double s = sign == Sign::plus ? 1.0 : -1.0;
  GCMat mid = GCMat::Zero();
  mid.block<4, 4>(0, 0) = Ip + s * Im;
  mid.block<4, 4>(0, 4) = -(wpi - s * wmi);
  mid.block<4, 4>(4, 0) = wp - s * wm;
  mid.block<4, 4>(4, 4) = -(Ip.transpose() + s * Im.transpose());
  GCMat lo = GCMat::Identity(), hi = GCMat::Identity();
  lo.block<4, 4>(4, 0) = -b;
  hi.block<4, 4>(4, 0) = b;
  return 0.5 * lo * mid * hi;
}

struct SymEigen {
  Vec4 values;   // ascending
  Mat4 vectors;  // columns
};

/// Eigen-decomposition of a symmetric 4x4, ascending eigenvalues.
inline SymEigen sym_eigen(const Sym4& s) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (s + s.transpose().eval()));
  return {es.eigenvalues(), es.eigenvectors()};
}

inline double min_eigenvalue(const Sym4& s) { return sym_eigen(s).values[0]; }

}  // namespace gkblow
