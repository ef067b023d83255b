#pragma once

#include <random>

#include "gkblow/algebra.hpp"
#include "gkblow/types.hpp"

namespace gkblow::testing {

inline std::mt19937_64 rng(uint64_t seed) { return std::mt19937_64(seed); }

inline Mat4 random_matrix(std::mt19937_64& gen, double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = d(gen);
  return m;
}

/// A random almost complex structure, conjugate of the standard one.
inline Mat4 random_acs(std::mt19937_64& gen) {
  Mat4 p = Mat4::Identity() + 0.3 * random_matrix(gen);
  while (std::abs(p.determinant()) < 0.2) p = Mat4::Identity() + 0.3 * random_matrix(gen);
  return p * standard_complex_structure() * p.inverse();
}

inline Form2 random_antisym(std::mt19937_64& gen, double scale = 1.0) {
  const Mat4 m = random_matrix(gen, scale);
  return 0.5 * (m - m.transpose().eval());
}

/// Random invertible antisymmetric form.
inline Form2 random_invertible_form(std::mt19937_64& gen) {
  Form2 f = standard_kaehler_form() + random_antisym(gen, 0.4);
  while (std::abs(f.determinant()) < 1e-2) f = standard_kaehler_form() + random_antisym(gen, 0.4);
  return f;
}

/// An exact pointwise transport solution: given I0 and an invertible closed
/// 2-form F, Q = -(I0 F^{-1} + F^{-1} I0^T) is antisymmetric and satisfies
/// F I0 + I0^T F + F Q F = 0 identically.
struct ExactBraneTriple {
  Mat4 I0;
  Form2 F;
  Bivec Q;
};

inline ExactBraneTriple exact_brane_triple(std::mt19937_64& gen) {
  ExactBraneTriple t;
  t.I0 = random_acs(gen);
  t.F = random_invertible_form(gen);
  const Mat4 fi = t.F.inverse();
  t.Q = -(t.I0 * fi + fi * t.I0.transpose());
  return t;
}

/// Random metric-compatible pair: g = P^T P, I_pm = P^{-1} O_pm I_std O_pm^T P
/// with O_pm orthogonal, so g I_pm + I_pm^T g = 0 and I_pm^2 = -Id.
struct CompatibleQuad {
  Sym4 g;
  Mat4 Ip, Im;
};

inline CompatibleQuad random_compatible_quad(std::mt19937_64& gen) {
  Mat4 p = Mat4::Identity() + 0.3 * random_matrix(gen);
  while (std::abs(p.determinant()) < 0.2) p = Mat4::Identity() + 0.3 * random_matrix(gen);
  auto ortho = [&] {
    Eigen::HouseholderQR<Mat4> qr(random_matrix(gen));
    Mat4 q = qr.householderQ();
    return q;
  };
  CompatibleQuad c;
  c.g = p.transpose() * p;
  const Mat4 pi = p.inverse();
  const Mat4 op = ortho(), om = ortho();
  c.Ip = pi * op * standard_complex_structure() * op.transpose() * p;
  c.Im = pi * om * standard_complex_structure() * om.transpose() * p;
  return c;
}

}  // namespace gkblow::testing
