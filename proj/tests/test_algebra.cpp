#include <doctest.h>

#include "gkblow/algebra.hpp"
#include "test_helpers.hpp"

using namespace gkblow;
namespace tt = gkblow::testing;

TEST_CASE("commutator: trivial cases and the difference-sum identity") {
  auto gen = tt::rng(11);
  const Mat4 a = tt::random_matrix(gen);
  CHECK(max_abs(commutator<double>(a, a)) == 0.0);

  const Mat4 i = standard_complex_structure();
  CHECK(max_abs(commutator<double>(i, Mat4(-i))) == 0.0);

  for (int k = 0; k < 50; ++k) {
    const Mat4 ip = tt::random_acs(gen), im = tt::random_acs(gen);
    const Mat4 lhs = commutator<double>(ip, im);
    const Mat4 rhs = (ip - im) * (im + ip);
    CHECK(max_abs(Mat4(lhs - rhs)) < 1e-12 * std::max(1.0, max_abs(lhs)));
  }
}

TEST_CASE("brane_residual: zero form, Kaehler (1,1) form, exact solutions") {
  const Mat4 i0 = standard_complex_structure();
  CHECK(max_abs(brane_residual<double>(Form2::Zero(), i0, Bivec::Zero())) == 0.0);
  // (1,1) forms for I are annihilated by F I + I^T F when Q = 0
  CHECK(max_abs(brane_residual<double>(standard_kaehler_form(), i0, Bivec::Zero())) < 1e-15);

  auto gen = tt::rng(12);
  for (int k = 0; k < 50; ++k) {
    const auto t = tt::exact_brane_triple(gen);
    CHECK(max_abs(Mat4(t.Q + t.Q.transpose())) < 1e-12);
    CHECK(max_abs(brane_residual<double>(t.F, t.I0, t.Q)) < 1e-12);
  }
}

TEST_CASE("derived_structures: Kaehler case, F = 0, and exact solutions") {
  const Mat4 i0 = standard_complex_structure();

  auto d = derived_structures(standard_kaehler_form(), i0, Bivec::Zero());
  CHECK(max_abs(Mat4(d.I1 - i0)) == 0.0);
  CHECK(max_abs(d.b) == 0.0);
  CHECK(max_abs(Mat4(d.g - Mat4::Identity())) < 1e-15);  // positive euclidean

  auto z = derived_structures(Form2::Zero(), i0, Bivec::Zero());
  CHECK(max_abs(Mat4(z.I1 - i0)) == 0.0);
  CHECK(max_abs(z.g) == 0.0);
  CHECK(max_abs(z.b) == 0.0);

  auto gen = tt::rng(13);
  for (int k = 0; k < 50; ++k) {
    const auto t = tt::exact_brane_triple(gen);
    const auto s = derived_structures(t.F, t.I0, t.Q);
    CHECK(max_abs(Mat4(s.I1 * s.I1 + Mat4::Identity())) < 1e-10);
    CHECK(max_abs(Mat4(s.g - s.g.transpose())) < 1e-10);
    CHECK(max_abs(Mat4(s.b + s.b.transpose())) < 1e-10);
    // Hermitian compatibility with both structures
    CHECK(max_abs(Mat4(s.g * t.I0 + t.I0.transpose() * s.g)) < 1e-10);
    CHECK(max_abs(Mat4(s.g * s.I1 + s.I1.transpose() * s.g)) < 1e-10);
  }

  // precondition violation
  auto gen2 = tt::rng(14);
  const Form2 bad = tt::random_invertible_form(gen2);
  CHECK_THROWS_AS(derived_structures(bad, i0, Bivec::Zero()), BraneViolated);
}

TEST_CASE("compose_morphisms: inverse and identity morphisms") {
  auto gen = tt::rng(15);
  const auto t = tt::exact_brane_triple(gen);

  const Form2 sum = compose_morphisms(t.F, Form2(-t.F), t.I0, t.Q);
  CHECK(max_abs(sum) == 0.0);

  const Form2 same = compose_morphisms(Form2::Zero(), t.F, t.I0, t.Q);
  CHECK(max_abs(Form2(same - t.F)) == 0.0);

  CHECK_THROWS_AS(compose_morphisms(tt::random_invertible_form(gen), t.F, t.I0, t.Q),
                  MorphismViolated);
}

TEST_CASE("poisson_bivector: vanishing and antisymmetry") {
  auto gen = tt::rng(16);
  const Mat4 ip = tt::random_acs(gen);
  CHECK(max_abs(poisson_bivector(ip, ip, Mat4::Identity())) == 0.0);

  for (int k = 0; k < 20; ++k) {
    const auto c = tt::random_compatible_quad(gen);
    const Bivec q = poisson_bivector(c.Ip, c.Im, Sym4(c.g.inverse()));
    CHECK(max_abs(Mat4(q + q.transpose())) < 1e-12);
  }

  // incompatible inputs make (1/8)[I+,I-]g^{-1} fail antisymmetry
  const Mat4 a = tt::random_acs(gen), b = tt::random_acs(gen);
  CHECK_THROWS_AS(poisson_bivector(a, b, Mat4(Mat4::Identity() + 0.5 * tt::random_matrix(gen))),
                  NotAntisymmetric);
}

TEST_CASE("real_poisson: plug-in cases and agreement of the two formulas") {
  const Mat4 i = standard_complex_structure();
  CHECK(max_abs(real_poisson(i, i, Mat4::Identity(), Sign::plus)) == 0.0);
  CHECK(max_abs(Mat4(real_poisson(i, i, Mat4::Identity(), Sign::minus) - i)) == 0.0);

  auto gen = tt::rng(17);
  for (int k = 0; k < 20; ++k) {
    const auto c = tt::random_compatible_quad(gen);
    const Form2 wp = c.g * c.Ip;  // map orientation g I_pm
    const Form2 wm = c.g * c.Im;
    for (Sign s : {Sign::plus, Sign::minus}) {
      const Bivec lhs = real_poisson(c.Ip, c.Im, Sym4(c.g.inverse()), s);
      const Bivec rhs = real_poisson_from_forms(wp, wm, s);
      CHECK(max_abs(Bivec(lhs - rhs)) < 1e-10 * std::max(1.0, max_abs(lhs)));
    }
  }

  CHECK_THROWS_AS(real_poisson_from_forms(Form2::Zero(), standard_kaehler_form(), Sign::plus),
                  SingularForm);
}

TEST_CASE("reconstruct_gc: Kaehler block structure") {
  const Mat4 i = standard_complex_structure();
  const Form2 w = standard_kaehler_form();
  const GCMat jp = reconstruct_gc(Form2::Zero(), i, i, w, w, Sign::plus);
  const GCMat jm = reconstruct_gc(Form2::Zero(), i, i, w, w, Sign::minus);

  GCMat jp_ref = GCMat::Zero();
  jp_ref.block<4, 4>(0, 0) = i;
  jp_ref.block<4, 4>(4, 4) = -i.transpose();
  CHECK(max_abs(GCMat(jp - jp_ref)) < 1e-15);

  GCMat jm_ref = GCMat::Zero();
  jm_ref.block<4, 4>(0, 4) = -w.inverse();
  jm_ref.block<4, 4>(4, 0) = w;
  CHECK(max_abs(GCMat(jm - jm_ref)) < 1e-15);
}

TEST_CASE("reconstruct_gc: squares to -Id even for non-integrable compatible data") {
  auto gen = tt::rng(18);
  for (int k = 0; k < 20; ++k) {
    const auto c = tt::random_compatible_quad(gen);
    const Form2 wp = c.g * c.Ip;
    const Form2 wm = c.g * c.Im;
    const Form2 b = tt::random_antisym(gen);
    for (Sign s : {Sign::plus, Sign::minus}) {
      const GCMat j = reconstruct_gc(b, c.Ip, c.Im, wp, wm, s);
      CHECK(max_abs(GCMat(j * j + GCMat::Identity())) < 1e-12);
    }
  }
  CHECK_THROWS_AS(
      reconstruct_gc(Form2::Zero(), standard_complex_structure(), standard_complex_structure(),
                     Form2::Zero(), standard_kaehler_form(), Sign::plus),
      SingularForm);
}

TEST_CASE("sym_eigen: diagonal, zero, reconstruction") {
  Sym4 d = Vec4(1, 2, 3, 4).asDiagonal();
  const auto e = sym_eigen(d);
  CHECK(e.values.isApprox(Vec4(1, 2, 3, 4), 1e-14));
  CHECK(sym_eigen(Sym4::Zero()).values.cwiseAbs().maxCoeff() == 0.0);

  auto gen = tt::rng(19);
  for (int k = 0; k < 20; ++k) {
    const Mat4 m = tt::random_matrix(gen);
    const Sym4 s = m + m.transpose().eval();
    const auto es = sym_eigen(s);
    for (int i = 0; i < 3; ++i) CHECK(es.values[i] <= es.values[i + 1]);
    const Mat4 rec = es.vectors * es.values.asDiagonal() * es.vectors.transpose();
    CHECK(max_abs(Mat4(s - rec)) < 1e-12 * std::max(1.0, max_abs(s)));
  }
}
