#pragma once

#include <array>
#include <utility>

#include "gkblow/field.hpp"
#include "gkblow/types.hpp"

namespace gkblow {

// Global d^c sign. +1 means d^c f = -df o I (so dd^c = 2i del delbar); this
// is the choice under which -(dd^c f) I is positive-definite for strictly
// plurisubharmonic f and the Hamiltonian chart closed forms hold literally.
inline constexpr double kDcSign = 1.0;

inline constexpr int kMaxDualDepth = 3;

/// Value and first partials of a field at a point.
template <class K, class S>
struct FieldJet {
  typename K::template rep<S> value;
  std::array<typename K::template rep<S>, 4> d;
};

template <class K, class S>
FieldJet<K, S> field_jet(const SmoothField<K>& field, const Vec4T<S>& p, const DerivConfig& cfg) {
  using Rep = typename K::template rep<S>;
  FieldJet<K, S> jet;
  if (cfg.mode == DerivMode::dual) {
    if constexpr (scalar_depth_v<S> < kMaxDualDepth) {
      using D = Dual<S, 4>;
      Vec4T<D> pd;
      for (int i = 0; i < 4; ++i) pd[i] = D::seeded(p[i], i);
      auto vd = field(pd);
      constexpr int n = rep_components<typename K::template rep<D>, D>();
      jet.value = rep_zero<Rep, S>();
      for (auto& g : jet.d) g = rep_zero<Rep, S>();
      for (int c = 0; c < n; ++c) {
        const D comp = rep_component<typename K::template rep<D>, D>(vd, c);
        rep_set_component<Rep, S>(jet.value, c, comp.val);
        for (int i = 0; i < 4; ++i) rep_set_component<Rep, S>(jet.d[i], c, comp.grad[i]);
      }
      return jet;
    } else {
      throw std::logic_error("field_jet: dual-mode derivative depth exceeded");
    }
  }
  // central differences, optionally Richardson-extrapolated
  jet.value = field(p);
  auto central = [&](double h) {
    std::array<Rep, 4> d;
    for (int i = 0; i < 4; ++i) {
      Vec4T<S> pp = p, pm = p;
      pp[i] += S(h);
      pm[i] -= S(h);
      d[i] = (field(pp) - field(pm)) / S(2.0 * h);
    }
    return d;
  };
  jet.d = central(cfg.fd_step);
  if (cfg.richardson) {
    auto fine = central(0.5 * cfg.fd_step);
    for (int i = 0; i < 4; ++i) jet.d[i] = (S(4.0) * fine[i] - jet.d[i]) / S(3.0);
  }
  return jet;
}

/// Partial derivatives of every component of the field (public entry point;
/// checks the domain and, in fd mode, stencil room).
template <class K>
FieldJet<K, double> jacobian(const SmoothField<K>& field, const Vec4& p, const DerivConfig& cfg) {
  const double stencil = cfg.mode == DerivMode::fd ? cfg.fd_step : 0.0;
  field.domain().require_interior(p, stencil, stencil);
  return field_jet(field, p, cfg);
}

template <class S>
Vec4T<S> gradient(const ScalarField& f, const Vec4T<S>& p, const DerivConfig& cfg) {
  auto jet = field_jet(f, p, cfg);
  Vec4T<S> g;
  for (int i = 0; i < 4; ++i) g[i] = jet.d[i];
  return g;
}

// ---------------------------------------------------------------------------
// Exterior calculus
// ---------------------------------------------------------------------------

template <class S>
Mat4T<S> exterior_derivative_1form(const OneFormField& a, const Vec4T<S>& p,
                                   const DerivConfig& cfg) {
  auto jet = field_jet(a, p, cfg);
  Mat4T<S> d;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d(i, j) = jet.d[i][j] - jet.d[j][i];
  return d;
}

namespace detail {
constexpr int k3idx[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};

template <class S>
Form3T<S> threeform_from_partials(const std::array<Mat4T<S>, 4>& dW) {
  Form3T<S> t;
  for (int l = 0; l < 4; ++l) {
    const int i = k3idx[l][0], j = k3idx[l][1], k = k3idx[l][2];
    t[l] = dW[i](j, k) - dW[j](i, k) + dW[k](i, j);
  }
  return t;
}
}  // namespace detail

template <class S>
Form3T<S> exterior_derivative_2form(const TwoFormField& w, const Vec4T<S>& p,
                                    const DerivConfig& cfg) {
  auto jet = field_jet(w, p, cfg);
  return detail::threeform_from_partials<S>(jet.d);
}

template <class S>
S eval_threeform(const Form3T<S>& t, const Vec4T<S>& X, const Vec4T<S>& Y, const Vec4T<S>& Z) {
  S acc = S(0);
  for (int l = 0; l < 4; ++l) {
    const int i = detail::k3idx[l][0], j = detail::k3idx[l][1], k = detail::k3idx[l][2];
    const S det = X[i] * (Y[j] * Z[k] - Y[k] * Z[j]) - Y[i] * (X[j] * Z[k] - X[k] * Z[j]) +
                  Z[i] * (X[j] * Y[k] - X[k] * Y[j]);
    acc += t[l] * det;
  }
  return acc;
}

/// T(A.,A.,A.) componentwise.
template <class S>
Form3T<S> pullback_threeform(const Form3T<S>& t, const Mat4T<S>& A) {
  Form3T<S> out;
  for (int l = 0; l < 4; ++l) {
    const int i = detail::k3idx[l][0], j = detail::k3idx[l][1], k = detail::k3idx[l][2];
    out[l] = eval_threeform<S>(t, A.col(i), A.col(j), A.col(k));
  }
  return out;
}

inline double max_abs_form3(const Form3& t) { return t.cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------------------
// d^c, dd^c
// ---------------------------------------------------------------------------

/// (d^c f)(X) = -df(I X), as a covector: -I^T df.
template <class S>
Vec4T<S> dc_value(const ScalarField& f, const EndoField& I, const Vec4T<S>& p,
                  const DerivConfig& cfg) {
  return Vec4T<S>(S(-kDcSign) * (I(p).transpose() * gradient(f, p, cfg)));
}

inline Form1 dc_scalar(const ScalarField& f, const EndoField& I, const Vec4& p,
                       const DerivConfig& cfg) {
  f.domain().require_interior(p, cfg.mode == DerivMode::fd ? cfg.fd_step : 0.0,
                              cfg.mode == DerivMode::fd ? cfg.fd_step : 0.0);
  return dc_value(f, I, p, cfg);
}

/// d(d^c f); of type (1,1) wherever I is integrable.
template <class S>
Mat4T<S> ddc_value(const ScalarField& f, const EndoField& I, const Vec4T<S>& p,
                   const DerivConfig& cfg) {
  if (cfg.mode == DerivMode::dual) {
    if constexpr (scalar_depth_v<S> < kMaxDualDepth) {
      using D = Dual<S, 4>;
      Vec4T<D> pd;
      for (int i = 0; i < 4; ++i) pd[i] = D::seeded(p[i], i);
      const Vec4T<D> a = dc_value(f, I, pd, cfg);
      Mat4T<S> d;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) d(i, j) = a[j].grad[i] - a[i].grad[j];
      return d;
    } else {
      throw std::logic_error("ddc_value: dual-mode derivative depth exceeded");
    }
  }
  const double h = cfg.fd_step;
  std::array<Vec4T<S>, 4> da;
  for (int i = 0; i < 4; ++i) {
    Vec4T<S> pp = p, pm = p;
    pp[i] += S(h);
    pm[i] -= S(h);
    da[i] = (dc_value(f, I, pp, cfg) - dc_value(f, I, pm, cfg)) / S(2.0 * h);
  }
  Mat4T<S> d;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d(i, j) = da[i][j] - da[j][i];
  return d;
}

inline Form2 ddc_scalar(const ScalarField& f, const EndoField& I, const Vec4& p,
                        const DerivConfig& cfg) {
  const double m = cfg.mode == DerivMode::fd ? 2.0 * cfg.fd_step : 0.0;
  f.domain().require_interior(p, m, m);
  return ddc_value(f, I, p, cfg);
}

/// dd^c f as a field, reusable inside flow quadratures.
inline TwoFormField ddc_field(const ScalarField& f, const EndoField& I, const DerivConfig& cfg) {
  return make_field<TwoFormKind>(
      f.domain(), [f, I, cfg]<class S>(const Vec4T<S>& p) { return ddc_value(f, I, p, cfg); });
}

/// (d^c w)(X,Y,Z) = -(dw)(IX,IY,IZ), valid for I-invariant w.
inline Form3 dc_two_form(const TwoFormField& w, const EndoField& I, const Vec4& p,
                         const DerivConfig& cfg) {
  const Form3 dw = exterior_derivative_2form(w, p, cfg);
  return -kDcSign * pullback_threeform<double>(dw, Mat4(I(p)));
}

// ---------------------------------------------------------------------------
// Integrability and the generalized Kaehler condition
// ---------------------------------------------------------------------------

/// Max norm of N(e_i,e_j) = [Ie_i,Ie_j] - I[Ie_i,e_j] - I[e_i,Ie_j] - [e_i,e_j]
/// over coordinate frame pairs.
inline double nijenhuis(const EndoField& I, const Vec4& p, const DerivConfig& cfg) {
  const auto jet = jacobian(I, p, cfg);
  const Mat4& Iv = jet.value;
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      Vec4 n = Vec4::Zero();
      for (int m = 0; m < 4; ++m) n += Iv(m, i) * jet.d[m].col(j) - Iv(m, j) * jet.d[m].col(i);
      n += Iv * jet.d[j].col(i) - Iv * jet.d[i].col(j);
      worst = std::max(worst, n.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

struct GkResidual {
  double r_plus;   // ||d^c_+ w_+ - db||
  double r_minus;  // ||d^c_- w_- + db||
};

/// Residuals of the generalized Kaehler condition with w_pm = g(I_pm ., .).
inline GkResidual gk_condition_residual(const SymField& g, const TwoFormField& b,
                                        const EndoField& Ip, const EndoField& Im, const Vec4& p,
                                        const DerivConfig& cfg) {
  const auto jg = jacobian(g, p, cfg);
  const auto jb = jacobian(b, p, cfg);
  const auto jp = jacobian(Ip, p, cfg);
  const auto jm = jacobian(Im, p, cfg);

  auto hermitian_partials = [&](const FieldJet<EndoKind, double>& jI) {
    std::array<Mat4, 4> dw;
    for (int i = 0; i < 4; ++i)
      dw[i] = jI.d[i].transpose() * jg.value + jI.value.transpose() * jg.d[i];
    return dw;
  };
  const Form3 dwp = detail::threeform_from_partials<double>(hermitian_partials(jp));
  const Form3 dwm = detail::threeform_from_partials<double>(hermitian_partials(jm));
  const Form3 db = detail::threeform_from_partials<double>(jb.d);

  const Form3 dcwp = -kDcSign * pullback_threeform<double>(dwp, jp.value);
  const Form3 dcwm = -kDcSign * pullback_threeform<double>(dwm, jm.value);
  return {max_abs_form3(dcwp - db), max_abs_form3(dcwm + db)};
}

}  // namespace gkblow
