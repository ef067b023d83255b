#pragma once

#include <complex>

#include "gkblow/model.hpp"

namespace gkblow {

/// chart0 carries (u0,v0) = (u/v, v), chart1 carries (u1,v1) = (u, v/u); the
/// exceptional divisor is {v0 = 0} in chart0 and {u1 = 0} in chart1. Both
/// charts are holomorphic for the lifted I+, so the standard constant complex
/// structure per chart plays I+ upstairs.
enum class ChartId { zero, one };

inline const char* chart_name(ChartId c) { return c == ChartId::zero ? "chart0" : "chart1"; }

struct BlowupAtlas {
  ChartDomain chart0, chart1;
  double switch_threshold = 2.0;  // |u0| (resp. |v1|) beyond which the flow switches chart

  static BlowupAtlas standard() {
    BlowupAtlas a;
    a.chart0 = ChartDomain::box_of(
        "chart0", {Interval{-2.6, 2.6}, {-2.6, 2.6}, {-1.05, 1.05}, {-1.05, 1.05}});
    a.chart1 = ChartDomain::box_of(
        "chart1", {Interval{-1.05, 1.05}, {-1.05, 1.05}, {-2.6, 2.6}, {-2.6, 2.6}});
    return a;
  }

  const ChartDomain& chart(ChartId c) const { return c == ChartId::zero ? chart0 : chart1; }
};

/// Blow-down to (u,v): chart0 (u0 v0, v0); chart1 (u1, u1 v1).
template <class S>
Vec4T<S> blowdown(ChartId chart, const Vec4T<S>& p) {
  const CScalar<S> a = first_complex(p), b = second_complex(p);
  const CScalar<S> u = chart == ChartId::zero ? a * b : a;
  const CScalar<S> v = chart == ChartId::zero ? b : a * b;
  return Vec4T<S>(u.re, u.im, v.re, v.im);
}

template <class S>
Mat4T<S> blowdown_jacobian(ChartId chart, const Vec4T<S>& p) {
  const CScalar<S> a = first_complex(p), b = second_complex(p);
  if (chart == ChartId::zero)
    return real_of_complex_linear<S>(b, a, CScalar<S>(S(0)), CScalar<S>(S(1)));
  return real_of_complex_linear<S>(CScalar<S>(S(1)), CScalar<S>(S(0)), b, a);
}

/// chart0 -> chart1: (u1, v1) = (u0 v0, 1/u0); chart1 -> chart0:
/// (u0, v0) = (1/v1, u1 v1).
template <class S>
Vec4T<S> transition(ChartId from, const Vec4T<S>& p) {
  const CScalar<S> a = first_complex(p), b = second_complex(p);
  if (from == ChartId::zero) {
    if (leaf_value(a.abs2()) == 0.0)
      throw OnExcludedLocus("transition: u0 = 0 has no chart1 image");
    const CScalar<S> u1 = a * b, v1 = CScalar<S>(S(1)) / a;
    return Vec4T<S>(u1.re, u1.im, v1.re, v1.im);
  }
  if (leaf_value(b.abs2()) == 0.0)
    throw OnExcludedLocus("transition: v1 = 0 has no chart0 image");
  const CScalar<S> u0 = CScalar<S>(S(1)) / b, v0 = a * b;
  return Vec4T<S>(u0.re, u0.im, v0.re, v0.im);
}

template <class S>
Mat4T<S> transition_jacobian(ChartId from, const Vec4T<S>& p) {
  const CScalar<S> a = first_complex(p), b = second_complex(p);
  if (from == ChartId::zero)
    return real_of_complex_linear<S>(b, a, -(CScalar<S>(S(1)) / (a * a)), CScalar<S>(S(0)));
  return real_of_complex_linear<S>(CScalar<S>(S(0)), -(CScalar<S>(S(1)) / (b * b)), b, a);
}

/// Pulled-back squared distance to the blown-up point: |u|^2 + |v|^2, i.e.
/// |v0|^2 (1+|u0|^2) in chart0 and |u1|^2 (1+|v1|^2) in chart1.
template <class S>
S blowup_radius2(ChartId chart, const Vec4T<S>& p) {
  const S a2 = first_complex(p).abs2(), b2 = second_complex(p).abs2();
  return chart == ChartId::zero ? b2 * (S(1) + a2) : a2 * (S(1) + b2);
}

/// The lifted Poisson structure: Re(u0 du0 ^ dv0) in chart0, the constant
/// Re(du1 ^ dv1) in chart1; it drops rank along the proper transform {u0 = 0}.
template <class S>
Mat4T<S> lift_poisson(ChartId chart, const Vec4T<S>& p) {
  if (chart == ChartId::zero) return real_holomorphic_bivector<S>(first_complex(p));
  return real_holomorphic_bivector<S>(CScalar<S>(S(1)));
}

// ---------------------------------------------------------------------------
// The singular potential f = c (f0 + f_eps)
// ---------------------------------------------------------------------------

struct PotentialSpec {
  double c = 0.2;           // overall constant of the potential
  double r0 = 0.2;          // U_E = {r < r0}: eps vanishes here
  double r1 = 0.45;         // K = {r <= r1}: 1 - eps is supported here
  double r2 = 0.7;          // flow guard V = {r < r2}

  void validate() const {
    if (!(c > 0.0)) throw ConfigInvalid("potential.c", "must be positive");
    if (!(0.0 < r0 && r0 < r1 && r1 < r2))
      throw ConfigInvalid("potential.radii", "need 0 < r0 < r1 < r2");
  }
};

/// C-infinity step: 0 for s <= 0, 1 for s >= 1, e^{-1/s}/(e^{-1/s}+e^{-1/(1-s)})
/// between.
template <class S>
S bump_profile(const S& s) {
  const double sv = leaf_value(s);
  if (sv <= 0.0) return S(0);
  if (sv >= 1.0) return S(1);
  const S ea = exp(S(-1) / s);
  const S eb = exp(S(-1) / (S(1) - s));
  return ea / (ea + eb);
}

/// Fubini-Study potential of the divisor: log(|u0|^2/(1+|u0|^2)) in chart0,
/// log(1/(1+|v1|^2)) in chart1. Singular along the proper transform {u0 = 0}.
template <class S>
S fs_potential(ChartId chart, const Vec4T<S>& p) {
  if (chart == ChartId::zero) {
    const S rho = first_complex(p).abs2();
    if (leaf_value(rho) == 0.0)
      throw SingularPotential("fs_potential: chart0 is singular along u0 = 0");
    return log(rho) - log(S(1) + rho);
  }
  return -log(S(1) + second_complex(p).abs2());
}

/// (eps, f_eps) with f_eps = eps log(r^2), extended by zero where eps = 0
/// (in particular across E).
template <class S>
std::pair<S, S> bump_and_feps(const PotentialSpec& spec, ChartId chart, const Vec4T<S>& p) {
  const S r2v = blowup_radius2(chart, p);
  if (leaf_value(r2v) <= spec.r0 * spec.r0) return {S(0), S(0)};
  const S r = sqrt(r2v);
  const S eps = bump_profile(S((r - S(spec.r0)) / S(spec.r1 - spec.r0)));
  if (leaf_value(eps) == 0.0) return {S(0), S(0)};
  return {eps, S(eps * log(r2v))};
}

/// The smooth part of f = c (f0 + f_eps): the pluriharmonic log|u0|^2 term of
/// f0 is removed analytically (the charts are holomorphic for the lifted I+,
/// so it contributes nothing to dd^c away from its divisor and the remainder
/// extends smoothly across it).
template <class S>
S potential_smooth_part(const PotentialSpec& spec, ChartId chart, const Vec4T<S>& p) {
  const S rho = chart == ChartId::zero ? first_complex(p).abs2() : second_complex(p).abs2();
  return S(spec.c) * (bump_and_feps(spec, chart, p).second - log(S(1) + rho));
}

namespace detail {

template <class Fn, class S>
Vec4T<S> expr_gradient(Fn&& f, const Vec4T<S>& p) {
  if constexpr (scalar_depth_v<S> < kMaxDualDepth) {
    using D = Dual<S, 4>;
    Vec4T<D> pd;
    for (int i = 0; i < 4; ++i) pd[i] = D::seeded(p[i], i);
    const D r = f(pd);
    Vec4T<S> g;
    for (int i = 0; i < 4; ++i) g[i] = r.grad[i];
    return g;
  } else {
    throw std::logic_error("expr_gradient: derivative depth exceeded");
  }
}

template <class Fn, class S>
Mat4T<S> expr_hessian(Fn&& f, const Vec4T<S>& p) {
  if constexpr (scalar_depth_v<S> + 2 <= kMaxDualDepth) {
    using D = Dual<S, 4>;
    using DD = Dual<D, 4>;
    Vec4T<DD> pd;
    for (int i = 0; i < 4; ++i) pd[i] = DD::seeded(D::seeded(p[i], i), i);
    const DD r = f(pd);
    Mat4T<S> h;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) h(i, j) = r.grad[i].grad[j];
    return h;
  } else {
    throw std::logic_error("expr_hessian: derivative depth exceeded");
  }
}

}  // namespace detail

/// Hamiltonian vector field of f = c (f0 + f_eps): the f0 part by the chart
/// closed forms (smooth across the potential's divisor), the f_eps part by
/// contraction of the lifted Poisson structure with its differential.
template <class S>
Vec4T<S> smooth_hamiltonian_field(const PotentialSpec& spec, ChartId chart, const Vec4T<S>& p) {
  Vec4T<S> x = Vec4T<S>::Zero();
  if (chart == ChartId::zero) {
    const S rho = first_complex(p).abs2();
    x[2] = S(1) / (S(2) * (S(1) + rho));  // Q(df0) = Re(dv0)/(1+|u0|^2)
  } else {
    const S sig = second_complex(p).abs2();
    const S s = S(1) / (S(2) * (S(1) + sig));
    x[0] = p[2] * s;
    x[1] = -p[3] * s;
  }
  if (leaf_value(blowup_radius2(chart, p)) > spec.r0 * spec.r0 * 0.96) {
    auto feps = [&spec, chart]<class T>(const Vec4T<T>& q) -> T {
      return bump_and_feps(spec, chart, q).second;
    };
    x += lift_poisson(chart, p) * detail::expr_gradient(feps, p);
  }
  return Vec4T<S>(S(spec.c) * x);
}

/// dd^c f computed from the smooth part: the closed-form divisor area form
/// c omega_E = -c dd^c log(1+|u0|^2) inside U_E, exactly zero outside K, and
/// nested-dual differentiation of the smooth part in between.
template <class S>
Mat4T<S> smooth_ddcf(const PotentialSpec& spec, ChartId chart, const Vec4T<S>& p) {
  const double rr = leaf_value(blowup_radius2(chart, p));
  if (rr > spec.r1 * spec.r1) return Mat4T<S>::Zero();
  if (rr < spec.r0 * spec.r0) {
    const S rho = chart == ChartId::zero ? first_complex(p).abs2() : second_complex(p).abs2();
    const S coef = S(-4.0 * spec.c * kDcSign) / ((S(1) + rho) * (S(1) + rho));
    Mat4T<S> w = Mat4T<S>::Zero();
    const int o = chart == ChartId::zero ? 0 : 2;
    w(o, o + 1) = coef;
    w(o + 1, o) = -coef;
    return w;
  }
  auto fsm = [&spec, chart]<class T>(const Vec4T<T>& q) -> T {
    return potential_smooth_part(spec, chart, q);
  };
  const Mat4T<S> h = detail::expr_hessian(fsm, p);
  const Mat4T<S> i0 = standard_complex_structure<S>();
  return Mat4T<S>(S(kDcSign) * (i0.transpose() * h - h * i0));
}

/// Raw potential f = c (f0 + f_eps) as a field (chart0 carries the {u0 = 0}
/// excluded locus); used for the direct dd^c cross-check of smooth_ddcf.
inline ScalarField raw_potential_field(const PotentialSpec& spec, const BlowupAtlas& atlas,
                                       ChartId chart) {
  ChartDomain dom = atlas.chart(chart);
  if (chart == ChartId::zero) dom.excluded_loci.push_back({0});
  return make_field<ScalarKind>(dom, [spec, chart]<class S>(const Vec4T<S>& p) -> S {
    return S(spec.c) * (fs_potential(chart, p) + bump_and_feps(spec, chart, p).second);
  });
}

/// The (1,0) part of the deformation vector field on the annulus r1 < r < r2,
/// as complex coefficients of (d/du0, d/dv0) (resp. the chart1 frame).
inline std::array<std::complex<double>, 2> deformation_class_Z(const PotentialSpec& spec,
                                                               ChartId chart, const Vec4& p) {
  const double r = std::sqrt(blowup_radius2(chart, p));
  if (!(r > spec.r1 && r < spec.r2))
    throw OutOfDomain("deformation_class_Z: point is not on the annulus r1 < r < r2");
  if (chart == ChartId::zero && second_complex(p).abs2() == 0.0)
    throw OnExcludedLocus("deformation_class_Z: v0 = 0");
  const Vec4 x = smooth_hamiltonian_field(spec, chart, p);
  return {std::complex<double>(2 * x[0], 2 * x[1]), std::complex<double>(2 * x[2], 2 * x[3])};
}

// ---------------------------------------------------------------------------
// Lifting the local model
// ---------------------------------------------------------------------------

/// Per-chart fields of the blown-up structure. g~ and b~ are the symmetric
/// and antisymmetric parts of pi^*(g + b) (they coincide with pi^*g, pi^*b);
/// I+~ is the standard chart structure, I-~ = I+~ - Q~ omega~ extends the
/// conjugated base structure smoothly across E.
struct LiftedChartFields {
  BivecField Q;
  EndoField I_plus, I_minus;
  TwoFormField omega, b;
  SymField g;
};

struct BlownUpStructure {
  BlowupAtlas atlas;
  BiHermitianModel base;
  PotentialSpec potential;
  LiftedChartFields lifted0, lifted1;

  const LiftedChartFields& lifted(ChartId c) const {
    return c == ChartId::zero ? lifted0 : lifted1;
  }
};

namespace detail {

inline LiftedChartFields lift_chart(const BiHermitianModel& model, const ChartDomain& dom,
                                    ChartId chart) {
  LiftedChartFields f;
  f.Q = make_field<BivecKind>(dom, [chart]<class S>(const Vec4T<S>& p) {
    return lift_poisson<S>(chart, p);
  });
  f.I_plus = constant_field<EndoKind>(dom, standard_complex_structure());
  auto pull2 = [chart](const TwoFormField& base_form, const ChartDomain& d) {
    return make_field<TwoFormKind>(d, [chart, base_form]<class S>(const Vec4T<S>& p) {
      const Mat4T<S> dpi = blowdown_jacobian(chart, p);
      return Mat4T<S>(dpi.transpose() * base_form(Vec4T<S>(blowdown(chart, p))) * dpi);
    });
  };
  f.omega = pull2(model.omega, dom);
  f.b = pull2(model.b, dom);
  f.g = make_field<SymKind>(dom, [chart, base_g = model.g]<class S>(const Vec4T<S>& p) {
    const Mat4T<S> dpi = blowdown_jacobian(chart, p);
    return Mat4T<S>(dpi.transpose() * base_g(Vec4T<S>(blowdown(chart, p))) * dpi);
  });
  f.I_minus = make_field<EndoKind>(dom, [q = f.Q, w = f.omega]<class S>(const Vec4T<S>& p) {
    return Mat4T<S>(standard_complex_structure<S>() - q(p) * w(p));
  });
  return f;
}

}  // namespace detail

/// Pulls the local model back to the blow-up atlas.
inline BlownUpStructure lift_model(const BiHermitianModel& model, PotentialSpec spec,
                                   BlowupAtlas atlas = BlowupAtlas::standard()) {
  spec.validate();
  // every chart point with r < r2 blows down into the ball of radius r2
  for (int i = 0; i < 4; ++i) {
    if (model.domain.box[i].lo > -spec.r2 || model.domain.box[i].hi < spec.r2)
      throw DomainMismatch("lift_model: model domain does not contain the blow-down image");
  }
  BlownUpStructure st;
  st.atlas = atlas;
  st.base = model;
  st.potential = spec;
  st.lifted0 = detail::lift_chart(model, atlas.chart0, ChartId::zero);
  st.lifted1 = detail::lift_chart(model, atlas.chart1, ChartId::one);
  return st;
}

}  // namespace gkblow
