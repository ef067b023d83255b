#pragma once

#include "gkblow/blowup.hpp"

namespace gkblow {

template <class S>
struct BlowupFlowState {
  ChartId chart;
  Vec4T<S> x;
  Mat4T<S> J;  // D(flow) from the start point, start-chart coordinates below
  Mat4T<S> F;  // accumulated quadrature, start-chart coordinates at the start point
};

namespace detail {

template <class S>
Mat4T<S> hamiltonian_jacobian(const PotentialSpec& spec, ChartId chart, const Vec4T<S>& p) {
  if constexpr (scalar_depth_v<S> < kMaxDualDepth) {
    using D = Dual<S, 4>;
    Vec4T<D> pd;
    for (int i = 0; i < 4; ++i) pd[i] = D::seeded(p[i], i);
    const Vec4T<D> x = smooth_hamiltonian_field(spec, chart, pd);
    Mat4T<S> dx;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) dx(k, i) = x[k].grad[i];
    return dx;
  } else {
    throw std::logic_error("hamiltonian_jacobian: derivative depth exceeded");
  }
}

}  // namespace detail

/// Integrates the deformation flow from (chart, p): position, variational
/// equation and the quadrature of the flow pullbacks of smooth dd^c f, in one
/// joint RK4 system. The trajectory switches chart when |u0| (resp. |v1|)
/// crosses atlas.switch_threshold; position and Jacobian are transformed by
/// the transition Jacobian while the accumulated form stays expressed at the
/// start point (J^T beta J is invariant under the switch). Guard: r < r2 and
/// the chart boxes.
template <class S>
BlowupFlowState<S> integrate_deformation(const BlowupAtlas& atlas, const PotentialSpec& spec,
                                         const Vec4T<S>& p, ChartId chart, double t,
                                         const FlowConfig& cfg) {
  BlowupFlowState<S> s{chart, p, Mat4T<S>::Identity(), Mat4T<S>::Zero()};
  if (t == 0.0) return s;
  const int n = static_cast<int>(std::ceil(std::abs(t) / cfg.step - 1e-12));
  if (n > cfg.max_steps) throw MaxSteps("integrate_deformation: step budget exceeded");
  const S h = S(t / n);

  auto guard = [&](const BlowupFlowState<S>& st, int step) {
    const Vec4 leaf = leaf_point(st.x);
    if (leaf_value(blowup_radius2(st.chart, st.x)) >= spec.r2 * spec.r2 ||
        !atlas.chart(st.chart).in_box(leaf))
      throw LeftDomain(step, "deformation flow left the guard region r < r2");
  };
  guard(s, 0);

  const double thr2 = atlas.switch_threshold * atlas.switch_threshold;
  for (int i = 0; i < n; ++i) {
    const ChartId c = s.chart;
    auto rhs = [&](const JointState<S>& st) -> JointState<S> {
      return {smooth_hamiltonian_field(spec, c, st.x),
              Mat4T<S>(detail::hamiltonian_jacobian(spec, c, st.x) * st.J),
              Mat4T<S>(st.J.transpose() * smooth_ddcf(spec, c, st.x) * st.J)};
    };
    const JointState<S> next = rk4_step<S>({s.x, s.J, s.F}, h, rhs);
    s.x = next.x;
    s.J = next.J;
    s.F = next.F;

    const double affine2 = s.chart == ChartId::zero ? leaf_value(first_complex(s.x).abs2())
                                                    : leaf_value(second_complex(s.x).abs2());
    if (affine2 > thr2) {
      const ChartId other = s.chart == ChartId::zero ? ChartId::one : ChartId::zero;
      s.J = transition_jacobian(s.chart, s.x) * s.J;
      s.x = transition(s.chart, s.x);
      s.chart = other;
    }
    guard(s, i + 1);
  }
  return s;
}

struct DeformedPoint {
  Form2 Ft;          // deformation form at p, chart coordinates of p
  Mat4 I_plus_t;     // I+~ + Q~ F_t
  Sym4 g_t;          // -1/2 (omega~ + F_t)((I-~ + I+^t).,.)
  Form2 b_t;         // the companion 2-form (calibrated sign)
  Sym4 g_prime_t;    // -1/2 F_t((I+~ + I+^t).,.)
  Sym4 g_lift;       // g~ at p (pullback)
  Form2 omega_lift;  // omega~ at p
};

/// Everything Eq.-(three)-shaped at one point, from a single flow solve.
inline DeformedPoint deformed_point(const BlownUpStructure& st, ChartId chart, const Vec4& p,
                                    double t, const FlowConfig& cfg) {
  const auto& lf = st.lifted(chart);
  DeformedPoint out;
  out.Ft = integrate_deformation<double>(st.atlas, st.potential, p, chart, t, cfg).F;
  const Mat4 q = lf.Q(p);
  const Mat4 ip = lf.I_plus(p), im = lf.I_minus(p);
  out.I_plus_t = ip + q * out.Ft;
  out.omega_lift = lf.omega(p);
  out.g_lift = lf.g(p);
  const Form2 w = out.omega_lift + out.Ft;
  out.g_t = -0.5 * form_app<double>(w, Mat4(im + out.I_plus_t));
  out.b_t = kBSign * -0.5 * form_app<double>(w, Mat4(out.I_plus_t - im));
  out.g_prime_t = -0.5 * form_app<double>(out.Ft, Mat4(ip + out.I_plus_t));
  return out;
}

/// (F_t, I+^t) of the deformation at p.
inline std::pair<Form2, Mat4> deform(const BlownUpStructure& st, ChartId chart, const Vec4& p,
                                     double t, const FlowConfig& cfg) {
  const auto d = deformed_point(st, chart, p, t, cfg);
  return {d.Ft, d.I_plus_t};
}

/// (g~_t, b~_t) of the composed structure at p.
inline std::pair<Sym4, Form2> assemble_gt(const BlownUpStructure& st, ChartId chart, const Vec4& p,
                                          double t, const FlowConfig& cfg) {
  const auto d = deformed_point(st, chart, p, t, cfg);
  return {d.g_t, d.b_t};
}

/// Field bundle of the deformed structure on one chart (evaluable at dual
/// points, so Nijenhuis tensors and the generalized Kaehler residual of the
/// deformed metric can be differentiated through the flow).
struct DeformedChartFields {
  TwoFormField Ft;
  EndoField I_plus_t;
  SymField g_t;
  TwoFormField b_t;
};

inline DeformedChartFields deformed_fields(const BlownUpStructure& st, ChartId chart, double t,
                                           const FlowConfig& cfg) {
  const auto& lf = st.lifted(chart);
  const ChartDomain dom = st.atlas.chart(chart);
  DeformedChartFields out;
  out.Ft = make_field<TwoFormKind>(
      dom, [atlas = st.atlas, spec = st.potential, chart, t, cfg]<class S>(const Vec4T<S>& p) {
        return integrate_deformation<S>(atlas, spec, p, chart, t, cfg).F;
      });
  out.I_plus_t = make_field<EndoKind>(dom, [q = lf.Q, f = out.Ft]<class S>(const Vec4T<S>& p) {
    return Mat4T<S>(standard_complex_structure<S>() + q(p) * f(p));
  });
  out.g_t = make_field<SymKind>(
      dom, [q = lf.Q, w0 = lf.omega, im = lf.I_minus, f = out.Ft]<class S>(const Vec4T<S>& p) {
        const Mat4T<S> ft = f(p);
        const Mat4T<S> ipt = standard_complex_structure<S>() + q(p) * ft;
        return Mat4T<S>(S(-0.5) * form_app<S>(Mat4T<S>(w0(p) + ft), Mat4T<S>(im(p) + ipt)));
      });
  out.b_t = make_field<TwoFormKind>(
      dom, [q = lf.Q, w0 = lf.omega, im = lf.I_minus, f = out.Ft]<class S>(const Vec4T<S>& p) {
        const Mat4T<S> ft = f(p);
        const Mat4T<S> ipt = standard_complex_structure<S>() + q(p) * ft;
        return Mat4T<S>(S(kBSign) * S(-0.5) *
                        form_app<S>(Mat4T<S>(w0(p) + ft), Mat4T<S>(ipt - im(p))));
      });
  return out;
}

}  // namespace gkblow
