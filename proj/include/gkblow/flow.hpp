#pragma once

#include <cmath>
#include <optional>

#include "gkblow/calculus.hpp"
#include "gkblow/field.hpp"

namespace gkblow {

struct FlowConfig {
  double step = 1e-2;
  int max_steps = 100000;
  ChartDomain domain_guard;

  void validate() const {
    if (!(step > 0.0)) throw ConfigInvalid("flow.step", "must be positive");
    if (max_steps <= 0) throw ConfigInvalid("flow.max_steps", "must be positive");
  }
};

struct FlowResult {
  Vec4 endpoint;
  Mat4 jac;
  Form2 Ft;
  int steps_taken = 0;
  double jac_det = 1.0;
};

/// X(p) = Q(p) df(p), the bivector contracted with the covector.
inline VectorField hamiltonian_field(const BivecField& Q, const OneFormField& df) {
  if (Q.domain().name != df.domain().name)
    throw DomainMismatch("hamiltonian_field: Q and df live on different chart domains");
  return make_field<VectorKind>(
      Q.domain(), [Q, df]<class S>(const Vec4T<S>& p) { return Vec4T<S>(Q(p) * df(p)); });
}

inline OneFormField differential_field(const ScalarField& f, const DerivConfig& cfg) {
  return make_field<OneFormKind>(
      f.domain(), [f, cfg]<class S>(const Vec4T<S>& p) { return gradient(f, p, cfg); });
}

template <class S>
struct JointState {
  Vec4T<S> x;
  Mat4T<S> J;
  Mat4T<S> F;
};

/// One classical RK4 step of the joint system (position, variational
/// equation, form quadrature); rhs maps a state to its derivative.
template <class S, class Rhs>
JointState<S> rk4_step(const JointState<S>& s, const S& h, Rhs&& rhs) {
  const JointState<S> k1 = rhs(s);
  const S half = h / S(2);
  const JointState<S> k2 = rhs({Vec4T<S>(s.x + half * k1.x), Mat4T<S>(s.J + half * k1.J),
                                Mat4T<S>(s.F + half * k1.F)});
  const JointState<S> k3 = rhs({Vec4T<S>(s.x + half * k2.x), Mat4T<S>(s.J + half * k2.J),
                                Mat4T<S>(s.F + half * k2.F)});
  const JointState<S> k4 =
      rhs({Vec4T<S>(s.x + h * k3.x), Mat4T<S>(s.J + h * k3.J), Mat4T<S>(s.F + h * k3.F)});
  const S w = h / S(6);
  return {Vec4T<S>(s.x + w * (k1.x + S(2) * k2.x + S(2) * k3.x + k4.x)),
          Mat4T<S>(s.J + w * (k1.J + S(2) * k2.J + S(2) * k3.J + k4.J)),
          Mat4T<S>(s.F + w * (k1.F + S(2) * k2.F + S(2) * k3.F + k4.F))};
}

template <class S>
Mat4T<S> vector_field_jacobian(const VectorField& X, const Vec4T<S>& x, const DerivConfig& cfg) {
  const auto jet = field_jet(X, x, cfg);
  Mat4T<S> dX;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) dX(k, i) = jet.d[i][k];
  return dX;
}

/// Integrates x' = X(x), J' = DX(x) J, F' = J^T beta(x) J from 0 to t as one
/// joint RK4 system; beta may be null (no quadrature). t may have either sign.
template <class S>
JointState<S> integrate_joint(const VectorField& X, const TwoFormField* beta, const Vec4T<S>& p,
                              double t, const FlowConfig& cfg, const DerivConfig& dcfg,
                              int* steps_out = nullptr) {
  JointState<S> s{p, Mat4T<S>::Identity(), Mat4T<S>::Zero()};
  if (t == 0.0) {
    if (steps_out) *steps_out = 0;
    return s;
  }
  const int n = static_cast<int>(std::ceil(std::abs(t) / cfg.step - 1e-12));
  if (n > cfg.max_steps) throw MaxSteps("integrate_joint: step budget exceeded");
  const S h = S(t / n);
  if (!cfg.domain_guard.in_box(leaf_point(p))) throw LeftDomain(0);
  auto rhs = [&](const JointState<S>& st) -> JointState<S> {
    JointState<S> d;
    d.x = X(st.x);
    d.J = vector_field_jacobian(X, st.x, dcfg) * st.J;
    d.F = beta ? Mat4T<S>(st.J.transpose() * (*beta)(st.x) * st.J) : Mat4T<S>::Zero();
    return d;
  };
  for (int i = 0; i < n; ++i) {
    s = rk4_step(s, h, rhs);
    if (!cfg.domain_guard.in_box(leaf_point(s.x))) throw LeftDomain(i + 1);
  }
  if (steps_out) *steps_out = n;
  return s;
}

/// Time-t flow map of X with its Jacobian at the start point.
inline FlowResult flow_map(const VectorField& X, const Vec4& p, double t, const FlowConfig& cfg,
                           const DerivConfig& dcfg = {}) {
  FlowResult out;
  auto s = integrate_joint<double>(X, nullptr, p, t, cfg, dcfg, &out.steps_taken);
  out.endpoint = s.x;
  out.jac = s.J;
  out.Ft = Form2::Zero();
  out.jac_det = s.J.determinant();
  return out;
}

/// F_t(p): the time quadrature of the flow pullbacks of dd^c f.
inline Form2 accumulate_F(const TwoFormField& ddcf, const VectorField& X, const Vec4& p, double t,
                          const FlowConfig& cfg, const DerivConfig& dcfg = {}) {
  return integrate_joint<double>(X, &ddcf, p, t, cfg, dcfg).F;
}

}  // namespace gkblow
