#pragma once

#include <string>
#include <vector>

#include "gkblow/algebra.hpp"
#include "gkblow/flow.hpp"

namespace gkblow {

// Sign carried by the stored b relative to the transport-derived one; the
// generalized Kaehler condition +d^c_+ w_+ = db = -d^c_- w_- picks this sign
// out once the d^c convention is fixed (see calculus.hpp). Verified at model
// build and recorded in report provenance.
inline constexpr double kBSign = -1.0;

/// The bi-Hermitian quadruple (g, b, I+, I-) with its generating form and
/// Poisson structure over a box in C^2. I+ is the standard structure of the
/// (u,v) coordinates; I- = I+ + Q F_t0 is transported along the Hamiltonian
/// flow of the plurisubharmonic potential |u|^2 + |v|^2.
struct BiHermitianModel {
  ChartDomain domain;
  FlowConfig flow;
  DerivConfig deriv;
  double t0 = 0.0;  // signed flow time actually used

  ScalarField potential;
  BivecField Q;
  VectorField X;
  TwoFormField ddc_potential;
  TwoFormField F0;  // F_{t0}
  EndoField I_plus, I_minus;
  TwoFormField omega, b;
  SymField g;

  struct Provenance {
    int t0_sign = 0;
    double b_sign = kBSign;
    double dc_sign = kDcSign;
    std::string deriv_mode;
  } provenance;
};

inline ScalarField squared_radius_potential(const ChartDomain& dom) {
  return make_field<ScalarKind>(dom, []<class S>(const Vec4T<S>& p) -> S {
    return p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
  });
}

/// Re(u du ^ dv) as a bivector field on a chart of C^2.
inline BivecField model_poisson_field(const ChartDomain& dom) {
  return make_field<BivecKind>(dom, []<class S>(const Vec4T<S>& p) {
    return real_holomorphic_bivector<S>(first_complex(p));
  });
}

namespace detail {

inline std::vector<Vec4> model_sample_points(const ChartDomain& dom) {
  std::vector<Vec4> pts;
  const double s = 0.85;
  const double hw0 = 0.5 * dom.box[0].width();
  const std::array<Vec4, 10> base = {
      Vec4(0.5, 0.1, 0.2, -0.3),   Vec4(-0.6, 0.4, -0.1, 0.5), Vec4(0.9, -0.7, 0.6, 0.2),
      Vec4(0.05, 0.02, -0.9, 0.8), Vec4(-0.3, -0.3, 0.3, 0.3), Vec4(1.0, 0.9, -0.8, -0.7),
      Vec4(0.0, 0.0, 0.0, 0.0),    Vec4(0.0, 0.0, 0.7, -0.5),  Vec4(0.0, 0.0, -0.4, 0.9),
      Vec4(0.2, 0.8, 0.0, 0.0)};
  for (const auto& b : base) pts.push_back(s * (hw0 / 1.2) * b);
  return pts;
}

struct ModelFields {
  TwoFormField F0;
  EndoField I_minus;
  TwoFormField omega, b;
  SymField g;
};

inline ModelFields assemble_model_fields(const ChartDomain& dom, const BivecField& Q,
                                         const VectorField& X, const TwoFormField& ddcf,
                                         double t0, const FlowConfig& flow,
                                         const DerivConfig& deriv) {
  ModelFields mf;
  mf.F0 = make_field<TwoFormKind>(dom, [X, ddcf, t0, flow, deriv]<class S>(const Vec4T<S>& p) {
    return integrate_joint<S>(X, &ddcf, p, t0, flow, deriv).F;
  });
  const TwoFormField F0 = mf.F0;
  mf.I_minus = make_field<EndoKind>(dom, [Q, F0]<class S>(const Vec4T<S>& p) {
    return Mat4T<S>(standard_complex_structure<S>() + Q(p) * F0(p));
  });
  mf.omega = make_field<TwoFormKind>(
      dom, [F0]<class S>(const Vec4T<S>& p) { return Mat4T<S>(-F0(p)); });
  // derived_structures applied to the morphism omega : I- -> I+
  mf.g = make_field<SymKind>(dom, [Q, F0]<class S>(const Vec4T<S>& p) {
    const Mat4T<S> I0 = standard_complex_structure<S>();
    const Mat4T<S> F = F0(p);
    const Mat4T<S> Im = I0 + Q(p) * F;
    return Mat4T<S>(S(-0.5) * form_app<S>(Mat4T<S>(-F), Mat4T<S>(Im + I0)));
  });
  mf.b = make_field<TwoFormKind>(dom, [Q, F0]<class S>(const Vec4T<S>& p) {
    const Mat4T<S> I0 = standard_complex_structure<S>();
    const Mat4T<S> F = F0(p);
    const Mat4T<S> Im = I0 + Q(p) * F;
    return Mat4T<S>(S(kBSign) * S(-0.5) * form_app<S>(Mat4T<S>(-F), Mat4T<S>(I0 - Im)));
  });
  return mf;
}

}  // namespace detail

/// Builds the flow-generated local model on `domain`. |t0| is the flow time;
/// the sign is chosen (both are tried) so that g is positive-definite.
inline BiHermitianModel make_local_model(double t0, ChartDomain domain, FlowConfig flow,
                                         DerivConfig deriv = {}) {
  if (t0 == 0.0) throw ConfigInvalid("model.t0", "must be nonzero");
  flow.validate();
  deriv.validate();
  if (flow.domain_guard.box[0].width() <= 0.0)
    throw ConfigInvalid("flow.domain_guard", "guard domain is empty");

  BiHermitianModel m;
  m.domain = domain;
  m.flow = flow;
  m.deriv = deriv;
  m.potential = squared_radius_potential(flow.domain_guard);
  m.Q = model_poisson_field(flow.domain_guard);
  m.X = hamiltonian_field(m.Q, differential_field(m.potential, deriv));
  m.ddc_potential = ddc_field(m.potential, constant_field<EndoKind>(flow.domain_guard,
                                                                    standard_complex_structure()),
                              deriv);
  m.I_plus = constant_field<EndoKind>(domain, standard_complex_structure());

  const auto samples = detail::model_sample_points(domain);
  double chosen = 0.0;
  for (double cand : {-std::abs(t0), std::abs(t0)}) {
    auto mf = detail::assemble_model_fields(domain, m.Q, m.X, m.ddc_potential, cand, flow, deriv);
    bool positive = true;
    for (const auto& p : samples) {
      if (min_eigenvalue(mf.g(p)) <= 0.0) {
        positive = false;
        break;
      }
    }
    if (positive) {
      chosen = cand;
      m.F0 = mf.F0;
      m.I_minus = mf.I_minus;
      m.omega = mf.omega;
      m.g = mf.g;
      m.b = mf.b;
      break;
    }
  }
  if (chosen == 0.0)
    throw NotPositive("make_local_model: neither sign of t0 yields a positive-definite g");
  m.t0 = chosen;
  m.provenance.t0_sign = chosen > 0 ? 1 : -1;
  m.provenance.deriv_mode = deriv.mode == DerivMode::dual ? "dual" : "fd";

  // invariant spot checks
  for (const auto& p : samples) {
    const Mat4 Im = m.I_minus(p);
    if (max_abs(Mat4(Im * Im + Mat4::Identity())) > 1e-8)
      throw Error("make_local_model: I- does not square to -Id");
    if (max_abs(brane_residual<double>(m.omega(p), Im, m.Q(p))) > 1e-6)
      throw Error("make_local_model: omega is not a morphism of (I-, Q)");
  }
  return m;
}

}  // namespace gkblow
