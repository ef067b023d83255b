#pragma once

#include <functional>
#include <memory>
#include <type_traits>

#include "gkblow/chart.hpp"
#include "gkblow/errors.hpp"
#include "gkblow/types.hpp"

namespace gkblow {

// Tensor kinds a field can take values in.
struct ScalarKind { template <class S> using rep = S; };
struct VectorKind { template <class S> using rep = Vec4T<S>; };
struct OneFormKind { template <class S> using rep = Vec4T<S>; };
struct EndoKind { template <class S> using rep = Mat4T<S>; };
struct TwoFormKind { template <class S> using rep = Mat4T<S>; };
struct BivecKind { template <class S> using rep = Mat4T<S>; };
struct SymKind { template <class S> using rep = Mat4T<S>; };

template <class Rep, class S>
constexpr int rep_components() {
  if constexpr (std::is_same_v<Rep, S>) return 1;
  else if constexpr (std::is_same_v<Rep, Vec4T<S>>) return 4;
  else return 16;
}
template <class Rep, class S>
S rep_component(const Rep& r, int i) {
  if constexpr (std::is_same_v<Rep, S>) return r;
  else if constexpr (std::is_same_v<Rep, Vec4T<S>>) return r[i];
  else return r(i / 4, i % 4);
}
template <class Rep, class S>
void rep_set_component(Rep& r, int i, const S& v) {
  if constexpr (std::is_same_v<Rep, S>) r = v;
  else if constexpr (std::is_same_v<Rep, Vec4T<S>>) r[i] = v;
  else r(i / 4, i % 4) = v;
}
template <class Rep, class S>
Rep rep_zero() {
  if constexpr (std::is_same_v<Rep, S>) return S(0);
  else return Rep::Zero();
}

enum class DerivMode { dual, fd };

struct DerivConfig {
  DerivMode mode = DerivMode::dual;
  double fd_step = 1e-5;
  bool richardson = false;

  void validate() const {
    if (!(fd_step >= 1e-9 && fd_step <= 1e-2))
      throw ConfigInvalid("derivative.fd_step", "must lie in [1e-9, 1e-2]");
  }
};

/// Differentiable map from a chart domain to a tensor kind. One definition
/// (a generic lambda) is instantiated at the scalar tower double, D1, D2, D3,
/// so the same field can be evaluated at dual points of any supported depth;
/// fields built from ODE flows are only ever differentiated once, closed-form
/// potentials up to three times. Values are immutable and evaluation is pure,
/// so a field may be shared freely across threads.
template <class K>
class SmoothField {
 public:
  template <class S>
  using rep = typename K::template rep<S>;

  SmoothField() = default;

  template <class F>
  SmoothField(ChartDomain dom, F fn) {
    auto impl = std::make_shared<Impl>();
    impl->dom = std::move(dom);
    impl->f0 = fn;
    impl->f1 = fn;
    impl->f2 = fn;
    impl->f3 = fn;
    impl_ = std::move(impl);
  }

  bool valid() const { return impl_ != nullptr; }
  const ChartDomain& domain() const { return impl_->dom; }

  template <class S>
  rep<S> operator()(const Vec4T<S>& p) const {
    if constexpr (std::is_same_v<S, double>) return impl_->f0(p);
    else if constexpr (std::is_same_v<S, D1>) return impl_->f1(p);
    else if constexpr (std::is_same_v<S, D2>) return impl_->f2(p);
    else if constexpr (std::is_same_v<S, D3>) return impl_->f3(p);
    else static_assert(std::is_same_v<S, double>, "unsupported scalar depth");
  }

 private:
  struct Impl {
    ChartDomain dom;
    std::function<rep<double>(const Vec4T<double>&)> f0;
    std::function<rep<D1>(const Vec4T<D1>&)> f1;
    std::function<rep<D2>(const Vec4T<D2>&)> f2;
    std::function<rep<D3>(const Vec4T<D3>&)> f3;
  };
  std::shared_ptr<const Impl> impl_;
};

using ScalarField = SmoothField<ScalarKind>;
using VectorField = SmoothField<VectorKind>;
using OneFormField = SmoothField<OneFormKind>;
using EndoField = SmoothField<EndoKind>;
using TwoFormField = SmoothField<TwoFormKind>;
using BivecField = SmoothField<BivecKind>;
using SymField = SmoothField<SymKind>;

template <class K, class F>
SmoothField<K> make_field(ChartDomain dom, F fn) {
  return SmoothField<K>(std::move(dom), std::move(fn));
}

template <class K>
SmoothField<K> constant_field(ChartDomain dom, const typename K::template rep<double>& value) {
  return SmoothField<K>(std::move(dom), [value]<class S>(const Vec4T<S>& /*p*/) ->
                        typename K::template rep<S> {
    if constexpr (std::is_same_v<typename K::template rep<S>, S>) return S(value);
    else return value.template cast<S>();
  });
}

}  // namespace gkblow
