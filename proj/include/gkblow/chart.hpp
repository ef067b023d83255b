#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gkblow/errors.hpp"
#include "gkblow/types.hpp"

namespace gkblow {

struct Interval {
  double lo = 0.0, hi = 0.0;
  bool contains(double x, double margin = 0.0) const { return x >= lo + margin && x <= hi - margin; }
  double width() const { return hi - lo; }
};

/// Analytic subset {complex coordinate == 0} where evaluation is forbidden.
/// complex_coord 0 is (p0,p1), 1 is (p2,p3).
struct ExcludedLocus {
  int complex_coord = 0;
  double distance(const Vec4& p) const {
    const int k = 2 * complex_coord;
    return std::sqrt(p[k] * p[k] + p[k + 1] * p[k + 1]);
  }
};

struct ChartDomain {
  std::string name;
  std::array<Interval, 4> box{};
  std::vector<ExcludedLocus> excluded_loci;

  static ChartDomain centered(std::string name, double halfwidth) {
    ChartDomain d;
    d.name = std::move(name);
    for (auto& iv : d.box) iv = {-halfwidth, halfwidth};
    return d;
  }
  static ChartDomain box_of(std::string name, const std::array<Interval, 4>& b) {
    ChartDomain d;
    d.name = std::move(name);
    d.box = b;
    return d;
  }

  bool in_box(const Vec4& p, double margin = 0.0) const {
    for (int i = 0; i < 4; ++i)
      if (!box[i].contains(p[i], margin)) return false;
    return true;
  }

  double locus_distance(const Vec4& p) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& l : excluded_loci) d = std::min(d, l.distance(p));
    return d;
  }

  /// Throws if p is unusable as an evaluation/stencil center.
  void require_interior(const Vec4& p, double stencil_margin = 0.0,
                        double locus_margin = 0.0) const {
    if (!in_box(p, stencil_margin))
      throw OutOfDomain("point outside chart '" + name + "' (or too close to its boundary)");
    if (!excluded_loci.empty() && locus_distance(p) <= locus_margin)
      throw SingularLocus("point on an excluded locus of chart '" + name + "'");
  }
};

}  // namespace gkblow
