#pragma once

#include <array>
#include <stdexcept>

#include "patchfit/vec3.hpp"

namespace patchfit {

// Cubic Bernstein basis at g, and its derivative.
inline std::array<double, 4> bernstein3(double g) {
  double h = 1.0 - g;
  return {h * h * h, 3.0 * g * h * h, 3.0 * g * g * h, g * g * g};
}

inline std::array<double, 4> bernstein3_deriv(double g) {
  double h = 1.0 - g;
  return {-3.0 * h * h, 3.0 * h * (1.0 - 3.0 * g), 3.0 * g * (2.0 - 3.0 * g), 3.0 * g * g};
}

struct BezierCurve {
  Vec3 p1, p2, p3, p4;

  const Vec3& point(int i) const { return (&p1)[i]; }
};

inline void check_unit_param(double g, const char* what) {
  if (!(g >= 0.0 && g <= 1.0)) throw std::invalid_argument(std::string(what) + " outside [0,1]");
}

inline Vec3 eval_bezier(const BezierCurve& c, double g) {
  check_unit_param(g, "bezier parameter");
  auto b = bernstein3(g);
  return b[0] * c.p1 + b[1] * c.p2 + b[2] * c.p3 + b[3] * c.p4;
}

inline Vec3 eval_bezier_deriv(const BezierCurve& c, double g) {
  check_unit_param(g, "bezier parameter");
  auto b = bernstein3_deriv(g);
  return b[0] * c.p1 + b[1] * c.p2 + b[2] * c.p3 + b[3] * c.p4;
}

}  // namespace patchfit
