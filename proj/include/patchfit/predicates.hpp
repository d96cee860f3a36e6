#pragma once

#include <gmpxx.h>

#include <cmath>

#include "patchfit/vec3.hpp"

namespace patchfit {

// Sign-exact geometric orientation predicates: a floating-point evaluation
// with a forward error bound decides the common case, and an exact rational
// evaluation (doubles convert to mpq_class losslessly) settles the rest.

namespace detail {

inline constexpr double kEps = 1.1102230246251565e-16;  // 2^-53
inline constexpr double kO3dBound = (7.0 + 56.0 * kEps) * kEps;
inline constexpr double kO2dBound = (3.0 + 16.0 * kEps) * kEps;

inline int sign_of(const mpq_class& v) { return sgn(v); }

inline int orient3d_exact(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  mpq_class adx(b.x), ady(b.y), adz(b.z);
  adx -= mpq_class(a.x); ady -= mpq_class(a.y); adz -= mpq_class(a.z);
  mpq_class bdx(c.x), bdy(c.y), bdz(c.z);
  bdx -= mpq_class(a.x); bdy -= mpq_class(a.y); bdz -= mpq_class(a.z);
  mpq_class cdx(d.x), cdy(d.y), cdz(d.z);
  cdx -= mpq_class(a.x); cdy -= mpq_class(a.y); cdz -= mpq_class(a.z);
  mpq_class det = adx * (bdy * cdz - bdz * cdy) - ady * (bdx * cdz - bdz * cdx) +
                  adz * (bdx * cdy - bdy * cdx);
  return sign_of(det);
}

}  // namespace detail

// Sign of det[b-a, c-a, d-a]: positive when d lies on the positive side of
// the plane through a,b,c (right-hand rule).
inline int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  double adx = b.x - a.x, ady = b.y - a.y, adz = b.z - a.z;
  double bdx = c.x - a.x, bdy = c.y - a.y, bdz = c.z - a.z;
  double cdx = d.x - a.x, cdy = d.y - a.y, cdz = d.z - a.z;

  double bdxcdy = bdx * cdy, bdycdx = bdy * cdx;
  double bdxcdz = bdx * cdz, bdzcdx = bdz * cdx;
  double bdycdz = bdy * cdz, bdzcdy = bdz * cdy;

  double det = adx * (bdycdz - bdzcdy) - ady * (bdxcdz - bdzcdx) + adz * (bdxcdy - bdycdx);
  double permanent = (std::abs(bdycdz) + std::abs(bdzcdy)) * std::abs(adx) +
                     (std::abs(bdxcdz) + std::abs(bdzcdx)) * std::abs(ady) +
                     (std::abs(bdxcdy) + std::abs(bdycdx)) * std::abs(adz);
  double errbound = detail::kO3dBound * permanent;
  if (det > errbound) return 1;
  if (det < -errbound) return -1;
  return detail::orient3d_exact(a, b, c, d);
}

// Sign of the 2D cross product (b-a) x (c-a) for points projected to the
// (u,v) coordinate pairs supplied by the caller.
inline int orient2d(double ax, double ay, double bx, double by, double cx, double cy) {
  double detleft = (ax - cx) * (by - cy);
  double detright = (ay - cy) * (bx - cx);
  double det = detleft - detright;
  double detsum = std::abs(detleft) + std::abs(detright);
  double errbound = detail::kO2dBound * detsum;
  if (det > errbound) return 1;
  if (det < -errbound) return -1;
  mpq_class dl = (mpq_class(ax) - mpq_class(cx)) * (mpq_class(by) - mpq_class(cy));
  mpq_class dr = (mpq_class(ay) - mpq_class(cy)) * (mpq_class(bx) - mpq_class(cx));
  return detail::sign_of(mpq_class(dl - dr));
}

}  // namespace patchfit
