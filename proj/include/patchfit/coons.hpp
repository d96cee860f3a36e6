#pragma once

#include <array>
#include <stdexcept>
#include <utility>

#include "patchfit/bezier.hpp"
#include "patchfit/mesh.hpp"
#include "patchfit/vec3.hpp"

namespace patchfit {

// Area elements at or below this are treated as degenerate for normal
// computation (model units squared per unit parameter area).
inline constexpr double kDegenerateNormalEps = 1e-10;

// Bilinearly blended Coons patch over four cubic Bezier boundaries.
//
// The boundary is stored as a single directed walk of 12 control points
// q0..q11: curve i owns points (q[3i], q[3i+1], q[3i+2], q[3i+3 mod 12]),
// so consecutive curves share endpoints by index and the loop closes.
// Parameterization: P(s,0)=c1(s), P(1,t)=c2(t), P(s,1)=c3(1-s),
// P(0,t)=c4(1-t); corners P(0,0)=q0, P(1,0)=q3, P(1,1)=q6, P(0,1)=q9.
struct CoonsPatch {
  std::array<Vec3, 12> points;

  BezierCurve boundary(int i) const {
    return {points[3 * i], points[3 * i + 1], points[3 * i + 2], points[(3 * i + 3) % 12]};
  }
};

// P(s,t) is linear in the control points: P = sum_k w_k(s,t) q_k. The basis
// weights and their parameter derivatives below carry all of the geometry;
// every downstream gradient is a chain rule through them.
struct CoonsBasis {
  std::array<double, 12> w{}, dws{}, dwt{};
};

inline CoonsBasis coons_basis(double s, double t) {
  check_unit_param(s, "coons parameter s");
  check_unit_param(t, "coons parameter t");
  CoonsBasis b;
  auto bs = bernstein3(s), bt = bernstein3(t);
  auto brs = bernstein3(1.0 - s), brt = bernstein3(1.0 - t);
  auto dbs = bernstein3_deriv(s), dbt = bernstein3_deriv(t);
  auto dbrs = bernstein3_deriv(1.0 - s), dbrt = bernstein3_deriv(1.0 - t);
  double u = 1.0 - s, v = 1.0 - t;
  for (int j = 0; j < 4; ++j) {
    int k1 = j, k2 = (3 + j) % 12, k3 = (6 + j) % 12, k4 = (9 + j) % 12;
    // (1-t) c1(s) + s c2(t) + t c3(1-s) + (1-s) c4(1-t)
    b.w[k1] += v * bs[j];
    b.w[k2] += s * bt[j];
    b.w[k3] += t * brs[j];
    b.w[k4] += u * brt[j];
    b.dws[k1] += v * dbs[j];
    b.dws[k2] += bt[j];
    b.dws[k3] += -t * dbrs[j];
    b.dws[k4] += -brt[j];
    b.dwt[k1] += -bs[j];
    b.dwt[k2] += s * dbt[j];
    b.dwt[k3] += brs[j];
    b.dwt[k4] += -u * dbrt[j];
  }
  // Bilinear corner correction: -(q0 u v + q3 s v + q6 s t + q9 u t).
  b.w[0] -= u * v;
  b.w[3] -= s * v;
  b.w[6] -= s * t;
  b.w[9] -= u * t;
  b.dws[0] += v;
  b.dws[3] -= v;
  b.dws[6] -= t;
  b.dws[9] += t;
  b.dwt[0] += u;
  b.dwt[3] += s;
  b.dwt[6] -= s;
  b.dwt[9] -= u;
  return b;
}

inline Vec3 eval_coons(const CoonsPatch& p, double s, double t) {
  auto b = coons_basis(s, t);
  Vec3 r{};
  for (int k = 0; k < 12; ++k) r += b.w[k] * p.points[k];
  return r;
}

// Exact closed-form partials (dP/ds, dP/dt).
inline std::pair<Vec3, Vec3> coons_partials(const CoonsPatch& p, double s, double t) {
  auto b = coons_basis(s, t);
  Vec3 ps{}, pt{};
  for (int k = 0; k < 12; ++k) {
    ps += b.dws[k] * p.points[k];
    pt += b.dwt[k] * p.points[k];
  }
  return {ps, pt};
}

// Surface area element |Ps x Pt| = sqrt(det(J^T J)) for the 3x2 Jacobian J.
inline double area_element(const CoonsPatch& p, double s, double t) {
  auto [ps, pt] = coons_partials(p, s, t);
  return norm(cross(ps, pt));
}

// Unit normal oriented by dP/ds x dP/dt. Degenerate points are a contract
// violation; loss code tests the area element itself and skips them.
inline Vec3 coons_normal(const CoonsPatch& p, double s, double t) {
  auto [ps, pt] = coons_partials(p, s, t);
  Vec3 n = cross(ps, pt);
  double l = norm(n);
  if (l <= kDegenerateNormalEps) throw std::domain_error("coons_normal: degenerate point");
  return n / l;
}

// Uniform-grid tessellation: (n+1)^2 vertices, 2n^2 triangles, winding
// consistent with coons_normal orientation.
inline TriangleMesh tessellate(const CoonsPatch& p, int n) {
  if (n < 1) throw std::invalid_argument("tessellate: n must be >= 1");
  TriangleMesh mesh;
  mesh.vertices.resize(static_cast<size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      mesh.vertices[static_cast<size_t>(j) * (n + 1) + i] =
          eval_coons(p, static_cast<double>(i) / n, static_cast<double>(j) / n);
  mesh.faces.reserve(static_cast<size_t>(2) * n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      int a = j * (n + 1) + i;
      int b = j * (n + 1) + i + 1;
      int c = (j + 1) * (n + 1) + i + 1;
      int d = (j + 1) * (n + 1) + i;
      mesh.faces.push_back({a, b, c});
      mesh.faces.push_back({a, c, d});
    }
  return mesh;
}

}  // namespace patchfit
