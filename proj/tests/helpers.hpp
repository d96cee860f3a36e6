#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "patchfit/coons.hpp"
#include "patchfit/rng.hpp"
#include "patchfit/template.hpp"

namespace testutil {

using namespace patchfit;

// Flat axis-aligned square patch [0,w] x [0,h] at height z, straight edges
// with interior control points at thirds.
inline CoonsPatch flat_rect_patch(double w, double h, double z = 0.0) {
  std::array<Vec3, 4> corners = {Vec3{0, 0, z}, Vec3{w, 0, z}, Vec3{w, h, z}, Vec3{0, h, z}};
  CoonsPatch p;
  for (int leg = 0; leg < 4; ++leg) {
    Vec3 a = corners[leg], b = corners[(leg + 1) % 4];
    p.points[3 * leg] = a;
    p.points[3 * leg + 1] = a + (1.0 / 3.0) * (b - a);
    p.points[3 * leg + 2] = a + (2.0 / 3.0) * (b - a);
  }
  return p;
}

inline CoonsPatch flat_unit_patch(double z = 0.0) { return flat_rect_patch(1.0, 1.0, z); }

inline CoonsPatch random_patch(Rng& rng, double lo = 0.0, double hi = 1.0) {
  CoonsPatch p;
  for (auto& q : p.points) q = rng.uniform_vec3(lo, hi);
  return p;
}

// Walk reversal: same boundary set, opposite orientation.
inline CoonsPatch reversed_patch(const CoonsPatch& p) {
  CoonsPatch r;
  for (int i = 0; i < 12; ++i) r.points[i] = p.points[(12 - i) % 12];
  return r;
}

inline CoonsPatch transformed_patch(const CoonsPatch& p, const RigidMotion& m) {
  CoonsPatch r;
  for (int i = 0; i < 12; ++i) r.points[i] = m.apply(p.points[i]);
  return r;
}

// de Casteljau evaluation, the independent oracle for eval_bezier.
inline Vec3 de_casteljau(const BezierCurve& c, double g) {
  Vec3 q[4] = {c.p1, c.p2, c.p3, c.p4};
  for (int level = 3; level > 0; --level)
    for (int i = 0; i < level; ++i) q[i] = (1.0 - g) * q[i] + g * q[i + 1];
  return q[0];
}

// Two-patch open template sharing one boundary curve; 20 control points.
// Rest pose: two flat unit squares side by side in the z=0 plane.
inline Template two_patch_template() {
  Template t;
  t.name = "two-patch";
  auto add = [&](Vec3 p) {
    t.points.push_back(p);
    return static_cast<int>(t.points.size()) - 1;
  };
  // Patch A over [0,1]^2, walk (0,0)->(1,0)->(1,1)->(0,1).
  std::array<Vec3, 4> ca = {Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{1, 1, 0}, Vec3{0, 1, 0}};
  PatchTopology a;
  std::array<int, 4> corner_a;
  for (int i = 0; i < 4; ++i) corner_a[i] = add(ca[i]);
  for (int leg = 0; leg < 4; ++leg) {
    Vec3 p0 = ca[leg], p1 = ca[(leg + 1) % 4];
    a.walk[3 * leg] = corner_a[leg];
    a.walk[3 * leg + 1] = add(p0 + (1.0 / 3.0) * (p1 - p0));
    a.walk[3 * leg + 2] = add(p0 + (2.0 / 3.0) * (p1 - p0));
  }
  t.patches.push_back(a);
  // Patch B over [1,2]x[0,1] shares A's curve 1 (indices corner_a[1] .. corner_a[2])
  // traversed in the opposite direction.
  std::array<Vec3, 4> cb = {Vec3{1, 0, 0}, Vec3{2, 0, 0}, Vec3{2, 1, 0}, Vec3{1, 1, 0}};
  PatchTopology b;
  int shared_mid1 = a.walk[4], shared_mid2 = a.walk[5];
  std::array<int, 4> corner_b = {corner_a[1], add(cb[1]), add(cb[2]), corner_a[2]};
  for (int leg = 0; leg < 4; ++leg) {
    b.walk[3 * leg] = corner_b[leg];
    if (leg == 3) {  // shared curve, reversed
      b.walk[10] = shared_mid2;
      b.walk[11] = shared_mid1;
    } else {
      Vec3 p0 = cb[leg], p1 = cb[(leg + 1) % 4];
      b.walk[3 * leg + 1] = add(p0 + (1.0 / 3.0) * (p1 - p0));
      b.walk[3 * leg + 2] = add(p0 + (2.0 / 3.0) * (p1 - p0));
    }
  }
  t.patches.push_back(b);
  t.scale_hint = norm(Vec3{2, 1, 0});
  return t;
}

// Edge -> face-count audit; watertight iff every edge borders exactly 2 faces.
inline bool edge_manifold(const TriangleMesh& m, int* bad_edges = nullptr) {
  std::map<std::pair<int, int>, int> count;
  for (const auto& f : m.faces)
    for (int k = 0; k < 3; ++k) {
      int u = f[k], v = f[(k + 1) % 3];
      count[{std::min(u, v), std::max(u, v)}]++;
    }
  int bad = 0;
  for (const auto& [e, c] : count)
    if (c != 2) ++bad;
  if (bad_edges) *bad_edges = bad;
  return bad == 0;
}

inline std::string temp_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("patchfit_test_" + tag);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace testutil
