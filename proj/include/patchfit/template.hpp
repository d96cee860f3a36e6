#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "patchfit/coons.hpp"
#include "patchfit/vec3.hpp"

namespace patchfit {

// One patch as 12 indices into a shared control-point set, listed as a
// single directed walk around the boundary (see CoonsPatch for the curve
// convention). Curve i of the patch is walk[3i..3i+3 mod 12].
struct PatchTopology {
  std::array<int, 12> walk;

  std::array<int, 4> curve(int i) const {
    return {walk[3 * i], walk[(3 * i + 1) % 12], walk[(3 * i + 2) % 12], walk[(3 * i + 3) % 12]};
  }
};

// Deformable template: rest-pose control points plus patch topology.
// Watertightness is structural: shared curves share point indices, so no
// control-point values can open a seam.
struct Template {
  std::string name;
  std::vector<Vec3> points;
  std::vector<PatchTopology> patches;
  double scale_hint = 0.0;
};

// A template's topology instantiated over (possibly optimized) coordinates.
struct PatchCollection {
  std::vector<Vec3> points;
  std::vector<PatchTopology> patches;
};

inline CoonsPatch patch_geometry(const std::vector<Vec3>& points, const PatchTopology& topo) {
  CoonsPatch p;
  for (int k = 0; k < 12; ++k) p.points[k] = points[topo.walk[k]];
  return p;
}

inline CoonsPatch patch_geometry(const PatchCollection& pc, int i) {
  return patch_geometry(pc.points, pc.patches[i]);
}

struct ValidationReport {
  std::vector<std::string> errors;    // structural defects
  std::vector<std::string> warnings;  // open boundary curves
  bool valid_closed() const { return errors.empty() && warnings.empty(); }
  bool usable() const { return errors.empty(); }
};

namespace detail {

using CurveKey = std::array<int, 4>;

inline CurveKey canonical_curve(const std::array<int, 4>& c, bool* reversed) {
  CurveKey r{c[3], c[2], c[1], c[0]};
  CurveKey f{c[0], c[1], c[2], c[3]};
  *reversed = r < f;
  return *reversed ? r : f;
}

}  // namespace detail

// Checks index ranges, per-patch index distinctness, curve sharing counts,
// and orientation of shared curves. Open curves are reported as warnings;
// an empty report means a valid closed template.
inline ValidationReport validate_topology(const Template& t) {
  ValidationReport rep;
  int n = static_cast<int>(t.points.size());
  struct Use {
    int patch;
    bool reversed;
  };
  std::map<detail::CurveKey, std::vector<Use>> uses;
  for (int pi = 0; pi < static_cast<int>(t.patches.size()); ++pi) {
    const auto& topo = t.patches[pi];
    std::array<int, 12> sorted = topo.walk;
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < 12; ++k) {
      if (topo.walk[k] < 0 || topo.walk[k] >= n) {
        rep.errors.push_back("patch " + std::to_string(pi) + ": point index " +
                             std::to_string(topo.walk[k]) + " out of range");
      }
      if (k > 0 && sorted[k] == sorted[k - 1]) {
        rep.errors.push_back("patch " + std::to_string(pi) + ": duplicate point index " +
                             std::to_string(sorted[k]));
      }
    }
    for (int c = 0; c < 4; ++c) {
      bool reversed = false;
      auto key = detail::canonical_curve(topo.curve(c), &reversed);
      uses[key].push_back({pi, reversed});
    }
  }
  for (const auto& [key, u] : uses) {
    std::string curve_str = std::to_string(key[0]) + "-" + std::to_string(key[1]) + "-" +
                            std::to_string(key[2]) + "-" + std::to_string(key[3]);
    if (u.size() > 2) {
      rep.errors.push_back("curve " + curve_str + " shared by " + std::to_string(u.size()) +
                           " patches");
    } else if (u.size() == 2) {
      if (u[0].reversed == u[1].reversed)
        rep.errors.push_back("curve " + curve_str + " traversed in the same direction by patches " +
                             std::to_string(u[0].patch) + " and " + std::to_string(u[1].patch));
    } else {
      rep.warnings.push_back("open curve " + curve_str + " (patch " + std::to_string(u[0].patch) +
                             ")");
    }
  }
  return rep;
}

inline PatchCollection instantiate(const Template& t, std::vector<Vec3> points) {
  if (points.size() != t.points.size())
    throw std::invalid_argument("instantiate: control-point count mismatch");
  return PatchCollection{std::move(points), t.patches};
}

// Axis-aligned cube of the given side, centered at the origin: 6 patches,
// 12 shared boundary curves, 32 control points (8 corners + 2 interior
// points per edge, placed at thirds).
inline Template build_cube_template(double side) {
  if (!(side > 0.0)) throw std::invalid_argument("build_cube_template: side must be > 0");
  double h = side / 2.0;
  Template t;
  t.name = "cube";
  t.scale_hint = side * std::sqrt(3.0);
  t.points.resize(32);
  for (int c = 0; c < 8; ++c)
    t.points[c] = {(c & 1) ? h : -h, (c & 2) ? h : -h, (c & 4) ? h : -h};

  // Canonical edge list: corner pairs differing in one bit, low index first.
  std::vector<std::array<int, 2>> edges;
  std::map<std::array<int, 2>, int> edge_id;
  for (int c = 0; c < 8; ++c)
    for (int bit : {1, 2, 4}) {
      if (c & bit) continue;
      edge_id[{c, c | bit}] = static_cast<int>(edges.size());
      edges.push_back({c, c | bit});
    }
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    Vec3 a = t.points[edges[e][0]], b = t.points[edges[e][1]];
    t.points[8 + 2 * e] = a + (1.0 / 3.0) * (b - a);
    t.points[8 + 2 * e + 1] = a + (2.0 / 3.0) * (b - a);
  }

  auto corner_index = [&](const Vec3& p) {
    return (p.x > 0 ? 1 : 0) | (p.y > 0 ? 2 : 0) | (p.z > 0 ? 4 : 0);
  };
  // Interior point indices for the directed leg a -> b.
  auto leg_points = [&](int a, int b) -> std::array<int, 2> {
    bool fwd = a < b;
    int e = edge_id.at({std::min(a, b), std::max(a, b)});
    return fwd ? std::array<int, 2>{8 + 2 * e, 8 + 2 * e + 1}
               : std::array<int, 2>{8 + 2 * e + 1, 8 + 2 * e};
  };

  // Per face: outward normal n and tangents u, v with u x v = n, so each
  // patch's boundary walk is counterclockwise viewed from outside.
  const std::array<std::array<Vec3, 3>, 6> frames = {{
      {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}},    // +x: u=y, v=z
      {{{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}}},   // -x: u=z, v=y
      {{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}},    // +y: u=z, v=x
      {{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}},   // -y: u=x, v=z
      {{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}},    // +z: u=x, v=y
      {{{0, 0, -1}, {0, 1, 0}, {1, 0, 0}}},   // -z: u=y, v=x
  }};
  for (const auto& f : frames) {
    Vec3 nrm = f[0], u = f[1], v = f[2];
    int A = corner_index(h * nrm - h * u - h * v);
    int B = corner_index(h * nrm + h * u - h * v);
    int C = corner_index(h * nrm + h * u + h * v);
    int D = corner_index(h * nrm - h * u + h * v);
    PatchTopology topo;
    std::array<int, 4> corners{A, B, C, D};
    for (int leg = 0; leg < 4; ++leg) {
      int a = corners[leg], b = corners[(leg + 1) % 4];
      auto mids = leg_points(a, b);
      topo.walk[3 * leg] = a;
      topo.walk[3 * leg + 1] = mids[0];
      topo.walk[3 * leg + 2] = mids[1];
    }
    t.patches.push_back(topo);
  }
  return t;
}

namespace detail {

inline void write_json_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace detail

// Template file: JSON with name, scale_hint, points ([x,y,z] triples,
// 17 significant digits), and patches (12-index boundary walks).
inline void save_template(const Template& t, const std::string& path) {
  std::string out = "{\n  \"name\": " + nlohmann::json(t.name).dump() + ",\n  \"scale_hint\": ";
  detail::write_json_double(out, t.scale_hint);
  out += ",\n  \"points\": [\n";
  for (size_t i = 0; i < t.points.size(); ++i) {
    out += "    [";
    detail::write_json_double(out, t.points[i].x);
    out += ", ";
    detail::write_json_double(out, t.points[i].y);
    out += ", ";
    detail::write_json_double(out, t.points[i].z);
    out += i + 1 < t.points.size() ? "],\n" : "]\n";
  }
  out += "  ],\n  \"patches\": [\n";
  for (size_t p = 0; p < t.patches.size(); ++p) {
    out += "    [";
    for (int k = 0; k < 12; ++k) {
      out += std::to_string(t.patches[p].walk[k]);
      if (k < 11) out += ", ";
    }
    out += p + 1 < t.patches.size() ? "],\n" : "]\n";
  }
  out += "  ]\n}\n";
  std::ofstream f(path);
  if (!f) throw std::runtime_error("template: cannot write " + path);
  f << out;
  if (!f) throw std::runtime_error("template: write failed for " + path);
}

inline Template load_template(const std::string& path, ValidationReport* report = nullptr) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("template: cannot open " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("template: parse error in " + path + ": " + e.what());
  }
  Template t;
  try {
    t.name = j.at("name").get<std::string>();
    t.scale_hint = j.at("scale_hint").get<double>();
    for (const auto& p : j.at("points")) {
      if (!p.is_array() || p.size() != 3) throw std::runtime_error("point is not an [x,y,z] triple");
      t.points.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
    }
    for (const auto& p : j.at("patches")) {
      if (!p.is_array() || p.size() != 12)
        throw std::runtime_error("patch does not have exactly 12 indices");
      PatchTopology topo;
      for (int k = 0; k < 12; ++k) topo.walk[k] = p[k].get<int>();
      t.patches.push_back(topo);
    }
  } catch (const std::exception& e) {
    throw std::runtime_error("template: schema error in " + path + ": " + e.what());
  }
  auto rep = validate_topology(t);
  if (!rep.usable()) {
    std::string msg = "template: invalid topology in " + path;
    for (const auto& e : rep.errors) msg += "\n  " + e;
    throw std::runtime_error(msg);
  }
  if (report) *report = rep;
  return t;
}

// Tessellates every patch on a uniform n-grid and welds seam vertices by
// index: grid points on a shared curve map to one global vertex, so the
// output is watertight for any closed template and any control points.
inline TriangleMesh tessellate_collection(const PatchCollection& pc, int n) {
  if (n < 1) throw std::invalid_argument("tessellate_collection: n must be >= 1");
  TriangleMesh mesh;
  // Key: (kind, a,b,c,d, pos). Corners key on the control-point index;
  // curve-interior points key on the canonical curve tuple and grid offset.
  std::map<std::array<int, 6>, int> global_id;
  std::vector<int> grid(static_cast<size_t>(n + 1) * (n + 1));

  for (const auto& topo : pc.patches) {
    CoonsPatch patch = patch_geometry(pc.points, topo);
    auto vertex_key = [&](int i, int j) -> std::array<int, 6> {
      bool i0 = i == 0, i1 = i == n, j0 = j == 0, j1 = j == n;
      if (j0 && i0) return {0, topo.walk[0], 0, 0, 0, 0};
      if (j0 && i1) return {0, topo.walk[3], 0, 0, 0, 0};
      if (j1 && i1) return {0, topo.walk[6], 0, 0, 0, 0};
      if (j1 && i0) return {0, topo.walk[9], 0, 0, 0, 0};
      int curve = -1, pos = -1;
      if (j0) { curve = 0; pos = i; }
      else if (i1) { curve = 1; pos = j; }
      else if (j1) { curve = 2; pos = n - i; }
      else if (i0) { curve = 3; pos = n - j; }
      if (curve < 0) return {2, -1, -1, -1, -1, -1};  // interior, caller handles
      bool reversed = false;
      auto key = detail::canonical_curve(topo.curve(curve), &reversed);
      if (reversed) pos = n - pos;
      return {1, key[0], key[1], key[2], key[3], pos};
    };
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i) {
        Vec3 p = eval_coons(patch, static_cast<double>(i) / n, static_cast<double>(j) / n);
        int id;
        auto key = vertex_key(i, j);
        if (key[0] == 2) {
          id = static_cast<int>(mesh.vertices.size());
          mesh.vertices.push_back(p);
        } else {
          auto it = global_id.find(key);
          if (it == global_id.end()) {
            id = static_cast<int>(mesh.vertices.size());
            mesh.vertices.push_back(p);
            global_id.emplace(key, id);
          } else {
            id = it->second;
          }
        }
        grid[static_cast<size_t>(j) * (n + 1) + i] = id;
      }
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        int a = grid[static_cast<size_t>(j) * (n + 1) + i];
        int b = grid[static_cast<size_t>(j) * (n + 1) + i + 1];
        int c = grid[static_cast<size_t>(j + 1) * (n + 1) + i + 1];
        int d = grid[static_cast<size_t>(j + 1) * (n + 1) + i];
        mesh.faces.push_back({a, b, c});
        mesh.faces.push_back({a, c, d});
      }
  }
  return mesh;
}

}  // namespace patchfit
