#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "patchfit/rng.hpp"
#include "patchfit/vec3.hpp"

namespace patchfit {

// Indexed triangle soup. Faces store vertex indices; per-face area and
// normal are derived on demand.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
};

struct SurfaceSample {
  Vec3 position;
  Vec3 normal;
};

inline Vec3 triangle_cross(const Vec3& a, const Vec3& b, const Vec3& c) {
  return cross(b - a, c - a);
}

inline double face_area(const TriangleMesh& m, int f) {
  const auto& t = m.faces[f];
  return 0.5 * norm(triangle_cross(m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]));
}

inline Vec3 face_normal(const TriangleMesh& m, int f) {
  const auto& t = m.faces[f];
  Vec3 n = triangle_cross(m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]);
  double l = norm(n);
  return l > 0.0 ? n / l : Vec3{0, 0, 0};
}

inline Box3 bounds(const TriangleMesh& m) {
  Box3 b;
  for (const auto& v : m.vertices) b.expand(v);
  return b;
}

inline double mesh_area(const TriangleMesh& m) {
  double a = 0.0;
  for (int f = 0; f < static_cast<int>(m.faces.size()); ++f) a += face_area(m, f);
  return a;
}

// Scale-relative threshold below which a face counts as degenerate.
inline double degenerate_face_epsilon(const TriangleMesh& m) {
  double d = bounds(m).diagonal();
  return 1e-12 * d * d;
}

namespace detail {

inline int parse_obj_vertex_ref(const std::string& tok, int vertex_count, int line_no) {
  size_t slash = tok.find('/');
  std::string head = slash == std::string::npos ? tok : tok.substr(0, slash);
  int idx = 0;
  try {
    idx = std::stoi(head);
  } catch (const std::exception&) {
    throw std::runtime_error("obj: bad face index '" + tok + "' at line " + std::to_string(line_no));
  }
  if (idx == 0 || idx > vertex_count || idx < -vertex_count)
    throw std::runtime_error("obj: face index out of range at line " + std::to_string(line_no));
  return idx > 0 ? idx - 1 : vertex_count + idx;
}

}  // namespace detail

// ASCII OBJ reader, v/vn/f subset. Polygons are fan-triangulated.
inline TriangleMesh load_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("obj: cannot open " + path);
  TriangleMesh mesh;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag)) continue;
    if (tag == "v") {
      Vec3 p;
      if (!(ss >> p.x >> p.y >> p.z))
        throw std::runtime_error("obj: malformed vertex at line " + std::to_string(line_no));
      if (!isfinite(p))
        throw std::runtime_error("obj: non-finite vertex at line " + std::to_string(line_no));
      mesh.vertices.push_back(p);
    } else if (tag == "f") {
      std::vector<int> poly;
      std::string tok;
      while (ss >> tok)
        poly.push_back(detail::parse_obj_vertex_ref(tok, static_cast<int>(mesh.vertices.size()), line_no));
      if (poly.size() < 3)
        throw std::runtime_error("obj: face with <3 vertices at line " + std::to_string(line_no));
      for (size_t k = 2; k < poly.size(); ++k)
        mesh.faces.push_back({poly[0], poly[static_cast<int>(k) - 1], poly[static_cast<int>(k)]});
    }
    // vn/vt/comments and other records are skipped.
  }
  return mesh;
}

inline void save_obj(const TriangleMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("obj: cannot write " + path);
  char buf[128];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "v %.9g %.9g %.9g\n", v.x, v.y, v.z);
    out << buf;
  }
  for (const auto& f : mesh.faces) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  if (!out) throw std::runtime_error("obj: write failed for " + path);
}

// Area-weighted surface sampling. Faces are picked proportionally to area,
// positions are uniform within the face via the square-root barycentric
// warp, normals are the (flat) face normals.
inline std::vector<SurfaceSample> sample_surface(const TriangleMesh& mesh, int n, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_surface: n must be >= 1");
  double eps = degenerate_face_epsilon(mesh);
  std::vector<double> cum;
  std::vector<int> face_of;
  cum.reserve(mesh.faces.size());
  double total = 0.0;
  for (int f = 0; f < static_cast<int>(mesh.faces.size()); ++f) {
    double a = face_area(mesh, f);
    if (a <= eps) continue;
    total += a;
    cum.push_back(total);
    face_of.push_back(f);
  }
  if (cum.empty() || total <= 0.0)
    throw std::runtime_error("sample_surface: all faces degenerate");

  Rng rng(seed);
  std::vector<SurfaceSample> out(n);
  for (int i = 0; i < n; ++i) {
    double r = rng.uniform() * total;
    int lo = 0, hi = static_cast<int>(cum.size()) - 1;
    while (lo < hi) {
      int mid = (lo + hi) / 2;
      if (cum[mid] <= r) lo = mid + 1; else hi = mid;
    }
    int f = face_of[lo];
    const auto& t = mesh.faces[f];
    double su = std::sqrt(rng.uniform());
    double u2 = rng.uniform();
    double b0 = 1.0 - su, b1 = su * (1.0 - u2), b2 = su * u2;
    out[i].position = b0 * mesh.vertices[t[0]] + b1 * mesh.vertices[t[1]] + b2 * mesh.vertices[t[2]];
    out[i].normal = face_normal(mesh, f);
  }
  return out;
}

}  // namespace patchfit
