#include <catch2/catch_amalgamated.hpp>
#include <fstream>

#include "helpers.hpp"
#include "patchfit/mesh.hpp"

using namespace patchfit;
using namespace testutil;
using Catch::Approx;

namespace {

std::string write_file(const std::string& name, const std::string& body) {
  auto path = temp_dir("mesh") + "/" + name;
  std::ofstream f(path);
  f << body;
  return path;
}

}  // namespace

TEST_CASE("obj loads two-triangle unit square", "[mesh]") {
  auto path = write_file("square.obj",
                         "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\n"
                         "f 1 2 3\nf 1 3 4\n");
  TriangleMesh m = load_obj(path);
  CHECK(m.vertices.size() == 4);
  CHECK(m.faces.size() == 2);
  CHECK(mesh_area(m) == Approx(1.0));
}

TEST_CASE("obj fan-triangulates polygons and accepts v//vn", "[mesh]") {
  auto path = write_file("quad.obj",
                         "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nvn 0 0 1\n"
                         "f 1//1 2//1 3//1 4//1\n");
  TriangleMesh m = load_obj(path);
  CHECK(m.faces.size() == 2);
}

TEST_CASE("obj rejects bad input", "[mesh]") {
  CHECK_THROWS(load_obj(temp_dir("mesh") + "/does_not_exist.obj"));
  CHECK_THROWS(load_obj(write_file("zero.obj", "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 0 1 2\n")));
  CHECK_THROWS(load_obj(write_file("range.obj", "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 9\n")));
  CHECK_THROWS(load_obj(write_file("badv.obj", "v 0 0\nf 1 2 3\n")));
  CHECK_THROWS(load_obj(write_file("nan.obj", "v nan 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n")));
}

TEST_CASE("obj round trip preserves coordinates to serialized precision", "[mesh]") {
  Rng rng(3);
  TriangleMesh m;
  for (int i = 0; i < 30; ++i) m.vertices.push_back(rng.uniform_vec3(-5, 5));
  for (int i = 0; i < 10; ++i) m.faces.push_back({3 * i, 3 * i + 1, 3 * i + 2});
  auto path = temp_dir("mesh") + "/rt.obj";
  save_obj(m, path);
  TriangleMesh back = load_obj(path);
  REQUIRE(back.vertices.size() == m.vertices.size());
  REQUIRE(back.faces == m.faces);
  for (size_t i = 0; i < m.vertices.size(); ++i)
    CHECK(norm(back.vertices[i] - m.vertices[i]) < 1e-8 * std::max(1.0, norm(m.vertices[i])));
}

TEST_CASE("surface sampling on the unit square", "[mesh]") {
  auto path = write_file("square2.obj",
                         "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3\nf 1 3 4\n");
  TriangleMesh m = load_obj(path);
  auto samples = sample_surface(m, 10000, 99);
  for (const auto& s : samples) {
    CHECK((s.position.x >= 0 && s.position.x <= 1));
    CHECK((s.position.y >= 0 && s.position.y <= 1));
    CHECK(s.position.z == 0.0);
    CHECK(norm(s.normal - Vec3{0, 0, 1}) < 1e-9);
  }
  auto again = sample_surface(m, 10000, 99);
  for (size_t i = 0; i < samples.size(); ++i) {
    REQUIRE(again[i].position == samples[i].position);
    REQUIRE(again[i].normal == samples[i].normal);
  }
}

TEST_CASE("sampling is proportional to area", "[mesh]") {
  // Two coplanar triangles with areas 1 and 3.
  TriangleMesh m;
  m.vertices = {{0, 0, 0}, {2, 0, 0}, {0, 1, 0}, {10, 0, 0}, {13, 0, 0}, {10, 2, 0}};
  m.faces = {{0, 1, 2}, {3, 4, 5}};
  auto samples = sample_surface(m, 100000, 7);
  int big = 0;
  for (const auto& s : samples)
    if (s.position.x >= 5) ++big;
  CHECK(std::abs(big / 100000.0 - 0.75) < 0.01);
}

TEST_CASE("face hit counts pass a chi-square test", "[mesh]") {
  // 10 strips of unequal area in one plane.
  TriangleMesh m;
  double x = 0.0;
  for (int i = 0; i < 10; ++i) {
    double w = 0.25 * (i + 1);
    int b = static_cast<int>(m.vertices.size());
    m.vertices.push_back({x, 0, 0});
    m.vertices.push_back({x + w, 0, 0});
    m.vertices.push_back({x, 1, 0});
    m.faces.push_back({b, b + 1, b + 2});
    x += w + 1.0;
  }
  std::vector<double> areas(10);
  double total = 0.0;
  for (int f = 0; f < 10; ++f) { areas[f] = face_area(m, f); total += areas[f]; }
  const int n = 100000;
  auto samples = sample_surface(m, n, 1234);
  std::vector<int> hits(10, 0);
  for (const auto& s : samples) {
    // Strips are separated by 1 unit gaps; recover the face from x.
    double sx = s.position.x;
    double acc = 0.0;
    for (int f = 0; f < 10; ++f) {
      double w = 0.25 * (f + 1);
      if (sx >= acc && sx <= acc + w) { hits[f]++; break; }
      acc += w + 1.0;
    }
  }
  double chi2 = 0.0;
  for (int f = 0; f < 10; ++f) {
    double expected = n * areas[f] / total;
    chi2 += (hits[f] - expected) * (hits[f] - expected) / expected;
  }
  CHECK(chi2 < 27.877);  // chi-square critical value, df=9, p=0.001
}

TEST_CASE("degenerate faces are skipped or rejected", "[mesh]") {
  TriangleMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {5, 5, 5}, {5, 5, 5}, {5, 5, 5}};
  m.faces = {{0, 1, 2}, {3, 4, 5}};
  auto samples = sample_surface(m, 1000, 5);
  for (const auto& s : samples) CHECK(s.position.x <= 1.0);

  TriangleMesh bad;
  bad.vertices = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  bad.faces = {{0, 1, 2}};
  CHECK_THROWS(sample_surface(bad, 10, 1));
  CHECK_THROWS_AS(sample_surface(m, 0, 1), std::invalid_argument);
}
