#pragma once

#include <cstdint>
#include <random>

#include "patchfit/vec3.hpp"

namespace patchfit {

// splitmix64 finalizer; used to derive independent stream seeds.
inline uint64_t mix_seed(uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
  return mix_seed(seed ^ mix_seed(stream));
}

// Deterministic RNG. mt19937_64 output is fixed by the standard and the
// uniform mappings below avoid the implementation-defined std distributions,
// so sequences are reproducible across compilers.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  // Uniform in [0,1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Uniform in {0, ..., n-1}.
  int uniform_int(int n) {
    uint64_t bound = static_cast<uint64_t>(n);
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t r;
    do { r = gen_(); } while (r >= limit);
    return static_cast<int>(r % bound);
  }

  bool bernoulli(double p) { return uniform() < p; }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1, u2;
    do { u1 = uniform(); } while (u1 <= 0.0);
    u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Vec3 uniform_vec3(double a, double b) { return {uniform(a, b), uniform(a, b), uniform(a, b)}; }

  // Uniform random rotation (Shoemake quaternion method).
  RigidMotion random_rotation() {
    double u1 = uniform(), u2 = uniform(), u3 = uniform();
    double two_pi = 2.0 * 3.14159265358979323846;
    double qx = std::sqrt(1.0 - u1) * std::sin(two_pi * u2);
    double qy = std::sqrt(1.0 - u1) * std::cos(two_pi * u2);
    double qz = std::sqrt(u1) * std::sin(two_pi * u3);
    double qw = std::sqrt(u1) * std::cos(two_pi * u3);
    RigidMotion m;
    m.rows[0] = {1 - 2 * (qy * qy + qz * qz), 2 * (qx * qy - qz * qw), 2 * (qx * qz + qy * qw)};
    m.rows[1] = {2 * (qx * qy + qz * qw), 1 - 2 * (qx * qx + qz * qz), 2 * (qy * qz - qx * qw)};
    m.rows[2] = {2 * (qx * qz - qy * qw), 2 * (qy * qz + qx * qw), 1 - 2 * (qx * qx + qy * qy)};
    return m;
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace patchfit
