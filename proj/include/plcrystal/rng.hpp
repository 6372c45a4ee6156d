#pragma once
// Seeded random streams: a (seed, stream) pair fixes the whole sequence.

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace plc {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : eng_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

  /// Uniform on [0, 1).
  double uniform() { return std::generate_canonical<double, 53>(eng_); }
  /// Uniform on (0, 1].
  double uniform_pos() { return 1.0 - uniform(); }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double normal() { return normal_(eng_); }

  Eigen::VectorXd normal_vec(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  Eigen::VectorXd unit_vec(int n) {
    Eigen::VectorXd v;
    do {
      v = normal_vec(n);
    } while (v.norm() < 1e-12);
    return v / v.norm();
  }

  int index(int n) { return std::uniform_int_distribution<int>(0, n - 1)(eng_); }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace plc
