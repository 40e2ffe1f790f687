#pragma once

// Seeded random inputs for the property tests.

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "csas/collection.hpp"

namespace gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double normal(double sigma = 1.0) { return std::normal_distribution<double>(0.0, sigma)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  std::mt19937_64& engine() { return engine_; }

  Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, double sigma = 1.0) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal(sigma);
    return m;
  }

  // Coordinates on a coarse integer grid, so that many pairwise distances tie exactly.
  Eigen::MatrixXd grid_points(Eigen::Index rows, Eigen::Index cols, int extent = 3) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = integer(-extent, extent);
    return m;
  }

  Eigen::MatrixXcd complex_matrix(Eigen::Index rows, Eigen::Index cols, double sigma = 1.0) {
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = csas::Complex(normal(sigma), normal(sigma));
    return m;
  }

  // Row counts that divide 360000, so the collection has an exact millidegree step.
  int angle_count() {
    static constexpr int kCounts[] = {4, 5, 8, 10, 12, 16, 18, 20, 24, 30, 36, 40, 45, 60, 72, 90, 120, 180, 360};
    return kCounts[integer(0, static_cast<int>(std::size(kCounts)) - 1)];
  }

  csas::Collection collection(int n_angles, int n_range, double sigma = 1.0) {
    return csas::Collection(complex_matrix(n_angles, n_range, sigma));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gen
