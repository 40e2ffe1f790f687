#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "csas/angle.hpp"

namespace csas {

using Complex = std::complex<double>;
using EchoVector = Eigen::VectorXcd;

// Uniformly angle-sampled CSAS collection: row i holds the complex range profile at look
// angle i * step. Rows cover the full circle, so n_angles * step == 360.
class Collection {
 public:
  // Step is derived from the row count.
  explicit Collection(Eigen::MatrixXcd profiles);
  // Throws InvalidArgument unless rows() * step_deg == 360 to within 1e-9 degrees.
  Collection(double step_deg, Eigen::MatrixXcd profiles);

  double step() const { return step_; }
  Eigen::Index n_angles() const { return profiles_.rows(); }
  Eigen::Index n_range() const { return profiles_.cols(); }
  const Eigen::MatrixXcd& profiles() const { return profiles_; }

  LookAngle angle_at(Eigen::Index row) const { return LookAngle(static_cast<double>(row) * step_); }
  // Circular row index.
  Eigen::Index wrap(Eigen::Index row) const;
  auto profile(Eigen::Index row) const { return profiles_.row(wrap(row)); }

  // Row index of a sampled angle; throws NonSampledAngle when off the grid by more than 1e-9 deg.
  Eigen::Index index_of(LookAngle angle) const;

  // Per-angle Euclidean norms of the profiles.
  Eigen::VectorXd norms() const { return profiles_.rowwise().norm(); }

  bool operator==(const Collection& other) const {
    return step_ == other.step_ && profiles_ == other.profiles_;
  }

 private:
  double step_;
  Eigen::MatrixXcd profiles_;
};

// Finite sample of a signature or phase space: one point per row.
struct PointCloud {
  Eigen::MatrixXd points;
  std::optional<std::vector<LookAngle>> labels;

  Eigen::Index size() const { return points.rows(); }
  Eigen::Index dim() const { return points.cols(); }
};

// Subtracts the per-range-bin complex mean taken across all angles.
Collection mean_center(const Collection& collection);

// Realifies each profile as [real parts | imaginary parts]; labels carry the look angles.
PointCloud as_point_cloud(const Collection& collection);

EchoVector profile_at(const Collection& collection, LookAngle angle);

// Block realification of one complex vector, shared by the embedding.
template <typename Derived>
Eigen::VectorXd realify(const Eigen::MatrixBase<Derived>& v) {
  const Eigen::Index n = v.size();
  Eigen::VectorXd out(2 * n);
  for (Eigen::Index b = 0; b < n; ++b) {
    out[b] = v(b).real();
    out[n + b] = v(b).imag();
  }
  return out;
}

}  // namespace csas
