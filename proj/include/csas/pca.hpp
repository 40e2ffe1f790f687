#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "csas/collection.hpp"
#include "csas/error.hpp"

namespace csas {

template <typename Scalar>
struct BasicPcaModel {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Vector mean;                // centroid, dimension d
  Matrix components;          // d x k, orthonormal columns, descending variance
  Vector explained_variance;  // k values, non-increasing, covariance divisor (count - 1)

  Eigen::Index dim() const { return mean.size(); }
  Eigen::Index rank() const { return components.cols(); }
};

using PcaModel = BasicPcaModel<double>;

namespace detail {

// Flip each column so that its entry of largest magnitude is nonnegative (first index on ties).
template <typename Matrix>
void canonicalize_signs(Matrix& components) {
  for (Eigen::Index c = 0; c < components.cols(); ++c) {
    Eigen::Index arg = 0;
    components.col(c).cwiseAbs().maxCoeff(&arg);
    if (components(arg, c) < 0) components.col(c) = -components.col(c);
  }
}

}  // namespace detail

// Top-k principal directions of the rows of `points` via a thin SVD of the centred data.
template <typename Derived>
BasicPcaModel<typename Derived::Scalar> fit_pca(const Eigen::MatrixBase<Derived>& points, Eigen::Index k) {
  using Scalar = typename Derived::Scalar;
  using Model = BasicPcaModel<Scalar>;
  const Eigen::Index m = points.rows();
  const Eigen::Index d = points.cols();
  if (m < 2) throw Error(ErrorCode::DegenerateCloud, "PCA needs at least two points");
  if (k < 1 || k > std::min(m, d))
    throw Error(ErrorCode::InvalidArgument,
                "k=" + std::to_string(k) + " must lie in [1, min(points, dim)=" + std::to_string(std::min(m, d)) + "]");

  Model model;
  model.mean = points.colwise().mean().transpose();
  const typename Model::Matrix centered = points.rowwise() - model.mean.transpose();

  Eigen::BDCSVD<typename Model::Matrix> svd(centered, Eigen::ComputeThinV);
  model.components = svd.matrixV().leftCols(k);
  model.explained_variance = svd.singularValues().head(k).array().square() / Scalar(m - 1);
  detail::canonicalize_signs(model.components);
  return model;
}

inline PcaModel fit_pca(const PointCloud& cloud, Eigen::Index k) { return fit_pca(cloud.points, k); }

// Coordinates of each row of `points` against the model's components.
template <typename Scalar, typename Derived>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> project(const BasicPcaModel<Scalar>& model,
                                                              const Eigen::MatrixBase<Derived>& points) {
  if (points.cols() != model.dim())
    throw Error(ErrorCode::DimensionMismatch, "cloud dimension " + std::to_string(points.cols()) +
                                                  " != model dimension " + std::to_string(model.dim()));
  return (points.rowwise() - model.mean.transpose()) * model.components;
}

inline PointCloud project(const PcaModel& model, const PointCloud& cloud) {
  PointCloud out;
  out.points = project(model, cloud.points);
  out.labels = cloud.labels;
  return out;
}

// Maps projected coordinates back into the source space.
template <typename Scalar, typename Derived>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> reconstruct(const BasicPcaModel<Scalar>& model,
                                                                  const Eigen::MatrixBase<Derived>& coords) {
  if (coords.cols() != model.rank())
    throw Error(ErrorCode::DimensionMismatch, "coordinate count does not match the model rank");
  return (coords * model.components.transpose()).rowwise() + model.mean.transpose();
}

// Sum of per-coordinate sample variances (divisor count - 1).
template <typename Derived>
typename Derived::Scalar total_variance(const Eigen::MatrixBase<Derived>& points) {
  using Scalar = typename Derived::Scalar;
  const auto centered = (points.rowwise() - points.colwise().mean()).eval();
  return centered.squaredNorm() / Scalar(points.rows() - 1);
}

}  // namespace csas
