#include "csas/collection.hpp"

#include <cmath>
#include <sstream>

#include "csas/error.hpp"

namespace csas {

namespace {

constexpr double kGridTolDeg = 1e-9;

}  // namespace

Collection::Collection(Eigen::MatrixXcd profiles)
    : step_(profiles.rows() > 0 ? kFullTurnDeg / static_cast<double>(profiles.rows()) : 0.0),
      profiles_(std::move(profiles)) {
  if (profiles_.rows() < 1 || profiles_.cols() < 1)
    throw Error(ErrorCode::InvalidArgument, "collection needs at least one angle and one range bin");
}

Collection::Collection(double step_deg, Eigen::MatrixXcd profiles)
    : step_(step_deg), profiles_(std::move(profiles)) {
  if (profiles_.rows() < 1 || profiles_.cols() < 1)
    throw Error(ErrorCode::InvalidArgument, "collection needs at least one angle and one range bin");
  if (!(step_ > 0.0) ||
      std::abs(static_cast<double>(profiles_.rows()) * step_ - kFullTurnDeg) > kGridTolDeg) {
    std::ostringstream os;
    os << profiles_.rows() << " rows at step " << step_ << " deg do not cover 360 deg";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

Eigen::Index Collection::wrap(Eigen::Index row) const {
  const Eigen::Index n = profiles_.rows();
  Eigen::Index r = row % n;
  return r < 0 ? r + n : r;
}

Eigen::Index Collection::index_of(LookAngle angle) const {
  const double pos = angle.degrees() / step_;
  const double nearest = std::round(pos);
  if (std::abs(pos - nearest) * step_ > kGridTolDeg) {
    std::ostringstream os;
    os << angle.degrees() << " deg is not a multiple of the " << step_ << " deg step";
    throw Error(ErrorCode::NonSampledAngle, os.str());
  }
  return wrap(static_cast<Eigen::Index>(nearest));
}

Collection mean_center(const Collection& collection) {
  const Eigen::RowVectorXcd mean = collection.profiles().colwise().mean();
  Eigen::MatrixXcd centered = collection.profiles().rowwise() - mean;
  return Collection(collection.step(), std::move(centered));
}

PointCloud as_point_cloud(const Collection& collection) {
  PointCloud cloud;
  const Eigen::Index n = collection.n_range();
  cloud.points.resize(collection.n_angles(), 2 * n);
  cloud.points.leftCols(n) = collection.profiles().real();
  cloud.points.rightCols(n) = collection.profiles().imag();
  std::vector<LookAngle> labels;
  labels.reserve(static_cast<std::size_t>(collection.n_angles()));
  for (Eigen::Index i = 0; i < collection.n_angles(); ++i) labels.push_back(collection.angle_at(i));
  cloud.labels = std::move(labels);
  return cloud;
}

EchoVector profile_at(const Collection& collection, LookAngle angle) {
  return collection.profile(collection.index_of(angle)).transpose();
}

}  // namespace csas
