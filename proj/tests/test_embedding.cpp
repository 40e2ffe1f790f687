#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "csas/embedding.hpp"
#include "check.hpp"
#include "generators.hpp"

using namespace csas;
using check::throws_code;

namespace {

std::vector<double> sorted_distances(const Eigen::MatrixXd& points) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    for (Eigen::Index j = i + 1; j < points.rows(); ++j) out.push_back((points.row(i) - points.row(j)).norm());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("lag sets") {
  CHECK(LagSet::parse("0,4,25").size() == 3);
  CHECK(LagSet::parse(" 0 , 4.5 ").lags()[1].degrees() == 4.5);
  CHECK(LagSet::parse("-10").lags()[0].degrees() == 350.0);
  CHECK(throws_code(ErrorCode::InvalidLags, [] { LagSet::parse(""); }));
  CHECK(throws_code(ErrorCode::InvalidLags, [] { LagSet::parse("0,4,x"); }));
  CHECK(throws_code(ErrorCode::InvalidLags, [] { LagSet::parse("0,,4"); }));
  CHECK(throws_code(ErrorCode::InvalidLags, [] { LagSet::from_degrees({0, 360}); }));
  CHECK(throws_code(ErrorCode::InvalidLags, [] { LagSet::from_degrees({}); }));
}

TEST_CASE("single zero lag is the signature cloud") {
  gen::Rng rng(301);
  const Collection c = rng.collection(36, 5);
  const PointCloud a = embed(c, LagSet::from_degrees({0}));
  const PointCloud b = as_point_cloud(c);
  CHECK(a.points == b.points);
  CHECK(a.labels == b.labels);
}

TEST_CASE("three-lag embedding of a 360 by 1000 collection") {
  const Collection c(Eigen::MatrixXcd::Zero(360, 1000));
  const PointCloud cloud = embed(c, LagSet::parse("0,4,25"));
  CHECK(cloud.size() == 360);
  CHECK(cloud.dim() == 6000);
}

TEST_CASE("blocks are circularly lagged profiles") {
  gen::Rng rng(302);
  const Collection c = rng.collection(36, 3);
  const PointCloud cloud = embed(c, LagSet::from_degrees({0, 20, 350}));
  for (Eigen::Index i = 0; i < c.n_angles(); ++i) {
    CHECK(cloud.points.row(i).segment(0, 6).transpose() == realify(c.profile(i)));
    CHECK(cloud.points.row(i).segment(6, 6).transpose() == realify(c.profile(i + 2)));
    CHECK(cloud.points.row(i).segment(12, 6).transpose() == realify(c.profile(i - 1)));
    CHECK((*cloud.labels)[static_cast<std::size_t>(i)] == c.angle_at(i));
  }
}

TEST_CASE("off-grid lags are rejected") {
  const Collection c(Eigen::MatrixXcd::Zero(360, 2));
  CHECK(throws_code(ErrorCode::OffGridLag, [&] { embed(c, LagSet::from_degrees({0, 0.5})); }));
  const Collection coarse(Eigen::MatrixXcd::Zero(90, 2));
  CHECK(throws_code(ErrorCode::OffGridLag, [&] { embed(coarse, LagSet::parse("0,4,25")); }));
}

TEST_CASE("property: embedded norms compose") {
  gen::Rng rng(303);
  for (int trial = 0; trial < 50; ++trial) {
    const Collection c = rng.collection(rng.angle_count(), rng.integer(1, 6));
    std::vector<int> offsets(static_cast<std::size_t>(c.n_angles()));
    std::iota(offsets.begin(), offsets.end(), 0);
    std::shuffle(offsets.begin(), offsets.end(), rng.engine());
    std::vector<double> lags;
    const int n_lags = std::min(rng.integer(1, 4), static_cast<int>(c.n_angles()));
    for (int k = 0; k < n_lags; ++k) lags.push_back(c.step() * offsets[static_cast<std::size_t>(k)]);
    const LagSet lag_set = LagSet::from_degrees(lags);
    const PointCloud cloud = embed(c, lag_set);
    const Eigen::VectorXd norms = c.norms();
    for (Eigen::Index i = 0; i < c.n_angles(); ++i) {
      double expected = 0.0;
      for (const LookAngle& lag : lag_set.lags()) {
        const double v = norms[c.wrap(i + c.index_of(lag))];
        expected += v * v;
      }
      CHECK(std::abs(cloud.points.row(i).squaredNorm() - expected) <= 1e-12 * expected);
    }
  }
}

TEST_CASE("property: a common lag shift permutes the points") {
  gen::Rng rng(304);
  for (int trial = 0; trial < 30; ++trial) {
    const Collection c = rng.collection(rng.angle_count(), rng.integer(1, 4));
    const int shift = rng.integer(1, static_cast<int>(c.n_angles()) - 1);
    const std::vector<double> lags{0.0, c.step()};
    std::vector<double> shifted;
    for (double l : lags) shifted.push_back(l + shift * c.step());
    const PointCloud a = embed(c, LagSet::from_degrees(lags));
    const PointCloud b = embed(c, LagSet::from_degrees(shifted));
    for (Eigen::Index i = 0; i < c.n_angles(); ++i) CHECK(b.points.row(i) == a.points.row(c.wrap(i + shift)));
    const auto da = sorted_distances(a.points);
    const auto db = sorted_distances(b.points);
    CHECK(da == db);
  }
}

TEST_CASE("property: a constant collection embeds to one point") {
  gen::Rng rng(305);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXcd m(rng.angle_count(), 3);
    m.rowwise() = rng.complex_matrix(1, 3).row(0);
    const Collection c(m);
    const PointCloud cloud = embed(c, LagSet::from_degrees({0, c.step(), 3 * c.step()}));
    for (Eigen::Index i = 1; i < cloud.size(); ++i) CHECK(cloud.points.row(i) == cloud.points.row(0));
  }
}
