#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "csas/collection.hpp"

namespace csas {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Symmetric, nonnegative, zero-diagonal matrix of pairwise distances.
class DistanceMatrix {
 public:
  // Throws InvalidArgument when the entries are not square, symmetric to 1e-12, nonnegative,
  // or have a nonzero diagonal.
  explicit DistanceMatrix(Eigen::MatrixXd entries);

  Eigen::Index size() const { return entries_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }
  const Eigen::MatrixXd& entries() const { return entries_; }

 private:
  Eigen::MatrixXd entries_;
};

// Euclidean distances between the rows of `points`, computed by explicit differences so that
// coincident points are exactly zero apart.
template <typename Derived>
DistanceMatrix distance_matrix(const Eigen::MatrixBase<Derived>& points) {
  const Eigen::Index m = points.rows();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = j + 1; i < m; ++i) {
      const double v = static_cast<double>((points.row(i) - points.row(j)).norm());
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return DistanceMatrix(std::move(d));
}

DistanceMatrix distance_matrix(const PointCloud& cloud, int threads = 1);

struct PersistencePair {
  int dim = 0;
  double birth = 0.0;
  double death = kInfinity;
  // Death is infinite only because the filtration was truncated at a finite radius.
  bool censored = false;

  double lifetime() const { return death - birth; }
  bool is_finite() const { return death < kInfinity; }
  bool operator==(const PersistencePair&) const = default;
};

struct PersistenceDiagram {
  std::vector<PersistencePair> pairs;

  std::vector<PersistencePair> in_dim(int dim) const;
  // Sorted by (dim, birth, death, censored) for multiset comparison.
  PersistenceDiagram canonical() const;
  bool operator==(const PersistenceDiagram&) const = default;
};

struct RipsOptions {
  int max_dim = 1;  // 0 or 1
  double max_radius = kInfinity;
  Eigen::Index max_points = 2000;
};

// H0 and H1 of the Vietoris-Rips filtration over Z/2, dropping zero-persistence pairs.
//
// Simplices are ordered by (diameter, dimension, lexicographic vertex tuple). H0 comes from
// union-find over edges in that order. H1 is computed as persistent cohomology: edge columns
// are reduced in reverse filtration order, edges that merged components in H0 are cleared, and
// a column whose first coface is not yet claimed is paired without building its coboundary.
// Throws MatrixTooLarge past `max_points`.
PersistenceDiagram rips_persistence(const DistanceMatrix& dm, const RipsOptions& options = {});

struct Lifetimes {
  std::vector<double> finite;  // descending
  std::size_t infinite = 0;
};

Lifetimes lifetimes(const PersistenceDiagram& diagram, int dim);

struct DominanceOptions {
  double ratio = 5.0;
  // Finite lifetimes at or below this level are treated as noise and ignored.
  double min_lifetime = 0.0;
  // Same, relative to the largest finite lifetime; drops round-off classes of noiseless data.
  double min_relative_lifetime = 1e-6;
};

// Number of classes above the largest multiplicative gap in the descending lifetime sequence
// (infinite lifetimes first), after discarding noise-level lifetimes. When no gap reaches
// `ratio` the survivors are all on one scale and all of them count.
std::size_t dominant_count(const PersistenceDiagram& diagram, int dim, const DominanceOptions& options = {});

// Highest-lifetime class of a dimension, if any (infinite beats finite; earlier birth on ties).
std::optional<PersistencePair> most_persistent(const PersistenceDiagram& diagram, int dim);

}  // namespace csas
