#include "csas/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "csas/error.hpp"

namespace csas {

namespace {

using Vertex = std::uint32_t;

struct Edge {
  double diam;
  Vertex a, b;  // a < b

  bool operator<(const Edge& o) const { return std::tie(diam, a, b) < std::tie(o.diam, o.a, o.b); }
};

struct Triangle {
  double diam;
  Vertex a, b, c;  // a < b < c

  bool operator==(const Triangle& o) const { return a == o.a && b == o.b && c == o.c; }
  bool operator<(const Triangle& o) const {
    return std::tie(diam, a, b, c) < std::tie(o.diam, o.a, o.b, o.c);
  }
  bool operator>(const Triangle& o) const { return o < *this; }
};

Triangle make_triangle(double diam, Vertex x, Vertex y, Vertex z) {
  if (x > y) std::swap(x, y);
  if (y > z) std::swap(y, z);
  if (x > y) std::swap(x, y);
  return {diam, x, y, z};
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) x = std::exchange(parent_[x], root);
    return root;
  }

  // False when already joined.
  bool unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (rank_[x] < rank_[y]) std::swap(x, y);
    parent_[y] = x;
    if (rank_[x] == rank_[y]) ++rank_[x];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> rank_;
};

// Filtration restricted to representative vertices; exact duplicates of an earlier point only
// add zero-persistence pairs and are skipped.
class RipsComplex {
 public:
  RipsComplex(const DistanceMatrix& dm, double max_radius) : max_radius_(max_radius) {
    const Eigen::Index m = dm.size();
    const Eigen::MatrixXd& d = dm.entries();
    std::vector<Eigen::Index> reps;
    for (Eigen::Index i = 0; i < m; ++i) {
      bool duplicate = false;
      for (Eigen::Index r : reps) {
        if (d(i, r) == 0.0 && d.col(i) == d.col(r)) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) reps.push_back(i);
    }
    n_ = static_cast<Vertex>(reps.size());
    dist_.resize(n_, n_);
    for (Vertex j = 0; j < n_; ++j)
      for (Vertex i = 0; i < n_; ++i) dist_(i, j) = d(reps[i], reps[j]);

    for (Vertex b = 1; b < n_; ++b)
      for (Vertex a = 0; a < b; ++a)
        if (dist_(a, b) <= max_radius_) edges_.push_back({dist_(a, b), a, b});
    std::sort(edges_.begin(), edges_.end());
  }

  Vertex size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }

  template <typename Visit>
  void for_each_coface(const Edge& e, Visit&& visit) const {
    const double* col_a = dist_.col(e.a).data();
    const double* col_b = dist_.col(e.b).data();
    for (Vertex c = 0; c < n_; ++c) {
      if (c == e.a || c == e.b) continue;
      const double da = col_a[c];
      const double db = col_b[c];
      if (da > max_radius_ || db > max_radius_) continue;
      visit(make_triangle(std::max({e.diam, da, db}), e.a, e.b, c));
    }
  }

  std::optional<Triangle> first_coface(const Edge& e) const {
    std::optional<Triangle> best;
    for_each_coface(e, [&](const Triangle& t) {
      if (!best || t < *best) best = t;
    });
    return best;
  }

  std::uint64_t key(const Triangle& t) const {
    const std::uint64_t n = n_;
    return (static_cast<std::uint64_t>(t.a) * n + t.b) * n + t.c;
  }

 private:
  double max_radius_;
  Vertex n_ = 0;
  Eigen::MatrixXd dist_;
  std::vector<Edge> edges_;
};

using CofaceHeap = std::priority_queue<Triangle, std::vector<Triangle>, std::greater<Triangle>>;

// Removes and returns the smallest entry that survives mod-2 cancellation.
std::optional<Triangle> pop_pivot(CofaceHeap& heap) {
  while (!heap.empty()) {
    Triangle t = heap.top();
    heap.pop();
    bool present = true;
    while (!heap.empty() && heap.top() == t) {
      heap.pop();
      present = !present;
    }
    if (present) return t;
  }
  return std::nullopt;
}

void compute_h1(const RipsComplex& complex, const std::vector<bool>& cleared, bool truncated,
                std::vector<PersistencePair>& out) {
  const auto& edges = complex.edges();
  // pivot triangle -> slot in `reductions`; each slot lists the edges whose coboundaries sum
  // to that reduced column
  std::unordered_map<std::uint64_t, std::uint32_t> pivot_owner;
  std::vector<std::vector<std::uint32_t>> reductions;

  auto emit = [&](double birth, double death) {
    if (death > birth) out.push_back({1, birth, death, false});
  };

  for (std::size_t idx = edges.size(); idx-- > 0;) {
    if (cleared[idx]) continue;
    const Edge& edge = edges[idx];
    const double birth = edge.diam;

    std::optional<Triangle> pivot = complex.first_coface(edge);
    if (!pivot) {
      out.push_back({1, birth, kInfinity, truncated});
      continue;
    }
    auto owner = pivot_owner.find(complex.key(*pivot));
    if (owner == pivot_owner.end()) {
      pivot_owner.emplace(complex.key(*pivot), static_cast<std::uint32_t>(reductions.size()));
      reductions.push_back({static_cast<std::uint32_t>(idx)});
      emit(birth, pivot->diam);
      continue;
    }

    CofaceHeap heap;
    std::vector<std::uint32_t> combo{static_cast<std::uint32_t>(idx)};
    complex.for_each_coface(edge, [&](const Triangle& t) { heap.push(t); });
    while (true) {
      const auto& added = reductions[owner->second];
      combo.insert(combo.end(), added.begin(), added.end());
      for (std::uint32_t f : added) complex.for_each_coface(edges[f], [&](const Triangle& t) { heap.push(t); });

      pivot = pop_pivot(heap);
      if (!pivot) {
        out.push_back({1, birth, kInfinity, truncated});
        break;
      }
      owner = pivot_owner.find(complex.key(*pivot));
      if (owner == pivot_owner.end()) {
        std::sort(combo.begin(), combo.end());
        std::vector<std::uint32_t> reduced;
        for (std::size_t i = 0; i < combo.size();) {
          std::size_t j = i;
          while (j < combo.size() && combo[j] == combo[i]) ++j;
          if ((j - i) % 2 == 1) reduced.push_back(combo[i]);
          i = j;
        }
        pivot_owner.emplace(complex.key(*pivot), static_cast<std::uint32_t>(reductions.size()));
        reductions.push_back(std::move(reduced));
        emit(birth, pivot->diam);
        break;
      }
      heap.push(*pivot);
    }
  }
}

}  // namespace

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  const Eigen::Index m = entries_.rows();
  if (entries_.cols() != m) throw Error(ErrorCode::InvalidArgument, "distance matrix must be square");
  for (Eigen::Index j = 0; j < m; ++j) {
    if (entries_(j, j) != 0.0) throw Error(ErrorCode::InvalidArgument, "distance matrix diagonal must be zero");
    for (Eigen::Index i = 0; i < m; ++i) {
      const double v = entries_(i, j);
      if (!(v >= 0.0) || std::isinf(v))
        throw Error(ErrorCode::InvalidArgument, "distances must be finite and nonnegative");
      if (std::abs(v - entries_(j, i)) > 1e-12 * std::max(1.0, std::abs(v)))
        throw Error(ErrorCode::InvalidArgument, "distance matrix is not symmetric");
    }
  }
}

DistanceMatrix distance_matrix(const PointCloud& cloud, int threads) {
  const Eigen::Index m = cloud.size();
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "distance matrix of an empty cloud");
  if (threads <= 1) return distance_matrix(cloud.points);

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m, m);
  const Eigen::MatrixXd& x = cloud.points;
  const int workers = static_cast<int>(std::min<Eigen::Index>(threads, m));
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        // strided rows balance the triangular workload
        for (Eigen::Index j = w; j < m; j += workers)
          for (Eigen::Index i = j + 1; i < m; ++i) d(i, j) = (x.row(i) - x.row(j)).norm();
      });
    }
  }
  d.triangularView<Eigen::StrictlyUpper>() = d.transpose();
  return DistanceMatrix(std::move(d));
}

std::vector<PersistencePair> PersistenceDiagram::in_dim(int dim) const {
  std::vector<PersistencePair> out;
  std::copy_if(pairs.begin(), pairs.end(), std::back_inserter(out), [dim](const auto& p) { return p.dim == dim; });
  return out;
}

PersistenceDiagram PersistenceDiagram::canonical() const {
  PersistenceDiagram out{pairs};
  std::sort(out.pairs.begin(), out.pairs.end(), [](const auto& x, const auto& y) {
    return std::tie(x.dim, x.birth, x.death, x.censored) < std::tie(y.dim, y.birth, y.death, y.censored);
  });
  return out;
}

PersistenceDiagram rips_persistence(const DistanceMatrix& dm, const RipsOptions& options) {
  if (dm.size() > options.max_points) {
    std::ostringstream os;
    os << dm.size() << " points exceed the cap of " << options.max_points
       << "; subsample or raise the cap with a finite max radius";
    throw Error(ErrorCode::MatrixTooLarge, os.str());
  }
  if (!(options.max_radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "max radius must be positive");
  if (options.max_dim < 0 || options.max_dim > 1)
    throw Error(ErrorCode::InvalidArgument, "only H0 and H1 are supported");

  PersistenceDiagram diagram;
  if (dm.size() == 0) return diagram;

  const RipsComplex complex(dm, options.max_radius);
  const bool truncated = std::isfinite(options.max_radius);
  const auto& edges = complex.edges();

  UnionFind components(complex.size());
  std::vector<bool> merging(edges.size(), false);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (components.unite(edges[i].a, edges[i].b)) {
      merging[i] = true;
      if (edges[i].diam > 0.0) diagram.pairs.push_back({0, 0.0, edges[i].diam, false});
    }
  }
  const std::size_t anchor = components.find(0);
  for (Vertex v = 0; v < complex.size(); ++v)
    if (components.find(v) == v) diagram.pairs.push_back({0, 0.0, kInfinity, truncated && v != anchor});

  if (options.max_dim >= 1) compute_h1(complex, merging, truncated, diagram.pairs);
  return diagram;
}

Lifetimes lifetimes(const PersistenceDiagram& diagram, int dim) {
  Lifetimes out;
  for (const auto& p : diagram.pairs) {
    if (p.dim != dim) continue;
    if (p.is_finite())
      out.finite.push_back(p.lifetime());
    else
      ++out.infinite;
  }
  std::sort(out.finite.begin(), out.finite.end(), std::greater<>());
  return out;
}

std::size_t dominant_count(const PersistenceDiagram& diagram, int dim, const DominanceOptions& options) {
  if (!(options.ratio > 1.0)) throw Error(ErrorCode::InvalidArgument, "dominance ratio must exceed 1");
  const Lifetimes life = lifetimes(diagram, dim);

  std::vector<double> seq(life.infinite, kInfinity);
  const double largest = life.finite.empty() ? 0.0 : life.finite.front();
  const double floor = std::max(options.min_lifetime, options.min_relative_lifetime * largest);
  for (double l : life.finite)
    if (l > floor) seq.push_back(l);

  if (seq.size() <= 1) return seq.size();

  std::size_t best_k = 0;
  double best_gap = 0.0;
  for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
    const double gap = std::isinf(seq[k]) && std::isinf(seq[k + 1]) ? 1.0 : seq[k] / seq[k + 1];
    if (gap > best_gap) {
      best_gap = gap;
      best_k = k + 1;
    }
  }
  // No separating gap: every surviving class is on the same scale.
  return best_gap >= options.ratio ? best_k : seq.size();
}

std::optional<PersistencePair> most_persistent(const PersistenceDiagram& diagram, int dim) {
  std::optional<PersistencePair> best;
  for (const auto& p : diagram.pairs) {
    if (p.dim != dim) continue;
    if (!best || p.lifetime() > best->lifetime() || (p.lifetime() == best->lifetime() && p.birth < best->birth))
      best = p;
  }
  return best;
}

}  // namespace csas
