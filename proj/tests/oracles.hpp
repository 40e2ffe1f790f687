#pragma once

// Test-only reference implementations. Deliberately naive and independent of src/.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "csas/persistence.hpp"

namespace oracle {

// Enumerates every simplex up to dimension 2 within max_radius, orders them by
// (diameter, dimension, lexicographic vertices), and reduces the full boundary matrix over Z/2
// with the textbook column algorithm.
inline csas::PersistenceDiagram brute_force_rips(const Eigen::MatrixXd& d,
                                                 double max_radius = std::numeric_limits<double>::infinity()) {
  struct Simplex {
    double diam;
    int dim;
    std::vector<int> verts;
  };
  const int n = static_cast<int>(d.rows());
  std::vector<Simplex> simplices;
  for (int a = 0; a < n; ++a) simplices.push_back({0.0, 0, {a}});
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (d(a, b) <= max_radius) simplices.push_back({d(a, b), 1, {a, b}});
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        const double diam = std::max({d(a, b), d(a, c), d(b, c)});
        if (diam <= max_radius) simplices.push_back({diam, 2, {a, b, c}});
      }
  std::sort(simplices.begin(), simplices.end(), [](const Simplex& x, const Simplex& y) {
    return std::tie(x.diam, x.dim, x.verts) < std::tie(y.diam, y.dim, y.verts);
  });

  auto index_of = [&](const std::vector<int>& verts) {
    for (std::size_t i = 0; i < simplices.size(); ++i)
      if (simplices[i].verts == verts) return static_cast<int>(i);
    return -1;
  };

  const std::size_t m = simplices.size();
  std::vector<std::vector<int>> columns(m);
  for (std::size_t j = 0; j < m; ++j) {
    const auto& v = simplices[j].verts;
    if (v.size() < 2) continue;
    for (std::size_t drop = 0; drop < v.size(); ++drop) {
      std::vector<int> face;
      for (std::size_t k = 0; k < v.size(); ++k)
        if (k != drop) face.push_back(v[k]);
      columns[j].push_back(index_of(face));
    }
    std::sort(columns[j].begin(), columns[j].end());
  }

  auto low = [&](std::size_t j) { return columns[j].empty() ? -1 : columns[j].back(); };
  for (std::size_t j = 0; j < m; ++j) {
    bool changed = true;
    while (changed && low(j) >= 0) {
      changed = false;
      for (std::size_t k = 0; k < j; ++k) {
        if (low(k) == low(j)) {
          std::vector<int> sum;
          std::set_symmetric_difference(columns[j].begin(), columns[j].end(), columns[k].begin(), columns[k].end(),
                                        std::back_inserter(sum));
          columns[j] = std::move(sum);
          changed = true;
          break;
        }
      }
    }
  }

  const bool truncated = std::isfinite(max_radius);
  csas::PersistenceDiagram out;
  std::vector<bool> killed(m, false);
  for (std::size_t j = 0; j < m; ++j) {
    const int i = low(j);
    if (i < 0) continue;
    killed[static_cast<std::size_t>(i)] = true;
    const auto& born = simplices[static_cast<std::size_t>(i)];
    if (simplices[j].diam > born.diam) out.pairs.push_back({born.dim, born.diam, simplices[j].diam, false});
  }
  bool anchored = false;
  for (std::size_t j = 0; j < m; ++j) {
    const auto& s = simplices[j];
    if (s.dim > 1 || killed[j] || !columns[j].empty()) continue;
    // The essential H0 class of vertex 0's component is the untruncated one.
    bool censored = truncated;
    if (s.dim == 0 && !anchored && s.verts[0] == 0) {
      censored = false;
      anchored = true;
    }
    out.pairs.push_back({s.dim, s.diam, std::numeric_limits<double>::infinity(), censored});
  }
  return out;
}

// Kruskal minimum-spanning-forest edge weights, ascending.
inline std::vector<double> kruskal_weights(const Eigen::MatrixXd& d) {
  const int n = static_cast<int>(d.rows());
  std::vector<std::tuple<double, int, int>> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) edges.emplace_back(d(a, b), a, b);
  std::sort(edges.begin(), edges.end());
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  std::vector<double> weights;
  for (const auto& [w, a, b] : edges) {
    const int ra = find(a), rb = find(b);
    if (ra == rb) continue;
    parent[ra] = rb;
    weights.push_back(w);
  }
  return weights;
}

}  // namespace oracle
