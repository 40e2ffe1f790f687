#include "csas/features.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "csas/error.hpp"

namespace csas {

NoiseFloor estimate_noise_floor(const Collection& collection, double quantile) {
  if (collection.n_angles() < 4) throw Error(ErrorCode::InvalidArgument, "noise floor needs at least 4 angles");
  if (!(quantile > 0.0 && quantile < 1.0)) throw Error(ErrorCode::InvalidArgument, "quantile must lie in (0, 1)");

  Eigen::VectorXd norms = collection.norms();
  std::sort(norms.begin(), norms.end());
  const double pos = quantile * static_cast<double>(norms.size() - 1);
  const auto lo = static_cast<Eigen::Index>(std::floor(pos));
  const Eigen::Index hi = std::min<Eigen::Index>(lo + 1, norms.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return {norms[lo] + frac * (norms[hi] - norms[lo]), NoiseFloor::Method::MedianQuantile, quantile};
}

std::vector<Excursion> detect_excursions(const Collection& collection, const NoiseFloor& floor, double factor) {
  if (!(factor > 1.0)) throw Error(ErrorCode::InvalidArgument, "excursion factor must exceed 1");
  const Eigen::VectorXd norms = collection.norms();
  const Eigen::Index n = norms.size();
  const double threshold = factor * floor.level;

  std::vector<bool> above(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) above[i] = norms[i] > threshold;

  auto make = [&](Eigen::Index start, Eigen::Index length) {
    Excursion ex;
    ex.start_row = start;
    ex.length = length;
    ex.threshold = threshold;
    ex.peak_row = start;
    for (Eigen::Index k = 0; k < length; ++k) {
      const Eigen::Index row = collection.wrap(start + k);
      if (norms[row] > norms[ex.peak_row]) ex.peak_row = row;
    }
    ex.start = collection.angle_at(start);
    ex.end = collection.angle_at(collection.wrap(start + length - 1));
    ex.peak_angle = collection.angle_at(ex.peak_row);
    ex.peak_norm = norms[ex.peak_row];
    return ex;
  };

  std::vector<Excursion> out;
  const auto quiet = std::find(above.begin(), above.end(), false);
  if (quiet == above.end()) {
    out.push_back(make(0, n));
    return out;
  }
  // Scan one full turn starting just after a quiet row so no arc is split at the seam.
  const Eigen::Index origin = std::distance(above.begin(), quiet);
  Eigen::Index k = 1;
  while (k <= n) {
    const Eigen::Index row = collection.wrap(origin + k);
    if (!above[row]) {
      ++k;
      continue;
    }
    Eigen::Index length = 0;
    while (k + length <= n && above[collection.wrap(origin + k + length)]) ++length;
    out.push_back(make(row, length));
    k += length;
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.start_row < b.start_row; });
  return out;
}

CriticalAngles detect_critical_angles(const Collection& collection, double tol) {
  const Eigen::Index n = collection.n_angles();
  if (n < 8) throw Error(ErrorCode::InvalidArgument, "critical-point detection needs at least 8 angles");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");

  Eigen::VectorXd speed(n);
  for (Eigen::Index i = 0; i < n; ++i)
    speed[i] = (collection.profile(i + 1) - collection.profile(i - 1)).norm() / (2.0 * collection.step());

  CriticalAngles out;
  const double max_speed = speed.maxCoeff();
  for (Eigen::Index i = 0; i < n; ++i)
    if (speed[i] == 0.0 && speed[collection.wrap(i + 1)] == 0.0) out.non_isolated = true;
  if (max_speed == 0.0) return out;

  const double cutoff = tol * max_speed;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = speed[i];
    if (s < cutoff && s < speed[collection.wrap(i - 1)] && s < speed[collection.wrap(i + 1)])
      out.angles.push_back(collection.angle_at(i));
  }
  return out;
}

double symmetry_score(const Collection& collection, Eigen::Index peak_row, int half_window) {
  // One loop for all three sums so an exact mirror gives numerator == both energies bitwise.
  double num_re = 0.0, num_im = 0.0, energy_after = 0.0, energy_before = 0.0;
  for (int k = 1; k <= half_window; ++k) {
    const auto after = collection.profile(peak_row + k);
    const auto before = collection.profile(peak_row - k);
    for (Eigen::Index b = 0; b < collection.n_range(); ++b) {
      const double ar = after(b).real(), ai = after(b).imag();
      const double br = before(b).real(), bi = before(b).imag();
      num_re += ar * br + ai * bi;
      num_im += ai * br - ar * bi;
      energy_after += ar * ar + ai * ai;
      energy_before += br * br + bi * bi;
    }
  }
  if (energy_after == 0.0 && energy_before == 0.0) return 1.0;
  if (energy_after == 0.0 || energy_before == 0.0) return 0.0;
  const double score = std::hypot(num_re, num_im) / std::sqrt(energy_after * energy_before);
  return std::clamp(score, 0.0, 1.0);
}

ReflectionFeature classify(const Collection& collection, const Excursion& excursion, int half_window,
                           double symmetry_threshold) {
  if (half_window < 2) throw Error(ErrorCode::InvalidArgument, "half window must be at least 2 samples");
  const double half_width = 0.5 * excursion.width_deg(collection.step());
  if (half_window * collection.step() > half_width + 1e-9) {
    std::ostringstream os;
    os << "half window of " << half_window << " samples (" << half_window * collection.step()
       << " deg) exceeds the excursion half width " << half_width << " deg";
    throw Error(ErrorCode::WindowExceedsExcursion, os.str());
  }
  ReflectionFeature f;
  f.excursion = excursion;
  f.half_window = half_window;
  f.symmetry_score = symmetry_score(collection, excursion.peak_row, half_window);
  f.kind = f.symmetry_score >= symmetry_threshold ? ReflectionKind::Flare : ReflectionKind::Loop;
  return f;
}

FeatureReport feature_report(const Collection& collection, const FeatureParams& params) {
  FeatureReport report;
  report.params = params;
  report.noise_floor = estimate_noise_floor(collection, params.quantile);
  report.excursions = detect_excursions(collection, report.noise_floor, params.factor);
  if (collection.n_angles() >= 8) report.critical = detect_critical_angles(collection, params.critical_tol);

  for (const auto& ex : report.excursions) {
    const double half_width = 0.5 * ex.width_deg(collection.step());
    const int admissible = static_cast<int>(std::floor(half_width / collection.step() + 1e-9));
    const int window = std::max(2, std::min(params.half_window, admissible));
    ReflectionFeature f;
    f.excursion = ex;
    f.half_window = window;
    f.symmetry_score = symmetry_score(collection, ex.peak_row, window);
    f.kind = f.symmetry_score >= params.symmetry_threshold ? ReflectionKind::Flare : ReflectionKind::Loop;
    report.features.push_back(f);
  }
  return report;
}

}  // namespace csas
