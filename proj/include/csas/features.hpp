#pragma once

#include <vector>

#include "csas/angle.hpp"
#include "csas/collection.hpp"

namespace csas {

struct NoiseFloor {
  enum class Method { MedianQuantile };

  double level = 0.0;
  Method method = Method::MedianQuantile;
  double quantile = 0.5;
};

// Maximal circular run of angles whose profile norm exceeds a threshold.
struct Excursion {
  LookAngle start;
  LookAngle end;
  LookAngle peak_angle;
  double peak_norm = 0.0;
  double threshold = 0.0;
  Eigen::Index start_row = 0;
  Eigen::Index peak_row = 0;
  Eigen::Index length = 0;  // number of rows in the arc

  // Angular extent between the first and last rows, in degrees.
  double width_deg(double step) const { return static_cast<double>(length - 1) * step; }
};

enum class ReflectionKind { Flare, Loop };

struct ReflectionFeature {
  Excursion excursion;
  ReflectionKind kind = ReflectionKind::Loop;
  double symmetry_score = 0.0;
  int half_window = 0;  // window actually used
};

struct CriticalAngles {
  std::vector<LookAngle> angles;
  // Set when the speed vanishes everywhere, so critical points are not isolated.
  bool non_isolated = false;
};

struct FeatureParams {
  double quantile = 0.5;
  double factor = 3.0;
  int half_window = 5;
  double symmetry_threshold = 0.9;
  double critical_tol = 0.05;
};

struct FeatureReport {
  NoiseFloor noise_floor;
  std::vector<Excursion> excursions;
  std::vector<ReflectionFeature> features;  // one per excursion
  CriticalAngles critical;
  FeatureParams params;
};

// Interpolated quantile (linear between order statistics) of the per-angle profile norms.
NoiseFloor estimate_noise_floor(const Collection& collection, double quantile = 0.5);

// Arcs where the norm exceeds factor * floor.level; an arc crossing 0/360 is reported once.
std::vector<Excursion> detect_excursions(const Collection& collection, const NoiseFloor& floor, double factor = 3.0);

// Strict local minima of the centred finite-difference speed that fall below tol * max speed.
CriticalAngles detect_critical_angles(const Collection& collection, double tol);

// Normalised complex correlation between the profiles at peak + k*step and peak - k*step,
// k = 1..half_window, clipped to [0, 1].
double symmetry_score(const Collection& collection, Eigen::Index peak_row, int half_window);

// Throws InvalidArgument for half_window < 2 and WindowExceedsExcursion when
// half_window * step exceeds half the excursion width.
ReflectionFeature classify(const Collection& collection, const Excursion& excursion, int half_window = 5,
                           double symmetry_threshold = 0.9);

// Runs the steps above. Excursions narrower than the requested window are classified with the
// widest window they admit, but never fewer than two samples per side.
FeatureReport feature_report(const Collection& collection, const FeatureParams& params = {});

}  // namespace csas
