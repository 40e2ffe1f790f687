#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "csas/angle.hpp"
#include "csas/collection.hpp"

namespace csas {

// Point scatterer on the turntable, located at polar (radius, bearing) from the center.
struct Scatterer {
  double radius = 0.0;
  LookAngle angle;
  double reflectivity = 1.0;
  // Gaussian angular beam (standard deviation, degrees) centred on broadside, i.e. on the look
  // angle equal to the bearing. Zero means isotropic.
  double beam_width_deg = 0.0;
};

struct ScattererTarget {
  std::vector<Scatterer> scatterers;
};

struct SimConfig {
  int n_angles = 360;
  int n_range = 1000;
  double standoff = 5.0;
  double range_min = 4.5;
  double range_max = 5.5;
  double pulse_center_freq = 5.0;   // cycles per meter of range
  double pulse_width = 0.02;        // meters, Gaussian envelope standard deviation
  double noise_sigma = 0.0;         // per real and per imaginary part
  std::uint64_t rng_seed = 0;
  int threads = 1;

  double step() const { return kFullTurnDeg / n_angles; }
  double bin_spacing() const { return n_range > 1 ? (range_max - range_min) / (n_range - 1) : 0.0; }
  void validate() const;
};

// Far-field range to a scatterer: standoff - radius * cos(look - bearing).
double scatterer_range(const Scatterer& s, double standoff, LookAngle look);

// Renders each scatterer as a Gaussian-envelope complex pulse along range, sums, adds seeded
// circular complex noise per row (seed = rng_seed ^ row), then mean-centres.
// Throws WindowTooNarrow when a pulse centre leaves the range window at a sampled angle.
Collection synthesize(const ScattererTarget& target, const SimConfig& config);

// Receiver noise only, mean-centred; same noise stream as synthesize().
Collection synthesize_noise(const SimConfig& config);

inline constexpr double kSevenScattererRadius = 0.02;

// Two scatterers at {0, 180} deg and five at group_offset + k * 72 deg, equal reflectivity, on
// one circle. Throws AlignedGroups when a bearing of the five-group lands on the two-group.
ScattererTarget seven_scatterer_target(LookAngle group_offset, double radius = kSevenScattererRadius,
                                       double reflectivity = 1.0, double beam_width_deg = 0.0);

// Reads "radius,angle_deg,reflectivity[,beam_width_deg]" rows with '#' comments.
ScattererTarget read_target(const std::filesystem::path& path);

// Synthetic excursions with a prescribed flare/loop structure, used to exercise the topology
// tools on targets whose answer is known by construction. Each excursion lives in its own range
// bin over a compact angular support, so every other row is exactly zero.
enum class ExcursionShape { Flare, Loop };

struct ExcursionSpec {
  ExcursionShape shape = ExcursionShape::Flare;
  LookAngle center;
  double half_width_deg = 15.0;
  double amplitude = 1.0;
  Eigen::Index bin = 0;
};

Collection synthesize_excursions(const std::vector<ExcursionSpec>& specs, int n_angles, int n_range);

}  // namespace csas
