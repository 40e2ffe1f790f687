#include "csas/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "csas/error.hpp"

namespace csas {

namespace {

// Runs body(row) for every row, split into contiguous blocks across threads.
template <typename Body>
void for_each_row(int n_rows, int threads, Body&& body) {
  const int workers = std::clamp(threads, 1, std::max(1, n_rows));
  if (workers == 1) {
    for (int r = 0; r < n_rows; ++r) body(r);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const int begin = n_rows * w / workers;
    const int end = n_rows * (w + 1) / workers;
    pool.emplace_back([begin, end, &body] {
      for (int r = begin; r < end; ++r) body(r);
    });
  }
}

void add_noise(Eigen::MatrixXcd& profiles, const SimConfig& config) {
  if (config.noise_sigma <= 0.0) return;
  for_each_row(static_cast<int>(profiles.rows()), config.threads, [&](int row) {
    std::seed_seq seq{static_cast<std::uint32_t>(config.rng_seed), static_cast<std::uint32_t>(config.rng_seed >> 32),
                      static_cast<std::uint32_t>(row)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, config.noise_sigma);
    for (Eigen::Index b = 0; b < profiles.cols(); ++b) {
      const double re = normal(rng);
      const double im = normal(rng);
      profiles(row, b) += Complex(re, im);
    }
  });
}

double beam_gain(const Scatterer& s, LookAngle look) {
  if (s.beam_width_deg <= 0.0) return 1.0;
  const double off = look.signed_offset_from(s.angle);
  return std::exp(-off * off / (2.0 * s.beam_width_deg * s.beam_width_deg));
}

void validate_target(const ScattererTarget& target, const SimConfig& config) {
  if (target.scatterers.empty()) throw Error(ErrorCode::EmptyTarget, "target has no scatterers");
  for (const auto& s : target.scatterers) {
    if (!(s.radius >= 0.0) || !(s.radius < config.standoff))
      throw Error(ErrorCode::InvalidArgument, "scatterer radius must lie in [0, standoff)");
    if (!(s.reflectivity > 0.0))
      throw Error(ErrorCode::InvalidArgument, "scatterer reflectivity must be positive");
    if (!(s.beam_width_deg >= 0.0))
      throw Error(ErrorCode::InvalidArgument, "scatterer beam width must be nonnegative");
  }
}

}  // namespace

void SimConfig::validate() const {
  if (n_angles < 1 || n_range < 1)
    throw Error(ErrorCode::InvalidArgument, "n_angles and n_range must be positive");
  // step_millideg must be integral for the binary format, and rows must tile the circle
  if (360000 % n_angles != 0)
    throw Error(ErrorCode::InvalidArgument, "n_angles must divide 360000 (step in whole millidegrees)");
  if (!(range_max > range_min)) throw Error(ErrorCode::InvalidArgument, "empty range window");
  if (!(pulse_width > 0.0)) throw Error(ErrorCode::InvalidArgument, "pulse width must be positive");
  if (!(noise_sigma >= 0.0)) throw Error(ErrorCode::InvalidArgument, "noise sigma must be nonnegative");
  if (!(standoff > 0.0)) throw Error(ErrorCode::InvalidArgument, "standoff must be positive");
}

double scatterer_range(const Scatterer& s, double standoff, LookAngle look) {
  return standoff - s.radius * std::cos((look - s.angle).radians());
}

Collection synthesize(const ScattererTarget& target, const SimConfig& config) {
  config.validate();
  validate_target(target, config);

  const double step = config.step();
  for (int row = 0; row < config.n_angles; ++row) {
    const LookAngle look(row * step);
    for (const auto& s : target.scatterers) {
      const double r = scatterer_range(s, config.standoff, look);
      if (r < config.range_min || r > config.range_max) {
        std::ostringstream os;
        os << "pulse centre " << r << " m at look angle " << look.degrees() << " deg is outside ["
           << config.range_min << ", " << config.range_max << "]";
        throw Error(ErrorCode::WindowTooNarrow, os.str());
      }
    }
  }

  Eigen::MatrixXcd profiles = Eigen::MatrixXcd::Zero(config.n_angles, config.n_range);
  const double spacing = config.bin_spacing();
  const double inv_two_var = 1.0 / (2.0 * config.pulse_width * config.pulse_width);
  const double omega = 2.0 * kPi * config.pulse_center_freq;

  for_each_row(config.n_angles, config.threads, [&](int row) {
    const LookAngle look(row * step);
    for (const auto& s : target.scatterers) {
      const double r = scatterer_range(s, config.standoff, look);
      const Complex amp = s.reflectivity * beam_gain(s, look) * std::polar(1.0, omega * r);
      for (int b = 0; b < config.n_range; ++b) {
        const double dx = config.range_min + b * spacing - r;
        profiles(row, b) += amp * std::exp(-dx * dx * inv_two_var);
      }
    }
  });

  add_noise(profiles, config);
  return mean_center(Collection(step, std::move(profiles)));
}

Collection synthesize_noise(const SimConfig& config) {
  config.validate();
  Eigen::MatrixXcd profiles = Eigen::MatrixXcd::Zero(config.n_angles, config.n_range);
  add_noise(profiles, config);
  return mean_center(Collection(config.step(), std::move(profiles)));
}

ScattererTarget seven_scatterer_target(LookAngle group_offset, double radius, double reflectivity,
                                       double beam_width_deg) {
  ScattererTarget target;
  for (double bearing : {0.0, 180.0})
    target.scatterers.push_back({radius, LookAngle(bearing), reflectivity, beam_width_deg});
  for (int k = 0; k < 5; ++k) {
    const LookAngle bearing(group_offset.degrees() + 72.0 * k);
    for (double pair_bearing : {0.0, 180.0}) {
      if (std::abs(bearing.signed_offset_from(LookAngle(pair_bearing))) < 1e-9) {
        std::ostringstream os;
        os << "group offset " << group_offset.degrees() << " deg puts a scatterer at "
           << pair_bearing << " deg";
        throw Error(ErrorCode::AlignedGroups, os.str());
      }
    }
    target.scatterers.push_back({radius, bearing, reflectivity, beam_width_deg});
  }
  return target;
}

ScattererTarget read_target(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open target file " + path.string());

  ScattererTarget target;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    std::vector<double> fields;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        fields.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw Error(ErrorCode::MalformedText,
                    path.string() + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
    }
    if (fields.size() != 3 && fields.size() != 4)
      throw Error(ErrorCode::MalformedText, path.string() + ":" + std::to_string(line_no) +
                                                ": expected radius,angle_deg,reflectivity[,beam_width_deg]");
    Scatterer s{fields[0], LookAngle(fields[1]), fields[2], fields.size() == 4 ? fields[3] : 0.0};
    if (!(s.radius >= 0.0) || !(s.reflectivity > 0.0) || !(s.beam_width_deg >= 0.0))
      throw Error(ErrorCode::InvalidArgument,
                  path.string() + ":" + std::to_string(line_no) + ": out-of-range scatterer");
    target.scatterers.push_back(s);
  }
  if (target.scatterers.empty()) throw Error(ErrorCode::EmptyTarget, path.string() + " lists no scatterers");
  return target;
}

namespace {
constexpr double kLoopTwist = 4.0;
}  // namespace

Collection synthesize_excursions(const std::vector<ExcursionSpec>& specs, int n_angles, int n_range) {
  if (n_angles < 1 || n_range < 1) throw Error(ErrorCode::InvalidArgument, "empty collection shape");
  const double step = kFullTurnDeg / n_angles;
  Eigen::MatrixXcd profiles = Eigen::MatrixXcd::Zero(n_angles, n_range);
  for (const auto& spec : specs) {
    if (spec.bin < 0 || spec.bin >= n_range)
      throw Error(ErrorCode::InvalidArgument, "excursion bin outside the range axis");
    if (!(spec.half_width_deg > 0.0) || spec.half_width_deg >= 180.0)
      throw Error(ErrorCode::InvalidArgument, "excursion half width must lie in (0, 180)");
    for (int row = 0; row < n_angles; ++row) {
      const double s = LookAngle(row * step).signed_offset_from(spec.center);
      if (std::abs(s) >= spec.half_width_deg) continue;
      // cos^2 bump: smooth, even, and exactly zero outside the support
      const double c = std::cos(0.5 * kPi * s / spec.half_width_deg);
      const double envelope = spec.amplitude * c * c;
      if (spec.shape == ExcursionShape::Flare) {
        profiles(row, spec.bin) += envelope;
      } else {
        // Phase sweeps monotonically through (-pi, pi), fastest at the peak, so the echo leaves
        // and returns to the origin by different paths without crossing itself.
        const double phase = kPi * std::atan(kLoopTwist * s / spec.half_width_deg) / std::atan(kLoopTwist);
        profiles(row, spec.bin) += envelope * std::polar(1.0, phase);
      }
    }
  }
  return Collection(step, std::move(profiles));
}

}  // namespace csas
