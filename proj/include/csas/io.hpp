#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

#include "csas/collection.hpp"
#include "csas/features.hpp"
#include "csas/persistence.hpp"

namespace csas::io {

// .csas binary layout, little-endian:
//   magic "CSAS" | u16 version = 1 | u32 n_angles | u32 n_range | u32 step_millideg
// followed by n_angles * n_range (f32 real, f32 imag) pairs, row-major by angle.
struct CsasBinHeader {
  std::array<char, 4> magic{'C', 'S', 'A', 'S'};
  std::uint16_t version = 1;
  std::uint32_t n_angles = 0;
  std::uint32_t n_range = 0;
  std::uint32_t step_millideg = 0;
};

inline constexpr std::size_t kHeaderBytes = 18;

// Binary for .csas; text otherwise (.csv: one row per angle, alternating re,im columns; a
// "# format=real" line selects one real column per bin). '#' lines are comments.
Collection read_collection(const std::filesystem::path& path);
void write_collection(const Collection& collection, const std::filesystem::path& path);

// Rows "angle_deg,c1,...,ck" (angle column empty when the cloud has no labels).
void write_cloud(const PointCloud& cloud, const std::filesystem::path& path);
PointCloud read_cloud(const std::filesystem::path& path);

// Header "dim,birth,death,censored"; infinite deaths as "inf".
void write_diagram(const PersistenceDiagram& diagram, const std::filesystem::path& path);
PersistenceDiagram read_diagram(const std::filesystem::path& path);

std::string diagram_svg(const PersistenceDiagram& diagram, const std::string& title = "");
// Pairwise-axis panels of the first k coordinates (at most 4).
std::string projection_svg(const PointCloud& projected, const std::string& title = "");
void write_diagram_svg(const PersistenceDiagram& diagram, const std::filesystem::path& path,
                       const std::string& title = "");
void write_projection_svg(const PointCloud& projected, const std::filesystem::path& path,
                          const std::string& title = "");

std::string report_text(const FeatureReport& report);
std::string report_rows(const FeatureReport& report);

// Writes to a sibling temporary file and renames over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);
std::string read_file(const std::filesystem::path& path);

// Shortest "%.9g"-style rendering used by every text writer.
std::string format_number(double value);

}  // namespace csas::io
