#include "csas/embedding.hpp"

#include <charconv>
#include <sstream>
#include <string>

#include "csas/error.hpp"

namespace csas {

LagSet::LagSet(std::vector<LookAngle> lags) : lags_(std::move(lags)) {
  if (lags_.empty()) throw Error(ErrorCode::InvalidLags, "at least one lag is required");
  for (std::size_t a = 0; a < lags_.size(); ++a)
    for (std::size_t b = a + 1; b < lags_.size(); ++b)
      if (std::abs(lags_[a].signed_offset_from(lags_[b])) < 1e-9) {
        std::ostringstream os;
        os << "lags " << a << " and " << b << " coincide at " << lags_[a].degrees() << " deg";
        throw Error(ErrorCode::InvalidLags, os.str());
      }
}

LagSet LagSet::from_degrees(const std::vector<double>& degrees) {
  std::vector<LookAngle> lags;
  lags.reserve(degrees.size());
  for (double d : degrees) lags.emplace_back(d);
  return LagSet(std::move(lags));
}

LagSet LagSet::parse(std::string_view text) {
  std::vector<double> degrees;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string item(text.substr(pos, comma - pos));
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw Error(ErrorCode::InvalidLags, "empty lag in '" + std::string(text) + "'");
    item = item.substr(first, last - first + 1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || ptr != item.data() + item.size())
      throw Error(ErrorCode::InvalidLags, "bad lag '" + item + "'");
    degrees.push_back(value);
    pos = comma + 1;
  }
  return from_degrees(degrees);
}

PointCloud embed(const Collection& collection, const LagSet& lags) {
  std::vector<Eigen::Index> shifts;
  shifts.reserve(lags.size());
  for (const auto& lag : lags.lags()) {
    try {
      shifts.push_back(collection.index_of(lag));
    } catch (const Error&) {
      std::ostringstream os;
      os << "lag " << lag.degrees() << " deg is not a multiple of the " << collection.step() << " deg step";
      throw Error(ErrorCode::OffGridLag, os.str());
    }
  }

  const PointCloud base = as_point_cloud(collection);
  const Eigen::Index m = base.size();
  const Eigen::Index width = base.dim();

  PointCloud cloud;
  cloud.points.resize(m, width * static_cast<Eigen::Index>(shifts.size()));
  for (std::size_t k = 0; k < shifts.size(); ++k) {
    auto block = cloud.points.middleCols(static_cast<Eigen::Index>(k) * width, width);
    for (Eigen::Index i = 0; i < m; ++i) block.row(i) = base.points.row((i + shifts[k]) % m);
  }
  cloud.labels = base.labels;
  return cloud;
}

}  // namespace csas
