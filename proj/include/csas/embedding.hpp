#pragma once

#include <string_view>
#include <vector>

#include "csas/angle.hpp"
#include "csas/collection.hpp"

namespace csas {

// Ordered angle lags for the lagged embedding. Nonempty and pairwise distinct on the circle.
class LagSet {
 public:
  explicit LagSet(std::vector<LookAngle> lags);
  static LagSet from_degrees(const std::vector<double>& degrees);
  // Comma-separated degrees, e.g. "0,4,25".
  static LagSet parse(std::string_view text);

  const std::vector<LookAngle>& lags() const { return lags_; }
  std::size_t size() const { return lags_.size(); }

 private:
  std::vector<LookAngle> lags_;
};

// Row i becomes [realify(u(i*step + lag_1)) | ... | realify(u(i*step + lag_N))] with circular
// indexing. Throws OffGridLag when a lag is not a multiple of the collection step.
PointCloud embed(const Collection& collection, const LagSet& lags);

}  // namespace csas
