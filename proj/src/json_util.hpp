#pragma once

#include <cmath>
#include <optional>

#include "json.hpp"

#include "homricci/flow.hpp"

namespace homricci::detail {

using json = nlohmann::ordered_json;

inline json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

/// Non-finite values have no JSON spelling; they become null.
inline json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json params_json(const MetricParams& m);
json options_json(const FlowOptions& o);
json monitors_json(const MonitorReport& r);
json identities_json(const std::vector<IdentityResidual>& ids);
json trajectory_json(const Trajectory& traj);

}  // namespace homricci::detail
