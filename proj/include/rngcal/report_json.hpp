#pragma once

#include <json.hpp>

#include "rngcal/stats.hpp"

namespace rngcal {

/// {statistic_bits, p_value, p_value_kind, alpha, decision, components, notes}
[[nodiscard]] nlohmann::ordered_json report_to_json(const TestReport& report);

[[nodiscard]] nlohmann::ordered_json scan_to_json(const ScanResult& scan);

}  // namespace rngcal
