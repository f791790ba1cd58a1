#include "rngcal/report_json.hpp"

namespace rngcal {

nlohmann::ordered_json report_to_json(const TestReport& report) {
  nlohmann::ordered_json j;
  j["test"] = report.test_id;
  j["statistic_bits"] = report.statistic;
  j["p_value"] = report.p_value;
  j["p_value_kind"] = to_string(report.p_value_kind);
  j["alpha"] = report.alpha;
  j["decision"] = to_string(report.decision);
  j["components"] = nlohmann::ordered_json::array();
  for (const ComponentResult& c : report.components) {
    j["components"].push_back({{"test", c.test_id},
                               {"statistic_bits", c.statistic},
                               {"p_value", c.p_value},
                               {"p_value_kind", to_string(c.p_value_kind)},
                               {"weight", c.weight}});
  }
  if (!report.notes.empty()) {
    j["notes"] = report.notes;
  }
  return j;
}

nlohmann::ordered_json scan_to_json(const ScanResult& scan) {
  nlohmann::ordered_json j;
  j["steps"] = nlohmann::ordered_json::array();
  for (const ScanStep& s : scan.steps) {
    j["steps"].push_back({{"length", s.length},
                          {"statistic_bits", s.statistic},
                          {"p_value", s.p_value},
                          {"decision", s.rejected ? "reject" : "accept"}});
  }
  if (scan.first_rejection) {
    j["first_rejection"] = *scan.first_rejection;
  } else {
    j["first_rejection"] = nullptr;
  }
  return j;
}

}  // namespace rngcal
