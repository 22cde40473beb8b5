#pragma once

// nlohmann/json bindings for the value types that appear in config files and
// reports. Private to the library.

#include <json.hpp>

#include "eventvad/core.hpp"
#include "eventvad/events.hpp"

namespace eventvad {

using ojson = nlohmann::ordered_json;

ojson to_json_value(const EvalConfig& cfg);
EvalConfig config_from_json(const ojson& j, const std::string& origin);

ojson to_json_value(const FrameMetrics& m);
FrameMetrics frame_metrics_from_json(const ojson& j);

ojson to_json_value(const EventMetrics& m);
EventMetrics event_metrics_from_json(const ojson& j);

ojson to_json_value(const AuditReport& a);
AuditReport audit_from_json(const ojson& j);

}  // namespace eventvad
