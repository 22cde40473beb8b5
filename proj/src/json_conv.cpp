#include "json_conv.hpp"

#include <set>

namespace eventvad {

ojson to_json_value(const EvalConfig& cfg) {
  ojson j;
  j["sigma_max"] = cfg.sigma_max;
  j["vote_window"] = cfg.vote_window;
  j["vote_stride"] = cfg.vote_stride;
  j["min_event_len"] = cfg.min_event_len;
  j["tiou_thresholds"] = cfg.tiou_thresholds;
  j["threshold_strategy"] = to_string(cfg.threshold_strategy);
  j["fixed_tau"] = cfg.fixed_tau;
  j["hprs_beta"] = cfg.hprs_beta;
  if (cfg.micro_threshold) {
    j["micro_threshold"] = *cfg.micro_threshold;
  } else {
    j["micro_threshold"] = nullptr;
  }
  return j;
}

EvalConfig config_from_json(const ojson& j, const std::string& origin) {
  static const std::set<std::string> kKnown = {
      "sigma_max",       "vote_window",        "vote_stride",
      "min_event_len",   "tiou_thresholds",    "threshold_strategy",
      "fixed_tau",       "hprs_beta",          "micro_threshold"};
  if (!j.is_object()) {
    throw Error(ErrorCode::kInvalidConfig, "config must be a JSON object", {},
                origin);
  }
  EvalConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (!kKnown.count(key)) {
        throw Error(ErrorCode::kInvalidConfig, "unknown config key '" + key + "'",
                    {}, origin);
      }
    }
    if (j.contains("sigma_max")) cfg.sigma_max = j.at("sigma_max").get<int>();
    if (j.contains("vote_window")) {
      cfg.vote_window = j.at("vote_window").get<std::size_t>();
    }
    if (j.contains("vote_stride")) {
      cfg.vote_stride = j.at("vote_stride").get<std::size_t>();
    }
    if (j.contains("min_event_len")) {
      cfg.min_event_len = j.at("min_event_len").get<std::size_t>();
    }
    if (j.contains("tiou_thresholds")) {
      cfg.tiou_thresholds = j.at("tiou_thresholds").get<std::vector<double>>();
    }
    if (j.contains("threshold_strategy")) {
      cfg.threshold_strategy = threshold_strategy_from_string(
          j.at("threshold_strategy").get<std::string>());
    }
    if (j.contains("fixed_tau")) cfg.fixed_tau = j.at("fixed_tau").get<double>();
    if (j.contains("hprs_beta")) cfg.hprs_beta = j.at("hprs_beta").get<double>();
    if (j.contains("micro_threshold") && !j.at("micro_threshold").is_null()) {
      cfg.micro_threshold = j.at("micro_threshold").get<std::size_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, e.what(), {}, origin);
  }
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw e.with_origin({}, origin);
  }
  return cfg;
}

ojson to_json_value(const FrameMetrics& m) {
  ojson j;
  j["auc_roc"] = m.auc_roc;
  j["auc_pr"] = m.auc_pr;
  j["eer"] = m.eer;
  j["tau_eer"] = m.tau_eer;
  j["tau_hprs"] = m.tau_hprs;
  j["f1_at_tau_eer"] = m.f1_at_tau_eer;
  j["f1_at_tau_hprs"] = m.f1_at_tau_hprs;
  return j;
}

FrameMetrics frame_metrics_from_json(const ojson& j) {
  FrameMetrics m;
  m.auc_roc = j.at("auc_roc").get<double>();
  m.auc_pr = j.at("auc_pr").get<double>();
  m.eer = j.at("eer").get<double>();
  m.tau_eer = j.at("tau_eer").get<double>();
  m.tau_hprs = j.at("tau_hprs").get<double>();
  m.f1_at_tau_eer = j.at("f1_at_tau_eer").get<double>();
  m.f1_at_tau_hprs = j.at("f1_at_tau_hprs").get<double>();
  return m;
}

ojson to_json_value(const EventMetrics& m) {
  ojson per = ojson::array();
  for (const auto& t : m.per_tiou) {
    ojson row;
    row["tiou"] = t.threshold;
    row["precision"] = t.precision;
    row["recall"] = t.recall;
    row["f1"] = t.f1;
    row["tp"] = t.tp;
    row["fp"] = t.fp;
    row["fn"] = t.fn;
    per.push_back(std::move(row));
  }
  ojson j;
  j["per_tiou"] = std::move(per);
  j["average_f1"] = m.average_f1;
  return j;
}

EventMetrics event_metrics_from_json(const ojson& j) {
  EventMetrics m;
  for (const auto& row : j.at("per_tiou")) {
    TiouMetrics t;
    t.threshold = row.at("tiou").get<double>();
    t.precision = row.at("precision").get<double>();
    t.recall = row.at("recall").get<double>();
    t.f1 = row.at("f1").get<double>();
    t.tp = row.at("tp").get<std::size_t>();
    t.fp = row.at("fp").get<std::size_t>();
    t.fn = row.at("fn").get<std::size_t>();
    m.per_tiou.push_back(t);
  }
  m.average_f1 = j.at("average_f1").get<double>();
  return m;
}

ojson to_json_value(const AuditReport& a) {
  ojson j;
  j["normal_frames"] = a.normal_frames;
  j["anomalous_frames"] = a.anomalous_frames;
  j["event_count"] = a.event_count;
  j["avg_duration_frames"] = a.avg_duration_frames;
  j["min_duration"] = a.min_duration;
  j["max_duration"] = a.max_duration;
  j["micro_event_count"] = a.micro_event_count;
  j["micro_threshold"] = a.micro_threshold;
  return j;
}

AuditReport audit_from_json(const ojson& j) {
  AuditReport a;
  a.normal_frames = j.at("normal_frames").get<std::size_t>();
  a.anomalous_frames = j.at("anomalous_frames").get<std::size_t>();
  a.event_count = j.at("event_count").get<std::size_t>();
  a.avg_duration_frames = j.at("avg_duration_frames").get<double>();
  a.min_duration = j.at("min_duration").get<std::size_t>();
  a.max_duration = j.at("max_duration").get<std::size_t>();
  a.micro_event_count = j.at("micro_event_count").get<std::size_t>();
  a.micro_threshold = j.at("micro_threshold").get<std::size_t>();
  return a;
}

}  // namespace eventvad
