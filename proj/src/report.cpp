#include "eventvad/report.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "eventvad/matching.hpp"
#include "eventvad/thresholds.hpp"
#include "json_conv.hpp"

namespace eventvad {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::vector<EventSet> run_events(const std::vector<VideoData>& videos,
                                 double tau, const EvalConfig& cfg,
                                 PipelineMode mode, std::size_t jobs) {
  std::vector<EventSet> out(videos.size());
  parallel_for(videos.size(), jobs, [&](std::size_t v) {
    try {
      out[v] = mode == PipelineMode::kRefined
                   ? refine_pipeline(videos[v].scores, tau, cfg)
                   : baseline_pipeline(videos[v].scores, tau);
    } catch (const Error& e) {
      throw e.with_origin(videos[v].video_id(), {});
    }
  });
  return out;
}

std::optional<DualBranchReport> evaluate_dual(
    const std::vector<VideoData>& videos, const std::vector<EventSet>& gt,
    const EvalConfig& cfg, std::size_t jobs) {
  const auto with_branches = std::count_if(
      videos.begin(), videos.end(),
      [](const VideoData& v) { return v.branch_windows.has_value(); });
  if (with_branches == 0) return std::nullopt;
  if (static_cast<std::size_t>(with_branches) != videos.size()) {
    throw Error(ErrorCode::kParseError,
                "branch errors must be supplied for every video or for none");
  }

  std::vector<std::vector<WindowScore>> window_scores(videos.size());
  std::vector<ScoreSequence> frame_scores;
  std::vector<std::vector<double>> frames(videos.size());
  parallel_for(videos.size(), jobs, [&](std::size_t v) {
    try {
      for (const auto& w : *videos[v].branch_windows) {
        window_scores[v].push_back(score_window(w));
      }
      frames[v] = window_scores_to_frames(window_scores[v], videos[v].mask.size());
    } catch (const Error& e) {
      throw e.with_origin(videos[v].video_id(), {});
    }
  });

  std::vector<double> all_scores;
  std::vector<std::uint8_t> all_labels;
  for (std::size_t v = 0; v < videos.size(); ++v) {
    all_scores.insert(all_scores.end(), frames[v].begin(), frames[v].end());
    all_labels.insert(all_labels.end(), videos[v].mask.values().begin(),
                      videos[v].mask.values().end());
  }

  DualBranchReport dual;
  dual.frame_metrics = compute_frame_metrics(all_scores, all_labels, cfg.hprs_beta);
  auto events_at = [&](double tau) {
    std::vector<EventSet> preds(videos.size());
    for (std::size_t v = 0; v < videos.size(); ++v) {
      preds[v] = windows_to_events(window_scores[v], tau, videos[v].mask.size(),
                                   videos[v].video_id());
    }
    return preds;
  };
  dual.event_metrics_eer = multi_threshold_eval(
      gt, events_at(dual.frame_metrics.tau_eer), cfg.tiou_thresholds);
  dual.event_metrics_hprs = multi_threshold_eval(
      gt, events_at(dual.frame_metrics.tau_hprs), cfg.tiou_thresholds);
  return dual;
}

ojson report_to_json(const Report& r) {
  ojson j;
  j["tool_version"] = r.tool_version;
  j["dataset"] = r.dataset;
  j["mode"] = to_string(r.mode);
  j["video_count"] = r.video_count;
  j["frame_metrics"] = to_json_value(r.frame_metrics);
  j["event_metrics_eer"] = to_json_value(r.event_metrics_eer);
  j["event_metrics_hprs"] = to_json_value(r.event_metrics_hprs);
  if (r.event_metrics_fixed) {
    j["event_metrics_fixed"] = to_json_value(*r.event_metrics_fixed);
  }
  j["audit"] = to_json_value(r.audit);
  j["config"] = to_json_value(r.config_echo);
  if (r.dual) {
    ojson d;
    d["frame_metrics"] = to_json_value(r.dual->frame_metrics);
    d["event_metrics_eer"] = to_json_value(r.dual->event_metrics_eer);
    d["event_metrics_hprs"] = to_json_value(r.dual->event_metrics_hprs);
    j["dual_branch"] = std::move(d);
  }
  return j;
}

void csv_frame(std::ostream& out, const std::string& section,
               const FrameMetrics& m) {
  const std::pair<const char*, double> rows[] = {
      {"auc_roc", m.auc_roc},          {"auc_pr", m.auc_pr},
      {"eer", m.eer},                  {"tau_eer", m.tau_eer},
      {"tau_hprs", m.tau_hprs},        {"f1_at_tau_eer", m.f1_at_tau_eer},
      {"f1_at_tau_hprs", m.f1_at_tau_hprs}};
  for (const auto& [name, value] : rows) {
    out << section << ',' << name << ",," << shortest(value) << '\n';
  }
}

void csv_events(std::ostream& out, const std::string& section,
                const EventMetrics& m) {
  for (const auto& t : m.per_tiou) {
    const std::string tiou = shortest(t.threshold);
    out << section << ",precision," << tiou << ',' << shortest(t.precision) << '\n';
    out << section << ",recall," << tiou << ',' << shortest(t.recall) << '\n';
    out << section << ",f1," << tiou << ',' << shortest(t.f1) << '\n';
    out << section << ",tp," << tiou << ',' << t.tp << '\n';
    out << section << ",fp," << tiou << ',' << t.fp << '\n';
    out << section << ",fn," << tiou << ',' << t.fn << '\n';
  }
  out << section << ",average_f1,," << shortest(m.average_f1) << '\n';
}

void csv_audit(std::ostream& out, const AuditReport& a) {
  out << "audit,normal_frames,," << a.normal_frames << '\n';
  out << "audit,anomalous_frames,," << a.anomalous_frames << '\n';
  out << "audit,event_count,," << a.event_count << '\n';
  out << "audit,avg_duration_frames,," << shortest(a.avg_duration_frames) << '\n';
  out << "audit,min_duration,," << a.min_duration << '\n';
  out << "audit,max_duration,," << a.max_duration << '\n';
  out << "audit,micro_event_count,," << a.micro_event_count << '\n';
  out << "audit,micro_threshold,," << a.micro_threshold << '\n';
}

void md_frame(std::ostream& out, const FrameMetrics& m) {
  out << "| Metric | Value |\n|---|---|\n";
  out << "| AUC-ROC | " << fixed4(m.auc_roc) << " |\n";
  out << "| AUC-PR | " << fixed4(m.auc_pr) << " |\n";
  out << "| EER | " << fixed4(m.eer) << " |\n";
  out << "| tau_EER | " << shortest(m.tau_eer) << " |\n";
  out << "| tau_Hprs | " << shortest(m.tau_hprs) << " |\n";
  out << "| F1@tau_EER | " << fixed4(m.f1_at_tau_eer) << " |\n";
  out << "| F1@tau_Hprs | " << fixed4(m.f1_at_tau_hprs) << " |\n";
}

void md_events(std::ostream& out, const EventMetrics& m) {
  out << "| tIoU | Prec. | Rec. | F1 | TP | FP | FN |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (const auto& t : m.per_tiou) {
    out << "| " << shortest(t.threshold) << " | " << fixed4(t.precision) << " | "
        << fixed4(t.recall) << " | " << fixed4(t.f1) << " | " << t.tp << " | "
        << t.fp << " | " << t.fn << " |\n";
  }
  out << "\nAverage F1: " << fixed4(m.average_f1) << "\n";
}

void md_audit(std::ostream& out, const AuditReport& a) {
  out << "| Characteristic | Value |\n|---|---|\n";
  out << "| Normal Frames | " << a.normal_frames << " |\n";
  out << "| Anomalous Frames | " << a.anomalous_frames << " |\n";
  out << "| Anomalous Events | " << a.event_count << " |\n";
  out << "| Avg. Duration (f) | " << fixed4(a.avg_duration_frames) << " |\n";
  out << "| Min Duration (f) | " << a.min_duration << " |\n";
  out << "| Max Duration (f) | " << a.max_duration << " |\n";
  out << "| Micro-events (< " << a.micro_threshold << " f) | "
      << a.micro_event_count << " |\n";
}

}  // namespace

const char* to_string(PipelineMode mode) {
  return mode == PipelineMode::kRefined ? "refined" : "baseline";
}

PipelineMode pipeline_mode_from_string(const std::string& name) {
  const std::string l = lower(name);
  if (l == "refined") return PipelineMode::kRefined;
  if (l == "baseline") return PipelineMode::kBaseline;
  throw Error(ErrorCode::kInvalidConfig, "unknown pipeline mode '" + name + "'");
}

ReportFormat report_format_from_string(const std::string& name) {
  const std::string l = lower(name);
  if (l == "json") return ReportFormat::kJson;
  if (l == "csv") return ReportFormat::kCsv;
  if (l == "markdown" || l == "md") return ReportFormat::kMarkdown;
  throw Error(ErrorCode::kInvalidConfig, "unknown report format '" + name + "'");
}

std::size_t resolve_jobs(std::optional<std::size_t> requested) {
  if (requested && *requested > 0) return *requested;
  if (const char* env = std::getenv("EVENT_EVAL_JOBS")) {
    std::size_t n = 0;
    const std::string s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec == std::errc() && ptr == s.data() + s.size() && n > 0) return n;
  }
  return 1;
}

void parallel_for(std::size_t n, std::size_t jobs,
                  const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_index = n;
  std::exception_ptr failure;
  auto worker = [&]() {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(jobs);
  for (std::size_t t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<VideoData> load_videos(const io::Manifest& manifest,
                                   std::size_t jobs) {
  std::vector<std::optional<VideoData>> slots(manifest.videos.size());
  parallel_for(manifest.videos.size(), jobs, [&](std::size_t v) {
    const auto& entry = manifest.videos[v];
    ScoreSequence scores = io::load_scores(entry.scores_path, entry.video_id);
    FrameMask mask = io::load_mask(entry.mask_path, entry.video_id);
    try {
      validate_pair(scores, mask);
    } catch (const Error& e) {
      throw e.with_origin(entry.video_id, entry.scores_path.string());
    }
    std::optional<std::vector<BranchErrors>> branches;
    if (entry.branch_errors_path) {
      try {
        branches = io::load_branch_errors(*entry.branch_errors_path);
      } catch (const Error& e) {
        throw e.with_origin(entry.video_id, entry.branch_errors_path->string());
      }
    }
    slots[v] = VideoData{std::move(scores), std::move(mask), std::move(branches)};
  });
  std::vector<VideoData> videos;
  videos.reserve(slots.size());
  for (auto& s : slots) videos.push_back(std::move(*s));
  return videos;
}

double select_threshold(const FrameMetrics& metrics, const EvalConfig& cfg) {
  switch (cfg.threshold_strategy) {
    case ThresholdStrategy::kEer: return metrics.tau_eer;
    case ThresholdStrategy::kHprs: return metrics.tau_hprs;
    case ThresholdStrategy::kFixed: return cfg.fixed_tau;
  }
  return metrics.tau_eer;
}

Report evaluate_videos(std::vector<VideoData> videos, const EvalConfig& cfg,
                       const EvaluationOptions& options,
                       const std::string& dataset) {
  cfg.validate();
  if (videos.empty()) {
    throw Error(ErrorCode::kParseError, "no videos to evaluate");
  }
  std::sort(videos.begin(), videos.end(),
            [](const VideoData& a, const VideoData& b) {
              return a.video_id() < b.video_id();
            });
  for (std::size_t v = 0; v < videos.size(); ++v) {
    if (v > 0 && videos[v].video_id() == videos[v - 1].video_id()) {
      throw Error(ErrorCode::kDuplicateVideoId, "video listed twice",
                  videos[v].video_id());
    }
    validate_pair(videos[v].scores, videos[v].mask);
  }
  const std::size_t jobs = std::max<std::size_t>(1, options.jobs);

  std::vector<double> all_scores;
  std::vector<std::uint8_t> all_labels;
  std::vector<FrameMask> masks;
  std::vector<EventSet> gt;
  for (const auto& v : videos) {
    all_scores.insert(all_scores.end(), v.scores.values().begin(),
                      v.scores.values().end());
    all_labels.insert(all_labels.end(), v.mask.values().begin(),
                      v.mask.values().end());
    masks.push_back(v.mask);
    gt.push_back(mask_to_events(v.mask));
  }

  Report report;
  report.dataset = dataset;
  report.mode = options.mode;
  report.video_count = videos.size();
  report.config_echo = cfg;
  report.frame_metrics =
      compute_frame_metrics(all_scores, all_labels, cfg.hprs_beta);

  const auto& fm = report.frame_metrics;
  report.event_metrics_eer = multi_threshold_eval(
      gt, run_events(videos, fm.tau_eer, cfg, options.mode, jobs),
      cfg.tiou_thresholds);
  report.event_metrics_hprs = multi_threshold_eval(
      gt, run_events(videos, fm.tau_hprs, cfg, options.mode, jobs),
      cfg.tiou_thresholds);
  if (cfg.threshold_strategy == ThresholdStrategy::kFixed) {
    report.event_metrics_fixed = multi_threshold_eval(
        gt, run_events(videos, cfg.fixed_tau, cfg, options.mode, jobs),
        cfg.tiou_thresholds);
  }
  report.audit = audit_dataset(masks, cfg.effective_micro_threshold());
  report.dual = evaluate_dual(videos, gt, cfg, jobs);
  return report;
}

Report run_evaluation(const io::Manifest& manifest, const EvalConfig& cfg,
                      const EvaluationOptions& options) {
  return evaluate_videos(load_videos(manifest, options.jobs), cfg, options,
                         manifest.dataset_name);
}

std::string emit_report(const Report& report, ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::kJson:
      out << report_to_json(report).dump(2) << '\n';
      break;
    case ReportFormat::kCsv:
      out << "section,metric,tiou,value\n";
      out << "meta,tool_version,," << report.tool_version << '\n';
      out << "meta,dataset,," << report.dataset << '\n';
      out << "meta,mode,," << to_string(report.mode) << '\n';
      out << "meta,video_count,," << report.video_count << '\n';
      csv_frame(out, "frame", report.frame_metrics);
      csv_events(out, "event_eer", report.event_metrics_eer);
      csv_events(out, "event_hprs", report.event_metrics_hprs);
      if (report.event_metrics_fixed) {
        csv_events(out, "event_fixed", *report.event_metrics_fixed);
      }
      csv_audit(out, report.audit);
      if (report.dual) {
        csv_frame(out, "dual_frame", report.dual->frame_metrics);
        csv_events(out, "dual_event_eer", report.dual->event_metrics_eer);
        csv_events(out, "dual_event_hprs", report.dual->event_metrics_hprs);
      }
      break;
    case ReportFormat::kMarkdown:
      out << "# Evaluation report: " << (report.dataset.empty() ? "-" : report.dataset)
          << "\n\n";
      out << "Tool: " << report.tool_version << ", mode: " << to_string(report.mode)
          << ", videos: " << report.video_count << "\n\n";
      out << "## Frame-level\n\n";
      md_frame(out, report.frame_metrics);
      out << "\n## Event-level using tau_EER = "
          << shortest(report.frame_metrics.tau_eer) << "\n\n";
      md_events(out, report.event_metrics_eer);
      out << "\n## Event-level using tau_Hprs = "
          << shortest(report.frame_metrics.tau_hprs) << "\n\n";
      md_events(out, report.event_metrics_hprs);
      if (report.event_metrics_fixed) {
        out << "\n## Event-level using fixed tau = "
            << shortest(report.config_echo.fixed_tau) << "\n\n";
        md_events(out, *report.event_metrics_fixed);
      }
      out << "\n## Ground-truth audit\n\n";
      md_audit(out, report.audit);
      if (report.dual) {
        out << "\n## Dual-branch fusion\n\n";
        md_frame(out, report.dual->frame_metrics);
        out << "\n### Event-level using tau_EER\n\n";
        md_events(out, report.dual->event_metrics_eer);
        out << "\n### Event-level using tau_Hprs\n\n";
        md_events(out, report.dual->event_metrics_hprs);
      }
      out << "\n## Configuration\n\n```json\n"
          << to_json_value(report.config_echo).dump(2) << "\n```\n";
      break;
  }
  return out.str();
}

Report report_from_json(const std::string& json_text) {
  try {
    const ojson j = ojson::parse(json_text);
    Report r;
    r.tool_version = j.at("tool_version").get<std::string>();
    r.dataset = j.at("dataset").get<std::string>();
    r.mode = pipeline_mode_from_string(j.at("mode").get<std::string>());
    r.video_count = j.at("video_count").get<std::size_t>();
    r.frame_metrics = frame_metrics_from_json(j.at("frame_metrics"));
    r.event_metrics_eer = event_metrics_from_json(j.at("event_metrics_eer"));
    r.event_metrics_hprs = event_metrics_from_json(j.at("event_metrics_hprs"));
    if (j.contains("event_metrics_fixed")) {
      r.event_metrics_fixed = event_metrics_from_json(j.at("event_metrics_fixed"));
    }
    r.audit = audit_from_json(j.at("audit"));
    r.config_echo = config_from_json(j.at("config"), "<report>");
    if (j.contains("dual_branch")) {
      const auto& d = j.at("dual_branch");
      DualBranchReport dual;
      dual.frame_metrics = frame_metrics_from_json(d.at("frame_metrics"));
      dual.event_metrics_eer = event_metrics_from_json(d.at("event_metrics_eer"));
      dual.event_metrics_hprs = event_metrics_from_json(d.at("event_metrics_hprs"));
      r.dual = dual;
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what(), {}, "<report>");
  }
}

std::string emit_frame_metrics(const FrameMetrics& m, ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::kJson: out << to_json_value(m).dump(2) << '\n'; break;
    case ReportFormat::kCsv:
      out << "section,metric,tiou,value\n";
      csv_frame(out, "frame", m);
      break;
    case ReportFormat::kMarkdown: md_frame(out, m); break;
  }
  return out.str();
}

std::string emit_event_metrics(const EventMetrics& m, ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::kJson: out << to_json_value(m).dump(2) << '\n'; break;
    case ReportFormat::kCsv:
      out << "section,metric,tiou,value\n";
      csv_events(out, "event", m);
      break;
    case ReportFormat::kMarkdown: md_events(out, m); break;
  }
  return out.str();
}

std::string emit_audit(const AuditReport& a, ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::kJson: out << to_json_value(a).dump(2) << '\n'; break;
    case ReportFormat::kCsv:
      out << "section,metric,tiou,value\n";
      csv_audit(out, a);
      break;
    case ReportFormat::kMarkdown: md_audit(out, a); break;
  }
  return out.str();
}

}  // namespace eventvad
