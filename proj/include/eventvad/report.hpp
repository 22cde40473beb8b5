#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eventvad/core.hpp"
#include "eventvad/events.hpp"
#include "eventvad/fusion.hpp"
#include "eventvad/io.hpp"

namespace eventvad {

inline constexpr const char* kToolVersion = "eventvad-1.0.0";

enum class PipelineMode {
  kRefined,   // smoothing + voting + short-event filter
  kBaseline,  // raw binarization grouped into events
};

const char* to_string(PipelineMode mode);
PipelineMode pipeline_mode_from_string(const std::string& name);

enum class ReportFormat { kJson, kCsv, kMarkdown };

ReportFormat report_format_from_string(const std::string& name);

// Event-level results for window scores produced by the dual-branch fusion.
struct DualBranchReport {
  FrameMetrics frame_metrics;  // on window scores spread back to frames
  EventMetrics event_metrics_eer;
  EventMetrics event_metrics_hprs;

  friend bool operator==(const DualBranchReport&, const DualBranchReport&) = default;
};

struct Report {
  std::string tool_version = kToolVersion;
  std::string dataset;
  PipelineMode mode = PipelineMode::kRefined;
  std::size_t video_count = 0;
  FrameMetrics frame_metrics;
  EventMetrics event_metrics_eer;
  EventMetrics event_metrics_hprs;
  std::optional<EventMetrics> event_metrics_fixed;  // threshold_strategy=fixed
  AuditReport audit;
  EvalConfig config_echo;
  std::optional<DualBranchReport> dual;

  friend bool operator==(const Report&, const Report&) = default;
};

// Everything known about one video once its files are loaded.
struct VideoData {
  ScoreSequence scores;
  FrameMask mask;
  std::optional<std::vector<BranchErrors>> branch_windows;

  const std::string& video_id() const { return scores.video_id(); }
};

struct EvaluationOptions {
  PipelineMode mode = PipelineMode::kRefined;
  std::size_t jobs = 1;
};

// Worker count from an explicit value, else EVENT_EVAL_JOBS, else 1.
std::size_t resolve_jobs(std::optional<std::size_t> requested);

// Runs fn(i) for i in [0, n) on up to `jobs` threads. The first exception
// (lowest index) is rethrown after all workers finish.
void parallel_for(std::size_t n, std::size_t jobs,
                  const std::function<void(std::size_t)>& fn);

std::vector<VideoData> load_videos(const io::Manifest& manifest,
                                   std::size_t jobs = 1);

// Videos are processed in video_id order regardless of input order.
Report evaluate_videos(std::vector<VideoData> videos, const EvalConfig& cfg,
                       const EvaluationOptions& options,
                       const std::string& dataset = {});

Report run_evaluation(const io::Manifest& manifest, const EvalConfig& cfg,
                      const EvaluationOptions& options = {});

// Threshold chosen by cfg.threshold_strategy on the concatenated scores.
double select_threshold(const FrameMetrics& metrics, const EvalConfig& cfg);

std::string emit_report(const Report& report, ReportFormat format);
Report report_from_json(const std::string& json_text);

// Standalone renderers used by the single-purpose CLI subcommands.
std::string emit_frame_metrics(const FrameMetrics& m, ReportFormat format);
std::string emit_event_metrics(const EventMetrics& m, ReportFormat format);
std::string emit_audit(const AuditReport& a, ReportFormat format);

}  // namespace eventvad
