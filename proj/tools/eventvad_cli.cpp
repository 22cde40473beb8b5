// eventvad: frame-to-event refinement and event-level evaluation of per-frame
// anomaly scores.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "eventvad/events.hpp"
#include "eventvad/fusion.hpp"
#include "eventvad/io.hpp"
#include "eventvad/matching.hpp"
#include "eventvad/report.hpp"
#include "eventvad/synthetic.hpp"
#include "eventvad/thresholds.hpp"

namespace {

using namespace eventvad;

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct GlobalOptions {
  std::string config_path;
  std::string format = "json";
  std::size_t jobs = 0;
  std::uint64_t seed = 7;
  std::string output;
};

EvalConfig load_effective_config(const GlobalOptions& g) {
  return g.config_path.empty() ? EvalConfig{} : io::load_config(g.config_path);
}

void write_output(const GlobalOptions& g, const std::string& text) {
  if (g.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.output, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write output", {}, g.output);
  out << text;
}

std::string events_csv(const std::vector<EventSet>& sets) {
  std::ostringstream out;
  io::write_events(out, sets);
  return out.str();
}

FrameMetrics frame_metrics_of(const std::vector<VideoData>& videos,
                              const EvalConfig& cfg) {
  std::vector<ScoreSequence> scores;
  std::vector<FrameMask> masks;
  for (const auto& v : videos) {
    scores.push_back(v.scores);
    masks.push_back(v.mask);
  }
  const auto data = concatenate(scores, masks);
  return compute_frame_metrics(data.scores, data.labels, cfg.hprs_beta);
}

std::string defaults_help() {
  const EvalConfig d;
  std::ostringstream s;
  s << "Configuration defaults (override with --config <file.json>):\n"
    << "  sigma_max=" << d.sigma_max << "  vote_window=" << d.vote_window
    << "  vote_stride=" << d.vote_stride << "  min_event_len=" << d.min_event_len
    << "\n  tiou_thresholds=[0.2, 0.3, 0.4, 0.5]  threshold_strategy="
    << to_string(d.threshold_strategy) << "  hprs_beta=" << d.hprs_beta
    << "\n  micro_threshold=min_event_len\n"
    << "Scores >= tau are anomalous. Worker count falls back to EVENT_EVAL_JOBS.\n"
    << "Exit codes: 0 success, 1 validation error, 2 I/O error.";
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event-level evaluation toolkit for per-frame anomaly scores",
               "eventvad"};
  app.footer(defaults_help());
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--config", g.config_path, "JSON file overriding config defaults");
  app.add_option("--format", g.format, "Output format: json, csv or markdown")
      ->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads (0: EVENT_EVAL_JOBS or 1)")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for fixture generation")
      ->capture_default_str();
  app.add_option("-o,--output", g.output, "Write to this file instead of stdout");

  std::string manifest_path;

  auto* audit = app.add_subcommand("audit", "Event statistics of ground-truth masks");
  std::optional<std::size_t> micro_threshold;
  audit->add_option("--manifest", manifest_path, "Manifest file")->required();
  audit->add_option("--micro-threshold", micro_threshold,
                    "Events shorter than this count as micro-events");

  auto* frame = app.add_subcommand("frame-metrics",
                                   "AUC-ROC, AUC-PR, EER and operating thresholds");
  frame->add_option("--manifest", manifest_path, "Manifest file")->required();

  auto* refine = app.add_subcommand(
      "refine", "Turn scores into events (threshold from config strategy)");
  std::optional<double> tau;
  std::string scores_path;
  std::string video_id = "video";
  bool baseline = false;
  auto* refine_manifest =
      refine->add_option("--manifest", manifest_path, "Manifest file");
  auto* refine_scores =
      refine->add_option("--scores", scores_path, "Single scores CSV");
  refine_manifest->excludes(refine_scores);
  refine->add_option("--tau", tau, "Explicit threshold (required with --scores)");
  refine->add_option("--video-id", video_id, "Video id for --scores input");
  refine->add_flag("--baseline", baseline, "Raw binarization, no refinement");

  auto* event = app.add_subcommand("event-metrics",
                                   "Multi-threshold tIoU precision/recall/F1");
  std::string gt_path;
  std::string pred_path;
  event->add_option("--gt", gt_path, "Ground-truth events CSV")->required();
  event->add_option("--pred", pred_path, "Predicted events CSV")->required();

  auto* fuse = app.add_subcommand("fuse",
                                  "Dual-branch fusion of window errors into events");
  std::string branch_path;
  std::size_t frames = 0;
  double fuse_tau = 0.0;
  fuse->add_option("--branch-errors", branch_path, "Branch errors file")->required();
  fuse->add_option("--tau", fuse_tau, "Event score threshold")->required();
  fuse->add_option("--frames", frames,
                   "Video length (default: end of the last window)");
  fuse->add_option("--video-id", video_id, "Video id for the output");

  auto* evaluate = app.add_subcommand("evaluate", "Full evaluation report");
  std::string mode = "refined";
  evaluate->add_option("--manifest", manifest_path, "Manifest file")->required();
  evaluate->add_option("--mode", mode, "refined or baseline")->capture_default_str();

  auto* generate = app.add_subcommand("generate", "Write a synthetic fixture");
  std::string out_dir;
  synthetic::FixtureOptions fx;
  std::string dataset_name = "synthetic";
  generate->add_option("--out", out_dir, "Output directory")->required();
  generate->add_option("--videos", fx.videos, "Number of videos")->capture_default_str();
  generate->add_option("--noise", fx.noise_sd, "Per-frame noise stddev")
      ->capture_default_str();
  generate->add_flag("--branch-errors", fx.branch_errors,
                     "Also write dual-branch window errors");
  generate->add_option("--dataset", dataset_name, "Dataset name")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    const ReportFormat format = report_format_from_string(g.format);
    const std::size_t jobs = resolve_jobs(g.jobs > 0 ? std::optional(g.jobs)
                                                     : std::nullopt);
    const EvalConfig cfg = load_effective_config(g);

    if (*audit) {
      const auto videos = load_videos(io::load_manifest(manifest_path), jobs);
      std::vector<FrameMask> masks;
      for (const auto& v : videos) masks.push_back(v.mask);
      const auto report = audit_dataset(
          masks, micro_threshold.value_or(cfg.effective_micro_threshold()));
      write_output(g, emit_audit(report, format));
    } else if (*frame) {
      const auto videos = load_videos(io::load_manifest(manifest_path), jobs);
      write_output(g, emit_frame_metrics(frame_metrics_of(videos, cfg), format));
    } else if (*refine) {
      auto run = [&](const ScoreSequence& s, double t) {
        return baseline ? baseline_pipeline(s, t) : refine_pipeline(s, t, cfg);
      };
      std::vector<EventSet> sets;
      if (!scores_path.empty()) {
        if (!tau) {
          throw Error(ErrorCode::kInvalidConfig, "--scores requires --tau");
        }
        sets.push_back(run(io::load_scores(scores_path, video_id), *tau));
      } else if (!manifest_path.empty()) {
        const auto videos = load_videos(io::load_manifest(manifest_path), jobs);
        const double t = tau ? *tau : select_threshold(frame_metrics_of(videos, cfg), cfg);
        sets.resize(videos.size());
        parallel_for(videos.size(), jobs,
                     [&](std::size_t v) { sets[v] = run(videos[v].scores, t); });
      } else {
        throw Error(ErrorCode::kInvalidConfig, "refine needs --manifest or --scores");
      }
      write_output(g, events_csv(sets));
    } else if (*event) {
      const auto gt = io::load_events(gt_path);
      const auto pred = io::load_events(pred_path);
      write_output(g, emit_event_metrics(
                          multi_threshold_eval(gt, pred, cfg.tiou_thresholds), format));
    } else if (*fuse) {
      VideoBranchErrors video;
      video.video_id = video_id;
      video.windows = io::load_branch_errors(branch_path);
      video.frame_count = frames;
      if (video.frame_count == 0) {
        for (const auto& w : video.windows) {
          video.frame_count =
              std::max(video.frame_count, w.target_start() + w.window_len());
        }
      }
      const auto results =
          run_dual_pipeline(std::span<const VideoBranchErrors>(&video, 1), fuse_tau);
      write_output(g, events_csv({results.front().events}));
    } else if (*evaluate) {
      EvaluationOptions options;
      options.mode = pipeline_mode_from_string(mode);
      options.jobs = jobs;
      const Report report = run_evaluation(io::load_manifest(manifest_path), cfg, options);
      write_output(g, emit_report(report, format));
    } else if (*generate) {
      fx.seed = g.seed;
      const auto videos = synthetic::generate_fixture(fx);
      const auto path = synthetic::write_fixture(videos, out_dir, dataset_name);
      std::cout << path.string() << '\n';
    }
  } catch (const Error& e) {
    std::cerr << "eventvad: " << e.what() << '\n';
    return is_io_error(e.code()) ? kExitIo : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "eventvad: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}
