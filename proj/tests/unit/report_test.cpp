#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <random>
#include <stdexcept>

#include "eventvad/report.hpp"
#include "eventvad/synthetic.hpp"

using namespace eventvad;
namespace fs = std::filesystem;

namespace {

// Long events with within-class spread: positives in [0.6, 1], negatives in
// [0, 0.4], so every frame-level threshold between the classes is perfect.
std::vector<VideoData> separable_videos() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 0.4);
  std::vector<VideoData> out;
  for (int v = 0; v < 3; ++v) {
    std::vector<double> s(400);
    std::vector<std::uint8_t> y(400, 0);
    for (std::size_t t = 100 + 20 * v; t < 250 + 20 * v; ++t) y[t] = 1;
    for (std::size_t t = 0; t < s.size(); ++t) s[t] = u(rng) + (y[t] ? 0.6 : 0.0);
    const std::string id = "vid" + std::to_string(v);
    out.push_back({ScoreSequence(id, s), FrameMask(id, y), std::nullopt});
  }
  return out;
}

}  // namespace

TEST_CASE("perfectly separable fixture scores perfectly") {
  const auto r = evaluate_videos(separable_videos(), EvalConfig{}, {});
  CHECK(r.video_count == 3);
  CHECK(r.frame_metrics.auc_roc == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.frame_metrics.eer == 0.0);
  for (const auto& t : r.event_metrics_eer.per_tiou) CHECK(t.f1 == 1.0);
  CHECK(r.event_metrics_eer.average_f1 == 1.0);
  CHECK(r.audit.event_count == 3);
  CHECK(r.audit.avg_duration_frames == 150.0);
  CHECK_FALSE(r.event_metrics_fixed.has_value());
  CHECK_FALSE(r.dual.has_value());
}

TEST_CASE("input order does not change the report") {
  auto videos = separable_videos();
  const auto a = evaluate_videos(videos, EvalConfig{}, {});
  std::reverse(videos.begin(), videos.end());
  const auto b = evaluate_videos(videos, EvalConfig{}, {});
  CHECK(emit_report(a, ReportFormat::kJson) == emit_report(b, ReportFormat::kJson));
}

TEST_CASE("duplicate ids and empty input are rejected") {
  auto videos = separable_videos();
  videos.push_back(videos.front());
  CHECK_THROWS_AS(evaluate_videos(videos, EvalConfig{}, {}), Error);
  CHECK_THROWS_AS(evaluate_videos({}, EvalConfig{}, {}), Error);
}

TEST_CASE("refined mode beats baseline on fragmented scores") {
  synthetic::FixtureOptions opt;
  opt.videos = 6;
  const auto videos = synthetic::generate_fixture(opt);
  const auto refined = evaluate_videos(videos, EvalConfig{}, {PipelineMode::kRefined, 1});
  const auto baseline = evaluate_videos(videos, EvalConfig{}, {PipelineMode::kBaseline, 1});
  CHECK(refined.frame_metrics == baseline.frame_metrics);
  CHECK(refined.event_metrics_eer.average_f1 > baseline.event_metrics_eer.average_f1);
}

TEST_CASE("fixed strategy adds a third event section") {
  EvalConfig cfg;
  cfg.threshold_strategy = ThresholdStrategy::kFixed;
  cfg.fixed_tau = 0.5;
  const auto r = evaluate_videos(separable_videos(), cfg, {});
  REQUIRE(r.event_metrics_fixed.has_value());
  CHECK(r.event_metrics_fixed->average_f1 == 1.0);
  CHECK(select_threshold(r.frame_metrics, cfg) == 0.5);
}

TEST_CASE("json round trip and emission determinism") {
  synthetic::FixtureOptions opt;
  opt.videos = 4;
  opt.branch_errors = true;
  const auto videos = synthetic::generate_fixture(opt);
  EvalConfig cfg;
  cfg.threshold_strategy = ThresholdStrategy::kFixed;
  const auto r1 = evaluate_videos(videos, cfg, {PipelineMode::kRefined, 1}, "synth");
  const auto r4 = evaluate_videos(videos, cfg, {PipelineMode::kRefined, 4}, "synth");
  CHECK(r1 == r4);
  REQUIRE(r1.dual.has_value());
  for (auto format : {ReportFormat::kJson, ReportFormat::kCsv, ReportFormat::kMarkdown}) {
    CHECK(emit_report(r1, format) == emit_report(r4, format));
  }
  const auto json = emit_report(r1, ReportFormat::kJson);
  CHECK(report_from_json(json) == r1);
  CHECK_THROWS_AS(report_from_json("{}"), Error);
}

TEST_CASE("markdown lists one row per tIoU in config order") {
  EvalConfig cfg;
  cfg.tiou_thresholds = {0.1, 0.25, 0.7};
  const auto md = emit_report(evaluate_videos(separable_videos(), cfg, {}),
                              ReportFormat::kMarkdown);
  const auto a = md.find("| 0.1 |");
  const auto b = md.find("| 0.25 |");
  const auto c = md.find("| 0.7 |");
  REQUIRE(a != std::string::npos);
  REQUIRE(b != std::string::npos);
  REQUIRE(c != std::string::npos);
  CHECK(a < b);
  CHECK(b < c);
  CHECK(md.find("| 0.5 |") == std::string::npos);
}

TEST_CASE("csv report has a fixed header") {
  const auto csv = emit_report(evaluate_videos(separable_videos(), EvalConfig{}, {}),
                               ReportFormat::kCsv);
  CHECK(csv.rfind("section,metric,tiou,value\n", 0) == 0);
  CHECK(csv.find("event_eer,f1,0.5,1\n") != std::string::npos);
}

TEST_CASE("dual branch data must be all or nothing") {
  synthetic::FixtureOptions opt;
  opt.videos = 2;
  opt.branch_errors = true;
  auto videos = synthetic::generate_fixture(opt);
  videos[1].branch_windows.reset();
  CHECK_THROWS_AS(evaluate_videos(videos, EvalConfig{}, {}), Error);
}

TEST_CASE("parallel_for visits every index and rethrows the lowest failure") {
  for (std::size_t jobs : {1u, 3u, 8u}) {
    std::vector<std::atomic<int>> hits(50);
    parallel_for(hits.size(), jobs, [&](std::size_t i) { ++hits[i]; });
    for (const auto& h : hits) CHECK(h.load() == 1);

    try {
      parallel_for(20, jobs, [](std::size_t i) {
        if (i == 7 || i == 13) throw std::runtime_error(std::to_string(i));
      });
      FAIL("no exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "7");
    }
  }
}

TEST_CASE("resolve_jobs") {
  CHECK(resolve_jobs(3) == 3);
  CHECK(resolve_jobs(0) == 1);
}

TEST_CASE("fixture written to disk evaluates identically") {
  synthetic::FixtureOptions opt;
  opt.videos = 3;
  opt.branch_errors = true;
  const auto videos = synthetic::generate_fixture(opt);
  const fs::path dir = fs::temp_directory_path() / "eventvad_report_test";
  fs::remove_all(dir);
  const auto manifest_path = synthetic::write_fixture(videos, dir, "synth");
  const auto from_disk = run_evaluation(io::load_manifest(manifest_path), EvalConfig{});
  const auto in_memory = evaluate_videos(videos, EvalConfig{}, {}, "synth");
  CHECK(from_disk == in_memory);
  fs::remove_all(dir);
}

TEST_CASE("format and mode names") {
  CHECK(report_format_from_string("json") == ReportFormat::kJson);
  CHECK(report_format_from_string("markdown") == ReportFormat::kMarkdown);
  CHECK(pipeline_mode_from_string("baseline") == PipelineMode::kBaseline);
  CHECK_THROWS_AS(report_format_from_string("xml"), Error);
}
