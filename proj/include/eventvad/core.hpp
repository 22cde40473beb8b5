#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eventvad/error.hpp"

namespace eventvad {

using FrameIndex = std::size_t;

// Per-frame anomaly scores for one video. Scores are unbounded reals
// (reconstruction errors are fine) but must be finite.
class ScoreSequence {
 public:
  ScoreSequence(std::string video_id, std::vector<double> scores,
                std::optional<double> fps = std::nullopt);

  const std::string& video_id() const { return video_id_; }
  std::span<const double> scores() const { return scores_; }
  const std::vector<double>& values() const { return scores_; }
  std::optional<double> fps() const { return fps_; }
  std::size_t size() const { return scores_.size(); }

  friend bool operator==(const ScoreSequence&, const ScoreSequence&) = default;

 private:
  std::string video_id_;
  std::vector<double> scores_;
  std::optional<double> fps_;
};

// Per-frame binary labels g_t in {0, 1}.
class FrameMask {
 public:
  FrameMask(std::string video_id, std::vector<std::uint8_t> labels);

  const std::string& video_id() const { return video_id_; }
  std::span<const std::uint8_t> labels() const { return labels_; }
  const std::vector<std::uint8_t>& values() const { return labels_; }
  std::size_t size() const { return labels_.size(); }

  friend bool operator==(const FrameMask&, const FrameMask&) = default;

 private:
  std::string video_id_;
  std::vector<std::uint8_t> labels_;
};

// Closed frame interval [start, end], 0-based.
struct TemporalEvent {
  FrameIndex start = 0;
  FrameIndex end = 0;

  std::size_t duration() const { return end - start + 1; }

  friend bool operator==(const TemporalEvent&, const TemporalEvent&) = default;
};

// Sorted, pairwise disjoint, non-adjacent events of one video.
class EventSet {
 public:
  EventSet() = default;
  EventSet(std::string video_id, std::vector<TemporalEvent> events);

  const std::string& video_id() const { return video_id_; }
  const std::vector<TemporalEvent>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }

  friend bool operator==(const EventSet&, const EventSet&) = default;

 private:
  std::string video_id_;
  std::vector<TemporalEvent> events_;
};

enum class ThresholdStrategy { kEer, kHprs, kFixed };

const char* to_string(ThresholdStrategy strategy);
ThresholdStrategy threshold_strategy_from_string(const std::string& name);

struct EvalConfig {
  int sigma_max = 5;
  std::size_t vote_window = 9;
  std::size_t vote_stride = 3;
  std::size_t min_event_len = 8;
  std::vector<double> tiou_thresholds = {0.2, 0.3, 0.4, 0.5};
  ThresholdStrategy threshold_strategy = ThresholdStrategy::kEer;
  double fixed_tau = 0.5;  // used only with ThresholdStrategy::kFixed
  double hprs_beta = 0.5;
  // Audit micro-event cutoff; falls back to min_event_len.
  std::optional<std::size_t> micro_threshold;

  std::size_t effective_micro_threshold() const {
    return micro_threshold.value_or(min_event_len);
  }

  // Throws Error(kInvalidConfig) on violated invariants.
  void validate() const;

  friend bool operator==(const EvalConfig&, const EvalConfig&) = default;
};

struct FrameMetrics {
  double auc_roc = 0.0;
  double auc_pr = 0.0;
  double eer = 0.0;
  double tau_eer = 0.0;
  double tau_hprs = 0.0;
  double f1_at_tau_eer = 0.0;
  double f1_at_tau_hprs = 0.0;

  friend bool operator==(const FrameMetrics&, const FrameMetrics&) = default;
};

struct PrfCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  double precision() const;
  double recall() const;
  double f1() const;

  PrfCounts& operator+=(const PrfCounts& other) {
    tp += other.tp;
    fp += other.fp;
    fn += other.fn;
    return *this;
  }

  friend bool operator==(const PrfCounts&, const PrfCounts&) = default;
};

struct TiouMetrics {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  friend bool operator==(const TiouMetrics&, const TiouMetrics&) = default;
};

struct EventMetrics {
  // One entry per tIoU threshold, in configuration order.
  std::vector<TiouMetrics> per_tiou;
  double average_f1 = 0.0;

  friend bool operator==(const EventMetrics&, const EventMetrics&) = default;
};

// Harmonic mean with the 0-when-undefined convention.
double f1_score(double precision, double recall);

// Checks that a score sequence and a mask describe the same video frame for
// frame.
void validate_pair(const ScoreSequence& scores, const FrameMask& mask);

}  // namespace eventvad
