#include "eventvad/core.hpp"

#include <algorithm>
#include <cmath>

namespace eventvad {

ScoreSequence::ScoreSequence(std::string video_id, std::vector<double> scores,
                             std::optional<double> fps)
    : video_id_(std::move(video_id)), scores_(std::move(scores)), fps_(fps) {
  if (scores_.empty()) {
    throw Error(ErrorCode::kLengthMismatch, "score sequence is empty",
                video_id_);
  }
  for (std::size_t i = 0; i < scores_.size(); ++i) {
    if (!std::isfinite(scores_[i])) {
      throw Error(ErrorCode::kNonFiniteScore,
                  "non-finite score at index " + std::to_string(i), video_id_);
    }
  }
  if (fps_ && !(std::isfinite(*fps_) && *fps_ > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "fps must be positive", video_id_);
  }
}

FrameMask::FrameMask(std::string video_id, std::vector<std::uint8_t> labels)
    : video_id_(std::move(video_id)), labels_(std::move(labels)) {
  if (labels_.empty()) {
    throw Error(ErrorCode::kLengthMismatch, "frame mask is empty", video_id_);
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] > 1) {
      throw Error(ErrorCode::kNonBinaryLabel,
                  "non-binary label at index " + std::to_string(i), video_id_);
    }
  }
}

EventSet::EventSet(std::string video_id, std::vector<TemporalEvent> events)
    : video_id_(std::move(video_id)), events_(std::move(events)) {
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const auto& e = events_[i];
    if (e.start > e.end) {
      throw Error(ErrorCode::kInvalidEvent,
                  "event " + std::to_string(i) + " has start > end",
                  video_id_);
    }
    // Consecutive events need at least one normal frame between them.
    if (i > 0 && e.start <= events_[i - 1].end + 1) {
      throw Error(ErrorCode::kInvalidEvent,
                  "events " + std::to_string(i - 1) + " and " +
                      std::to_string(i) + " overlap, touch or are unsorted",
                  video_id_);
    }
  }
}

const char* to_string(ThresholdStrategy strategy) {
  switch (strategy) {
    case ThresholdStrategy::kEer: return "eer";
    case ThresholdStrategy::kHprs: return "hprs";
    case ThresholdStrategy::kFixed: return "fixed";
  }
  return "eer";
}

ThresholdStrategy threshold_strategy_from_string(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "eer") return ThresholdStrategy::kEer;
  if (lower == "hprs") return ThresholdStrategy::kHprs;
  if (lower == "fixed") return ThresholdStrategy::kFixed;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown threshold strategy '" + name + "'");
}

void EvalConfig::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidConfig, what);
  };
  if (sigma_max < 1) fail("sigma_max must be >= 1");
  if (vote_window < 1) fail("vote_window must be >= 1");
  if (vote_stride < 1) fail("vote_stride must be >= 1");
  if (vote_stride > vote_window) fail("vote_stride must not exceed vote_window");
  if (min_event_len < 1) fail("min_event_len must be >= 1");
  if (tiou_thresholds.empty()) fail("tiou_thresholds must not be empty");
  for (std::size_t i = 0; i < tiou_thresholds.size(); ++i) {
    const double t = tiou_thresholds[i];
    if (!(t > 0.0 && t <= 1.0)) fail("tiou thresholds must lie in (0, 1]");
    if (i > 0 && t < tiou_thresholds[i - 1]) {
      fail("tiou thresholds must be sorted ascending");
    }
  }
  if (!(std::isfinite(hprs_beta) && hprs_beta > 0.0)) {
    fail("hprs_beta must be positive");
  }
  if (!std::isfinite(fixed_tau)) fail("fixed_tau must be finite");
  if (micro_threshold && *micro_threshold < 1) {
    fail("micro_threshold must be >= 1");
  }
}

double f1_score(double precision, double recall) {
  const double denom = precision + recall;
  return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

double PrfCounts::precision() const {
  const std::size_t predicted = tp + fp;
  return predicted > 0 ? static_cast<double>(tp) / predicted : 0.0;
}

double PrfCounts::recall() const {
  const std::size_t actual = tp + fn;
  return actual > 0 ? static_cast<double>(tp) / actual : 0.0;
}

double PrfCounts::f1() const { return f1_score(precision(), recall()); }

void validate_pair(const ScoreSequence& scores, const FrameMask& mask) {
  if (scores.video_id() != mask.video_id()) {
    throw Error(ErrorCode::kVideoIdMismatch,
                "scores belong to '" + scores.video_id() + "', mask to '" +
                    mask.video_id() + "'",
                scores.video_id());
  }
  if (scores.size() != mask.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(scores.size()) + " scores vs " +
                    std::to_string(mask.size()) + " labels",
                scores.video_id());
  }
}

}  // namespace eventvad
