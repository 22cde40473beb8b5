#include "eventvad/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "eventvad/events.hpp"

namespace eventvad {

namespace {

void check_errors(std::span<const double> values, const char* branch) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k]) || values[k] < 0.0) {
      throw Error(ErrorCode::kNonFiniteScore,
                  std::string(branch) + " branch error at index " +
                      std::to_string(k) + " is negative or non-finite");
    }
  }
}

}  // namespace

BranchErrors::BranchErrors(FrameIndex target_start,
                           std::vector<double> short_errors,
                           std::vector<double> long_errors)
    : target_start_(target_start),
      short_(std::move(short_errors)),
      long_(std::move(long_errors)) {
  if (short_.empty()) {
    throw Error(ErrorCode::kBadLength, "window length must be >= 1");
  }
  if (long_.size() != 3 * short_.size()) {
    throw Error(ErrorCode::kBadLength,
                "long branch has " + std::to_string(long_.size()) +
                    " values, expected 3 * " + std::to_string(short_.size()));
  }
  check_errors(short_, "short");
  check_errors(long_, "long");
}

std::vector<double> align_center(std::span<const double> long_errors,
                                 std::size_t i) {
  if (i == 0 || long_errors.size() != 3 * i) {
    throw Error(ErrorCode::kBadLength,
                "long branch has " + std::to_string(long_errors.size()) +
                    " values, expected 3 * " + std::to_string(i));
  }
  const auto middle = long_errors.subspan(i, i);
  return {middle.begin(), middle.end()};
}

std::vector<double> fuse_frames(std::span<const double> short_errors,
                                std::span<const double> aligned_long) {
  if (short_errors.size() != aligned_long.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "short branch has " + std::to_string(short_errors.size()) +
                    " values, aligned long branch " +
                    std::to_string(aligned_long.size()));
  }
  std::vector<double> fused(short_errors.size());
  for (std::size_t t = 0; t < fused.size(); ++t) {
    fused[t] = 0.5 * (short_errors[t] + aligned_long[t]);
  }
  return fused;
}

double pool_event_score(std::span<const double> fused) {
  if (fused.empty()) {
    throw Error(ErrorCode::kBadLength, "cannot pool an empty window");
  }
  return std::accumulate(fused.begin(), fused.end(), 0.0) / fused.size();
}

WindowScore score_window(const BranchErrors& window) {
  const auto aligned = align_center(window.long_errors(), window.window_len());
  const auto fused = fuse_frames(window.short_errors(), aligned);
  return {window.target_start(), window.window_len(), pool_event_score(fused)};
}

EventSet windows_to_events(std::span<const WindowScore> window_scores,
                           double tau, std::size_t video_len,
                           const std::string& video_id) {
  if (!std::isfinite(tau)) {
    throw Error(ErrorCode::kInvalidConfig, "tau must be finite", video_id);
  }
  if (video_len == 0) {
    throw Error(ErrorCode::kWindowOutOfRange, "video has no frames", video_id);
  }
  std::vector<std::uint8_t> labels(video_len, 0);
  for (const auto& w : window_scores) {
    if (w.window_len == 0 || w.target_start + w.window_len > video_len) {
      throw Error(ErrorCode::kWindowOutOfRange,
                  "window at " + std::to_string(w.target_start) + " of length " +
                      std::to_string(w.window_len) + " exceeds " +
                      std::to_string(video_len) + " frames",
                  video_id);
    }
    if (w.score >= tau) {
      std::fill_n(labels.begin() + w.target_start, w.window_len, 1);
    }
  }
  return mask_to_events(FrameMask(video_id, std::move(labels)));
}

std::vector<double> window_scores_to_frames(
    std::span<const WindowScore> window_scores, std::size_t video_len) {
  double floor = std::numeric_limits<double>::infinity();
  for (const auto& w : window_scores) floor = std::min(floor, w.score);
  if (!std::isfinite(floor)) floor = 0.0;

  std::vector<double> frames(video_len, floor);
  std::vector<bool> covered(video_len, false);
  for (const auto& w : window_scores) {
    if (w.target_start + w.window_len > video_len) {
      throw Error(ErrorCode::kWindowOutOfRange,
                  "window at " + std::to_string(w.target_start) +
                      " exceeds " + std::to_string(video_len) + " frames");
    }
    for (std::size_t t = w.target_start; t < w.target_start + w.window_len; ++t) {
      frames[t] = covered[t] ? std::max(frames[t], w.score) : w.score;
      covered[t] = true;
    }
  }
  return frames;
}

std::vector<DualResult> run_dual_pipeline(
    std::span<const VideoBranchErrors> videos, double tau) {
  std::vector<DualResult> results;
  results.reserve(videos.size());
  for (const auto& video : videos) {
    DualResult r;
    r.video_id = video.video_id;
    r.window_scores.reserve(video.windows.size());
    for (const auto& w : video.windows) {
      r.window_scores.push_back(score_window(w));
    }
    r.events = windows_to_events(r.window_scores, tau, video.frame_count,
                                 video.video_id);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace eventvad
