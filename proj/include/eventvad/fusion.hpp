#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "eventvad/core.hpp"

namespace eventvad {

// Frame-wise reconstruction errors for one target window: the short branch
// covers the window itself (length i), the long branch the 3i frames centered
// on it.
class BranchErrors {
 public:
  BranchErrors(FrameIndex target_start, std::vector<double> short_errors,
               std::vector<double> long_errors);

  FrameIndex target_start() const { return target_start_; }
  std::size_t window_len() const { return short_.size(); }
  std::span<const double> short_errors() const { return short_; }
  std::span<const double> long_errors() const { return long_; }

  friend bool operator==(const BranchErrors&, const BranchErrors&) = default;

 private:
  FrameIndex target_start_;
  std::vector<double> short_;
  std::vector<double> long_;
};

// All scored windows of one video. frame_count bounds the event output.
struct VideoBranchErrors {
  std::string video_id;
  std::size_t frame_count = 0;
  std::vector<BranchErrors> windows;
};

struct WindowScore {
  FrameIndex target_start = 0;
  std::size_t window_len = 0;
  double score = 0.0;

  friend bool operator==(const WindowScore&, const WindowScore&) = default;
};

// Middle third of the long-branch errors: elements [i, 2i).
std::vector<double> align_center(std::span<const double> long_errors,
                                 std::size_t i);

// Element-wise (short + aligned_long) / 2.
std::vector<double> fuse_frames(std::span<const double> short_errors,
                                std::span<const double> aligned_long);

// Mean of the fused responses over the target window.
double pool_event_score(std::span<const double> fused);

// align -> fuse -> pool for one window.
WindowScore score_window(const BranchErrors& window);

// Marks every window scoring >= tau as anomalous over its full span, merges
// overlapping/adjacent spans and extracts events.
EventSet windows_to_events(std::span<const WindowScore> window_scores,
                           double tau, std::size_t video_len,
                           const std::string& video_id = {});

// Frame-level view of window scores: each frame takes the maximum score of the
// windows covering it (lowest score when uncovered). Used for threshold
// derivation on dual-branch outputs.
std::vector<double> window_scores_to_frames(
    std::span<const WindowScore> window_scores, std::size_t video_len);

struct DualResult {
  std::string video_id;
  std::vector<WindowScore> window_scores;
  EventSet events;
};

// Results are returned in the order of the input videos.
std::vector<DualResult> run_dual_pipeline(
    std::span<const VideoBranchErrors> videos, double tau);

}  // namespace eventvad
