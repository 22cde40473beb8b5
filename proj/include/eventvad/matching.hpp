#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eventvad/core.hpp"

namespace eventvad {

// Frame-count temporal IoU of two closed intervals; 0 when disjoint.
double tiou(const TemporalEvent& a, const TemporalEvent& b);

struct MatchPair {
  std::size_t gt_index = 0;
  std::size_t pred_index = 0;
  double tiou = 0.0;

  friend bool operator==(const MatchPair&, const MatchPair&) = default;
};

struct MatchResult {
  std::vector<MatchPair> pairs;
  std::vector<std::size_t> unmatched_gt;
  std::vector<std::size_t> unmatched_pred;
};

// One-to-one greedy matching: candidate pairs with tiou >= threshold are
// accepted in descending tiou order (ties: lower gt index, then lower pred
// index) unless either side is already taken.
MatchResult match_events(const EventSet& gt, const EventSet& pred,
                         double threshold);

PrfCounts event_counts(const EventSet& gt, const EventSet& pred,
                       double threshold);

// (precision, recall, f1) at one tIoU threshold for a single video.
TiouMetrics event_prf(const EventSet& gt, const EventSet& pred,
                      double threshold);

// Per-video matching, confusion counts summed across videos per threshold,
// average_f1 = mean of per-threshold F1. Videos are paired by video_id;
// throws kVideoIdMismatch when the two id sets differ.
EventMetrics multi_threshold_eval(std::span<const EventSet> gt_all,
                                  std::span<const EventSet> pred_all,
                                  std::span<const double> thresholds);

}  // namespace eventvad
