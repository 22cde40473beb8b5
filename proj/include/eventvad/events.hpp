#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eventvad/core.hpp"

namespace eventvad {

// Maximal runs of 1s; a run touching the last frame closes there.
EventSet mask_to_events(const FrameMask& mask);

// Inverse of mask_to_events. Throws kEventOutOfRange if an event reaches
// past frame n - 1.
FrameMask events_to_mask(const EventSet& events, std::size_t n);

FrameMask binarize(const ScoreSequence& scores, double tau);

// Windows start at 0, stride, 2 * stride, ...; a window running past the end
// is shifted back to end on the last frame. Each window's majority label
// (ties -> anomalous) is written to the stride-long segment starting at the
// nominal window start. Requires 1 <= stride <= window <= mask length.
FrameMask majority_vote_refine(const FrameMask& mask, std::size_t window,
                               std::size_t stride);

// Keeps events with duration >= d_min.
EventSet filter_short_events(const EventSet& events, std::size_t d_min);

// smooth -> binarize -> majority vote -> extract events -> drop short events.
// Videos shorter than the vote window are voted with window = length.
EventSet refine_pipeline(const ScoreSequence& scores, double tau,
                         const EvalConfig& cfg);

// Raw binarization followed by event extraction, no refinement.
EventSet baseline_pipeline(const ScoreSequence& scores, double tau);

struct AuditReport {
  std::size_t normal_frames = 0;
  std::size_t anomalous_frames = 0;
  std::size_t event_count = 0;
  double avg_duration_frames = 0.0;
  std::size_t min_duration = 0;
  std::size_t max_duration = 0;
  std::size_t micro_event_count = 0;
  std::size_t micro_threshold = 1;

  friend bool operator==(const AuditReport&, const AuditReport&) = default;
};

AuditReport audit_dataset(std::span<const FrameMask> masks,
                          std::size_t micro_threshold);

// Zeroes out ground-truth events shorter than micro_threshold.
std::vector<FrameMask> clean_micro_events(std::span<const FrameMask> masks,
                                          std::size_t micro_threshold);

}  // namespace eventvad
