#include "eventvad/events.hpp"

#include <algorithm>
#include <limits>

#include "eventvad/smoothing.hpp"

namespace eventvad {

EventSet mask_to_events(const FrameMask& mask) {
  const auto labels = mask.labels();
  std::vector<TemporalEvent> events;
  bool open = false;
  FrameIndex start = 0;
  for (FrameIndex t = 0; t < labels.size(); ++t) {
    if (labels[t] && !open) {
      open = true;
      start = t;
    } else if (!labels[t] && open) {
      open = false;
      events.push_back({start, t - 1});
    }
  }
  if (open) events.push_back({start, labels.size() - 1});
  return EventSet(mask.video_id(), std::move(events));
}

FrameMask events_to_mask(const EventSet& events, std::size_t n) {
  std::vector<std::uint8_t> labels(n, 0);
  for (const auto& e : events.events()) {
    if (e.end >= n) {
      throw Error(ErrorCode::kEventOutOfRange,
                  "event [" + std::to_string(e.start) + ", " +
                      std::to_string(e.end) + "] exceeds " +
                      std::to_string(n) + " frames",
                  events.video_id());
    }
    std::fill(labels.begin() + e.start, labels.begin() + e.end + 1, 1);
  }
  return FrameMask(events.video_id(), std::move(labels));
}

FrameMask binarize(const ScoreSequence& scores, double tau) {
  std::vector<std::uint8_t> labels(scores.size());
  std::transform(scores.values().begin(), scores.values().end(), labels.begin(),
                 [tau](double s) { return s >= tau ? 1 : 0; });
  return FrameMask(scores.video_id(), std::move(labels));
}

FrameMask majority_vote_refine(const FrameMask& mask, std::size_t window,
                               std::size_t stride) {
  const std::size_t n = mask.size();
  if (stride < 1 || stride > window || window > n) {
    throw Error(ErrorCode::kInvalidWindow,
                "need 1 <= stride (" + std::to_string(stride) +
                    ") <= window (" + std::to_string(window) +
                    ") <= length (" + std::to_string(n) + ")",
                mask.video_id());
  }
  const auto labels = mask.labels();
  std::vector<std::size_t> prefix(n + 1, 0);
  for (std::size_t t = 0; t < n; ++t) prefix[t + 1] = prefix[t] + labels[t];

  std::vector<std::uint8_t> out(n);
  for (std::size_t t = 0; t < n; t += stride) {
    const std::size_t lo = std::min(t, n - window);
    const std::size_t ones = prefix[lo + window] - prefix[lo];
    const std::uint8_t vote = 2 * ones >= window ? 1 : 0;
    const std::size_t seg_end = std::min(t + stride, n);
    std::fill(out.begin() + t, out.begin() + seg_end, vote);
  }
  return FrameMask(mask.video_id(), std::move(out));
}

EventSet filter_short_events(const EventSet& events, std::size_t d_min) {
  std::vector<TemporalEvent> kept;
  std::copy_if(events.events().begin(), events.events().end(),
               std::back_inserter(kept),
               [d_min](const TemporalEvent& e) { return e.duration() >= d_min; });
  return EventSet(events.video_id(), std::move(kept));
}

EventSet refine_pipeline(const ScoreSequence& scores, double tau,
                         const EvalConfig& cfg) {
  cfg.validate();
  const ScoreSequence smoothed = hierarchical_smooth(scores, cfg.sigma_max);
  const FrameMask raw = binarize(smoothed, tau);
  const std::size_t window = std::min(cfg.vote_window, raw.size());
  const std::size_t stride = std::min(cfg.vote_stride, window);
  const FrameMask voted = majority_vote_refine(raw, window, stride);
  return filter_short_events(mask_to_events(voted), cfg.min_event_len);
}

EventSet baseline_pipeline(const ScoreSequence& scores, double tau) {
  return mask_to_events(binarize(scores, tau));
}

AuditReport audit_dataset(std::span<const FrameMask> masks,
                          std::size_t micro_threshold) {
  if (masks.empty()) {
    throw Error(ErrorCode::kParseError, "audit needs at least one mask");
  }
  AuditReport report;
  report.micro_threshold = micro_threshold;
  report.min_duration = std::numeric_limits<std::size_t>::max();
  for (const auto& mask : masks) {
    const EventSet events = mask_to_events(mask);
    for (const auto& e : events.events()) {
      const std::size_t d = e.duration();
      report.anomalous_frames += d;
      report.min_duration = std::min(report.min_duration, d);
      report.max_duration = std::max(report.max_duration, d);
      if (d < micro_threshold) ++report.micro_event_count;
    }
    report.event_count += events.size();
    report.normal_frames += mask.size();
  }
  report.normal_frames -= report.anomalous_frames;
  if (report.event_count > 0) {
    report.avg_duration_frames =
        static_cast<double>(report.anomalous_frames) / report.event_count;
  } else {
    report.min_duration = 0;
  }
  return report;
}

std::vector<FrameMask> clean_micro_events(std::span<const FrameMask> masks,
                                          std::size_t micro_threshold) {
  if (micro_threshold < 1) {
    throw Error(ErrorCode::kInvalidConfig, "micro_threshold must be >= 1");
  }
  std::vector<FrameMask> out;
  out.reserve(masks.size());
  for (const auto& mask : masks) {
    out.push_back(events_to_mask(
        filter_short_events(mask_to_events(mask), micro_threshold),
        mask.size()));
  }
  return out;
}

}  // namespace eventvad
