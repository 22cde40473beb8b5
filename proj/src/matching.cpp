#include "eventvad/matching.hpp"

#include <algorithm>
#include <map>

namespace eventvad {

double tiou(const TemporalEvent& a, const TemporalEvent& b) {
  const FrameIndex lo = std::max(a.start, b.start);
  const FrameIndex hi = std::min(a.end, b.end);
  if (lo > hi) return 0.0;
  const double inter = static_cast<double>(hi - lo + 1);
  const double uni = static_cast<double>(a.duration() + b.duration()) - inter;
  return inter / uni;
}

MatchResult match_events(const EventSet& gt, const EventSet& pred,
                         double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "tIoU threshold must lie in (0, 1]");
  }
  const auto& g = gt.events();
  const auto& p = pred.events();

  std::vector<MatchPair> candidates;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      const double v = tiou(g[i], p[j]);
      if (v > 0.0 && v >= threshold) candidates.push_back({i, j, v});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const MatchPair& a, const MatchPair& b) {
              if (a.tiou != b.tiou) return a.tiou > b.tiou;
              if (a.gt_index != b.gt_index) return a.gt_index < b.gt_index;
              return a.pred_index < b.pred_index;
            });

  std::vector<bool> gt_used(g.size(), false);
  std::vector<bool> pred_used(p.size(), false);
  MatchResult result;
  for (const auto& c : candidates) {
    if (gt_used[c.gt_index] || pred_used[c.pred_index]) continue;
    gt_used[c.gt_index] = true;
    pred_used[c.pred_index] = true;
    result.pairs.push_back(c);
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!gt_used[i]) result.unmatched_gt.push_back(i);
  }
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (!pred_used[j]) result.unmatched_pred.push_back(j);
  }
  return result;
}

PrfCounts event_counts(const EventSet& gt, const EventSet& pred,
                       double threshold) {
  const MatchResult m = match_events(gt, pred, threshold);
  return {m.pairs.size(), m.unmatched_pred.size(), m.unmatched_gt.size()};
}

namespace {

TiouMetrics to_metrics(double threshold, const PrfCounts& c) {
  TiouMetrics m;
  m.threshold = threshold;
  m.precision = c.precision();
  m.recall = c.recall();
  m.f1 = c.f1();
  m.tp = c.tp;
  m.fp = c.fp;
  m.fn = c.fn;
  return m;
}

}  // namespace

TiouMetrics event_prf(const EventSet& gt, const EventSet& pred,
                      double threshold) {
  return to_metrics(threshold, event_counts(gt, pred, threshold));
}

EventMetrics multi_threshold_eval(std::span<const EventSet> gt_all,
                                  std::span<const EventSet> pred_all,
                                  std::span<const double> thresholds) {
  std::map<std::string, const EventSet*> preds;
  for (const auto& p : pred_all) {
    if (!preds.emplace(p.video_id(), &p).second) {
      throw Error(ErrorCode::kDuplicateVideoId, "duplicate prediction set",
                  p.video_id());
    }
  }
  if (preds.size() != gt_all.size()) {
    throw Error(ErrorCode::kVideoIdMismatch,
                std::to_string(gt_all.size()) + " ground-truth videos vs " +
                    std::to_string(preds.size()) + " predicted videos");
  }

  std::vector<PrfCounts> totals(thresholds.size());
  std::map<std::string, bool> seen;
  for (const auto& g : gt_all) {
    if (!seen.emplace(g.video_id(), true).second) {
      throw Error(ErrorCode::kDuplicateVideoId, "duplicate ground-truth set",
                  g.video_id());
    }
    const auto it = preds.find(g.video_id());
    if (it == preds.end()) {
      throw Error(ErrorCode::kVideoIdMismatch, "no predictions for video",
                  g.video_id());
    }
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
      totals[k] += event_counts(g, *it->second, thresholds[k]);
    }
  }

  EventMetrics metrics;
  double f1_sum = 0.0;
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    metrics.per_tiou.push_back(to_metrics(thresholds[k], totals[k]));
    f1_sum += metrics.per_tiou.back().f1;
  }
  metrics.average_f1 = thresholds.empty() ? 0.0 : f1_sum / thresholds.size();
  return metrics;
}

}  // namespace eventvad
