#include "eventvad/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace eventvad {

namespace {

// Confusion counts when binarizing at one distinct observed score.
struct SweepPoint {
  double threshold;
  std::size_t tp;
  std::size_t fp;
};

struct Sweep {
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::vector<SweepPoint> points;  // descending threshold
};

void check_lengths(std::span<const double> scores,
                   std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(scores.size()) + " scores vs " +
                    std::to_string(labels.size()) + " labels");
  }
  if (scores.empty()) {
    throw Error(ErrorCode::kDegenerateLabels, "no frames to evaluate");
  }
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i])) {
      throw Error(ErrorCode::kNonFiniteScore,
                  "non-finite score at index " + std::to_string(i));
    }
    if (labels[i] > 1) {
      throw Error(ErrorCode::kNonBinaryLabel,
                  "non-binary label at index " + std::to_string(i));
    }
  }
}

// Single O(n log n) pass: sort by descending score and accumulate counts at
// each distinct value.
Sweep sweep(std::span<const double> scores,
            std::span<const std::uint8_t> labels) {
  check_lengths(scores, labels);
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });

  Sweep s;
  for (std::uint8_t l : labels) (l ? s.positives : s.negatives) += 1;

  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t idx = order[k];
    (labels[idx] ? tp : fp) += 1;
    const bool last_of_value =
        k + 1 == order.size() || scores[order[k + 1]] != scores[idx];
    if (last_of_value) s.points.push_back({scores[idx], tp, fp});
  }
  return s;
}

void require_both_classes(const Sweep& s) {
  if (s.positives == 0 || s.negatives == 0) {
    throw Error(ErrorCode::kDegenerateLabels,
                "labels must contain both normal and anomalous frames");
  }
}

}  // namespace

RocCurve roc_curve(std::span<const double> scores,
                   std::span<const std::uint8_t> labels) {
  const Sweep s = sweep(scores, labels);
  require_both_classes(s);
  const double p = static_cast<double>(s.positives);
  const double n = static_cast<double>(s.negatives);
  auto make_point = [&](double threshold, std::size_t tp, std::size_t fp) {
    RocPoint pt;
    pt.threshold = threshold;
    pt.tpr = tp / p;
    pt.fpr = fp / n;
    pt.far = pt.fpr;
    pt.frr = static_cast<double>(s.positives - tp) / p;
    return pt;
  };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  RocCurve curve;
  curve.points.reserve(s.points.size() + 2);
  curve.points.push_back(make_point(-kInf, s.positives, s.negatives));
  for (auto it = s.points.rbegin(); it != s.points.rend(); ++it) {
    curve.points.push_back(make_point(it->threshold, it->tp, it->fp));
  }
  curve.points.push_back(make_point(kInf, 0, 0));
  return curve;
}

double auc_roc(const RocCurve& curve) {
  // Points run from (1, 1) at -inf down to (0, 0) at +inf.
  double area = 0.0;
  for (std::size_t k = 1; k < curve.points.size(); ++k) {
    const auto& hi = curve.points[k - 1];
    const auto& lo = curve.points[k];
    area += (hi.fpr - lo.fpr) * (hi.tpr + lo.tpr) / 2.0;
  }
  return area;
}

PrCurve pr_curve(std::span<const double> scores,
                 std::span<const std::uint8_t> labels) {
  const Sweep s = sweep(scores, labels);
  if (s.positives == 0) {
    throw Error(ErrorCode::kDegenerateLabels, "no anomalous frames");
  }
  PrCurve curve;
  curve.points.reserve(s.points.size());
  for (auto it = s.points.rbegin(); it != s.points.rend(); ++it) {
    PrPoint pt;
    pt.threshold = it->threshold;
    pt.precision = static_cast<double>(it->tp) / (it->tp + it->fp);
    pt.recall = static_cast<double>(it->tp) / s.positives;
    curve.points.push_back(pt);
  }
  return curve;
}

double auc_pr(std::span<const double> scores,
              std::span<const std::uint8_t> labels) {
  const PrCurve curve = pr_curve(scores, labels);
  double area = 0.0;
  double prev_recall = 0.0;
  for (auto it = curve.points.rbegin(); it != curve.points.rend(); ++it) {
    area += (it->recall - prev_recall) * it->precision;
    prev_recall = it->recall;
  }
  return area;
}

OperatingPoint eer_threshold(const RocCurve& curve) {
  // The +/-inf sentinels are excluded: they never binarize at an observed
  // score and would only win degenerate ties.
  const RocPoint* best = nullptr;
  double best_gap = std::numeric_limits<double>::infinity();
  for (const auto& pt : curve.points) {
    if (!std::isfinite(pt.threshold)) continue;
    const double gap = std::abs(pt.far - pt.frr);
    // Ascending iteration plus strict < keeps the lowest threshold on ties.
    if (gap < best_gap) {
      best_gap = gap;
      best = &pt;
    }
  }
  if (best == nullptr) {
    throw Error(ErrorCode::kDegenerateLabels, "ROC curve has no finite points");
  }
  return {best->threshold, (best->far + best->frr) / 2.0};
}

double f_beta(std::size_t tp, std::size_t fp, std::size_t fn, double beta) {
  const double b2 = beta * beta;
  const double num = (1.0 + b2) * static_cast<double>(tp);
  const double denom = num + b2 * static_cast<double>(fn) + static_cast<double>(fp);
  return denom > 0.0 ? num / denom : 0.0;
}

double hprs_threshold(std::span<const double> scores,
                      std::span<const std::uint8_t> labels, double beta) {
  if (!(std::isfinite(beta) && beta > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "beta must be positive");
  }
  const Sweep s = sweep(scores, labels);
  require_both_classes(s);
  // Descending iteration plus strict > keeps the highest threshold on ties.
  double best_tau = s.points.front().threshold;
  double best_f = -1.0;
  for (const auto& pt : s.points) {
    const double f = f_beta(pt.tp, pt.fp, s.positives - pt.tp, beta);
    if (f > best_f) {
      best_f = f;
      best_tau = pt.threshold;
    }
  }
  return best_tau;
}

FramePrf f1_at_threshold(std::span<const double> scores,
                         std::span<const std::uint8_t> labels, double tau) {
  check_lengths(scores, labels);
  PrfCounts counts;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] >= tau;
    if (predicted && labels[i]) ++counts.tp;
    else if (predicted) ++counts.fp;
    else if (labels[i]) ++counts.fn;
  }
  return {counts.precision(), counts.recall(), counts.f1()};
}

FrameMetrics compute_frame_metrics(std::span<const double> scores,
                                   std::span<const std::uint8_t> labels,
                                   double hprs_beta) {
  const RocCurve roc = roc_curve(scores, labels);
  const OperatingPoint eer = eer_threshold(roc);
  FrameMetrics m;
  m.auc_roc = auc_roc(roc);
  m.auc_pr = auc_pr(scores, labels);
  m.eer = eer.eer;
  m.tau_eer = eer.tau;
  m.tau_hprs = hprs_threshold(scores, labels, hprs_beta);
  m.f1_at_tau_eer = f1_at_threshold(scores, labels, m.tau_eer).f1;
  m.f1_at_tau_hprs = f1_at_threshold(scores, labels, m.tau_hprs).f1;
  return m;
}

ConcatenatedData concatenate(std::span<const ScoreSequence> scores,
                             std::span<const FrameMask> masks) {
  if (scores.size() != masks.size()) {
    throw Error(ErrorCode::kVideoIdMismatch,
                std::to_string(scores.size()) + " score sequences vs " +
                    std::to_string(masks.size()) + " masks");
  }
  ConcatenatedData out;
  for (std::size_t v = 0; v < scores.size(); ++v) {
    validate_pair(scores[v], masks[v]);
    out.scores.insert(out.scores.end(), scores[v].values().begin(),
                      scores[v].values().end());
    out.labels.insert(out.labels.end(), masks[v].values().begin(),
                      masks[v].values().end());
  }
  return out;
}

}  // namespace eventvad
