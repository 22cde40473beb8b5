#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "eventvad/core.hpp"

namespace eventvad {

// Frames with score >= threshold are predicted anomalous, everywhere in this
// library.

struct RocPoint {
  double threshold = 0.0;
  double far = 0.0;  // false acceptance rate, FP / N
  double frr = 0.0;  // false rejection rate, FN / P
  double tpr = 0.0;
  double fpr = 0.0;
};

// Points sorted by ascending threshold: -inf, each distinct score, +inf.
struct RocCurve {
  std::vector<RocPoint> points;
};

struct PrPoint {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

// One point per distinct score, ascending threshold.
struct PrCurve {
  std::vector<PrPoint> points;
};

struct OperatingPoint {
  double tau = 0.0;
  double eer = 0.0;
};

struct FramePrf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

RocCurve roc_curve(std::span<const double> scores,
                   std::span<const std::uint8_t> labels);

// Trapezoidal area under (fpr, tpr).
double auc_roc(const RocCurve& curve);

PrCurve pr_curve(std::span<const double> scores,
                 std::span<const std::uint8_t> labels);

// Step-wise area: sum over descending thresholds of (R_k - R_{k-1}) * P_k.
double auc_pr(std::span<const double> scores,
              std::span<const std::uint8_t> labels);

// Threshold minimizing |FAR - FRR| over the observed scores; ties go to the
// lower threshold. eer is (FAR + FRR) / 2 at that point.
OperatingPoint eer_threshold(const RocCurve& curve);

// F-beta = (1 + b^2) TP / ((1 + b^2) TP + b^2 FN + FP), 0 when undefined.
double f_beta(std::size_t tp, std::size_t fp, std::size_t fn, double beta);

// Precision-weighted operating point: threshold maximizing F-beta over the
// observed scores; ties go to the higher (stricter) threshold.
double hprs_threshold(std::span<const double> scores,
                      std::span<const std::uint8_t> labels, double beta = 0.5);

FramePrf f1_at_threshold(std::span<const double> scores,
                         std::span<const std::uint8_t> labels, double tau);

// Everything reported per model-dataset pair, from concatenated test scores.
FrameMetrics compute_frame_metrics(std::span<const double> scores,
                                   std::span<const std::uint8_t> labels,
                                   double hprs_beta = 0.5);

// Concatenates per-video sequences in the given order after pairwise
// validation.
struct ConcatenatedData {
  std::vector<double> scores;
  std::vector<std::uint8_t> labels;
};
ConcatenatedData concatenate(std::span<const ScoreSequence> scores,
                             std::span<const FrameMask> masks);

}  // namespace eventvad
