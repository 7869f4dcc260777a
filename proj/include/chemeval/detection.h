//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMEVAL_DETECTION_H_
#define CHEMEVAL_DETECTION_H_

#include <array>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace chemeval {

/// Axis-aligned box in page pixels, origin top-left.
struct BBox {
  double x1 = 0;
  double y1 = 0;
  double x2 = 0;
  double y2 = 0;

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }
  double area() const { return width() * height(); }

  /// x2 > x1, y2 > y1, all coordinates finite and non-negative.
  bool valid() const;

  friend bool operator==(const BBox &, const BBox &) = default;
};

struct ScoredBox {
  BBox bbox;
  double score = 0;

  friend bool operator==(const ScoredBox &, const ScoredBox &) = default;
};

/// Raised when a corpus-level metric has no denominator (no ground truth).
class UndefinedMetricError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

double iou(const BBox &a, const BBox &b);

/// IoU thresholds 0.50, 0.55, ..., 0.95.
inline constexpr std::array<double, 10> kCocoIouThresholds = {
  0.50, 0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95,
};

/// Greedy one-to-one matching. Predictions are visited by descending score
/// (input order on ties); each takes the unmatched ground-truth box with the
/// highest IoU >= threshold (lowest index on ties). Returns (pred, gt) pairs
/// in visiting order.
std::vector<std::pair<int, int>> match_detections(
    std::span<const ScoredBox> preds, std::span<const BBox> gts,
    double threshold);

/// Ground truth and predictions of one page.
struct DetectionPage {
  std::vector<BBox> gts;
  std::vector<ScoredBox> preds;
};

/// Single-class COCO average precision: per IoU threshold, a score-sorted
/// precision/recall curve over the whole corpus, interpolated at 101 recall
/// points (precision at r is the best precision at recall >= r); averaged
/// over the ten thresholds. Throws UndefinedMetricError without ground truth.
double coco_ap(std::span<const DetectionPage> pages);

/// Fraction of ground-truth boxes matched, averaged over the ten thresholds.
/// No cap on detections per page.
double coco_ar(std::span<const DetectionPage> pages);

/// Per-threshold AP values (same order as kCocoIouThresholds).
std::array<double, 10> coco_ap_per_threshold(
    std::span<const DetectionPage> pages);
std::array<double, 10> coco_ar_per_threshold(
    std::span<const DetectionPage> pages);

/// Harmonic mean, 0 when p + r == 0.
double f1(double precision, double recall);

/// Drops boxes with area < min_area, then keeps boxes in descending score
/// order while their IoU with every kept box stays below iou_threshold.
/// Returns the kept boxes in descending score order.
std::vector<ScoredBox> suppress_overlaps(std::span<const ScoredBox> boxes,
                                         double iou_threshold,
                                         double min_area = 0.0);

}  // namespace chemeval

#endif  // CHEMEVAL_DETECTION_H_
