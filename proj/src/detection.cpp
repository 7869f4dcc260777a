//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemeval/detection.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace chemeval {
namespace {
std::vector<int> by_descending_score(std::span<const ScoredBox> boxes) {
  std::vector<int> order(boxes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return boxes[a].score > boxes[b].score;
  });
  return order;
}

std::size_t count_gts(std::span<const DetectionPage> pages) {
  std::size_t total = 0;
  for (const auto &page: pages)
    total += page.gts.size();
  return total;
}

struct Detection {
  double score;
  std::size_t page;
  int index;
  bool tp;
};

// All detections of the corpus at one threshold, sorted by descending score
// (page order, then input order, on ties).
std::vector<Detection> evaluate_threshold(std::span<const DetectionPage> pages,
                                          double threshold,
                                          std::size_t &matched_gts) {
  std::vector<Detection> dets;
  matched_gts = 0;
  for (std::size_t p = 0; p < pages.size(); ++p) {
    const auto &page = pages[p];
    const auto matches = match_detections(page.preds, page.gts, threshold);
    std::vector<char> tp(page.preds.size(), 0);
    for (auto [pred, gt]: matches)
      tp[pred] = 1;
    matched_gts += matches.size();
    for (int i = 0; i < static_cast<int>(page.preds.size()); ++i)
      dets.push_back({ page.preds[i].score, p, i, tp[i] != 0 });
  }
  std::stable_sort(dets.begin(), dets.end(),
                   [](const Detection &a, const Detection &b) {
                     return a.score > b.score;
                   });
  return dets;
}

double interpolated_ap(const std::vector<Detection> &dets, std::size_t n_gt) {
  const std::size_t n = dets.size();
  std::vector<double> precision(n), recall(n);
  std::size_t tp = 0;
  for (std::size_t k = 0; k < n; ++k) {
    tp += dets[k].tp;
    precision[k] = static_cast<double>(tp) / static_cast<double>(k + 1);
    recall[k] = static_cast<double>(tp) / static_cast<double>(n_gt);
  }
  // Right-max envelope.
  for (std::size_t k = n; k-- > 1;)
    precision[k - 1] = std::max(precision[k - 1], precision[k]);

  double sum = 0;
  for (int i = 0; i <= 100; ++i) {
    const double r = i / 100.0;
    auto it = std::lower_bound(recall.begin(), recall.end(), r);
    if (it != recall.end())
      sum += precision[it - recall.begin()];
  }
  return sum / 101.0;
}
}  // namespace

bool BBox::valid() const {
  return std::isfinite(x1) && std::isfinite(y1) && std::isfinite(x2)
         && std::isfinite(y2) && x1 >= 0 && y1 >= 0 && x2 > x1 && y2 > y1;
}

double iou(const BBox &a, const BBox &b) {
  const double w = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double h = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (w <= 0 || h <= 0)
    return 0.0;
  const double inter = w * h;
  const double uni = a.area() + b.area() - inter;
  return uni > 0 ? inter / uni : 0.0;
}

std::vector<std::pair<int, int>> match_detections(
    std::span<const ScoredBox> preds, std::span<const BBox> gts,
    double threshold) {
  std::vector<std::pair<int, int>> matches;
  std::vector<char> taken(gts.size(), 0);
  for (int p: by_descending_score(preds)) {
    int best = -1;
    double best_iou = threshold;
    for (int g = 0; g < static_cast<int>(gts.size()); ++g) {
      if (taken[g])
        continue;
      const double v = iou(preds[p].bbox, gts[g]);
      if (v >= best_iou && (best < 0 || v > best_iou)) {
        best = g;
        best_iou = v;
      }
    }
    if (best >= 0) {
      taken[best] = 1;
      matches.emplace_back(p, best);
    }
  }
  return matches;
}

std::array<double, 10> coco_ap_per_threshold(
    std::span<const DetectionPage> pages) {
  const std::size_t n_gt = count_gts(pages);
  if (n_gt == 0)
    throw UndefinedMetricError("AP is undefined without ground-truth boxes");

  std::array<double, 10> result {};
  for (std::size_t t = 0; t < kCocoIouThresholds.size(); ++t) {
    std::size_t matched = 0;
    const auto dets = evaluate_threshold(pages, kCocoIouThresholds[t], matched);
    result[t] = interpolated_ap(dets, n_gt);
  }
  return result;
}

std::array<double, 10> coco_ar_per_threshold(
    std::span<const DetectionPage> pages) {
  const std::size_t n_gt = count_gts(pages);
  if (n_gt == 0)
    throw UndefinedMetricError("AR is undefined without ground-truth boxes");

  std::array<double, 10> result {};
  for (std::size_t t = 0; t < kCocoIouThresholds.size(); ++t) {
    std::size_t matched = 0;
    for (const auto &page: pages)
      matched += match_detections(page.preds, page.gts, kCocoIouThresholds[t])
                     .size();
    result[t] = static_cast<double>(matched) / static_cast<double>(n_gt);
  }
  return result;
}

double coco_ap(std::span<const DetectionPage> pages) {
  const auto per = coco_ap_per_threshold(pages);
  return std::accumulate(per.begin(), per.end(), 0.0) / per.size();
}

double coco_ar(std::span<const DetectionPage> pages) {
  const auto per = coco_ar_per_threshold(pages);
  return std::accumulate(per.begin(), per.end(), 0.0) / per.size();
}

double f1(double precision, double recall) {
  if (precision + recall <= 0)
    return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

std::vector<ScoredBox> suppress_overlaps(std::span<const ScoredBox> boxes,
                                         double iou_threshold,
                                         double min_area) {
  std::vector<ScoredBox> kept;
  for (int i: by_descending_score(boxes)) {
    const ScoredBox &box = boxes[i];
    if (box.bbox.area() < min_area)
      continue;
    const bool clear = std::all_of(kept.begin(), kept.end(),
                                   [&](const ScoredBox &k) {
                                     return iou(k.bbox, box.bbox)
                                            < iou_threshold;
                                   });
    if (clear)
      kept.push_back(box);
  }
  return kept;
}

}  // namespace chemeval
