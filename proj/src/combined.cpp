//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemeval/combined.h"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "chemeval/bipartite.h"
#include "chemeval/fingerprint.h"

namespace chemeval {
namespace {
struct Candidate {
  double iou;
  int gt;
  int pred;
};

CombinedMatch match_page(std::span<const KeyedBox> gts,
                         std::span<const ScoredKeyedBox> preds, double tau,
                         bool require_key) {
  if (!(tau > 0.0 && tau <= 1.0))
    throw std::invalid_argument("tau must lie in (0, 1]");

  std::vector<Candidate> candidates;
  for (int g = 0; g < static_cast<int>(gts.size()); ++g) {
    for (int p = 0; p < static_cast<int>(preds.size()); ++p) {
      if (require_key && !keys_match(gts[g].key, preds[p].key))
        continue;
      const double v = iou(gts[g].bbox, preds[p].box.bbox);
      if (v >= tau)
        candidates.push_back({ v, g, p });
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate &a, const Candidate &b) {
              return std::tie(b.iou, a.gt, a.pred)
                     < std::tie(a.iou, b.gt, b.pred);
            });

  std::vector<std::vector<int>> adjacency(gts.size());
  std::vector<int> gt_match(gts.size(), -1), pred_match(preds.size(), -1);
  for (const Candidate &c: candidates) {
    adjacency[c.gt].push_back(c.pred);
    if (gt_match[c.gt] < 0 && pred_match[c.pred] < 0) {
      gt_match[c.gt] = c.pred;
      pred_match[c.pred] = c.gt;
    }
  }
  const int tp = max_bipartite_matching(adjacency,
                                        static_cast<int>(preds.size()),
                                        gt_match, pred_match);

  CombinedMatch result;
  result.counts.tp = tp;
  result.counts.fp = static_cast<long>(preds.size()) - tp;
  result.counts.fn = static_cast<long>(gts.size()) - tp;
  for (int g = 0; g < static_cast<int>(gts.size()); ++g) {
    if (gt_match[g] >= 0)
      result.true_positives.emplace_back(g, gt_match[g]);
  }
  return result;
}
}  // namespace

bool keys_match(const std::string &a, const std::string &b) {
  return a == b && a != kInvalidKey;
}

CombinedMatch combined_match(std::span<const KeyedBox> gts,
                             std::span<const ScoredKeyedBox> preds,
                             double tau) {
  return match_page(gts, preds, tau, true);
}

CombinedCounts combined_counts(std::span<const KeyedBox> gts,
                               std::span<const ScoredKeyedBox> preds,
                               double tau) {
  return match_page(gts, preds, tau, true).counts;
}

CombinedCounts detection_counts(std::span<const KeyedBox> gts,
                                std::span<const ScoredKeyedBox> preds,
                                double tau) {
  return match_page(gts, preds, tau, false).counts;
}

PrecisionRecall precision_recall(const CombinedCounts &counts) {
  PrecisionRecall pr;
  if (counts.tp + counts.fp > 0)
    pr.precision = static_cast<double>(counts.tp)
                   / static_cast<double>(counts.tp + counts.fp);
  if (counts.tp + counts.fn > 0)
    pr.recall = static_cast<double>(counts.tp)
                / static_cast<double>(counts.tp + counts.fn);
  pr.f1 = f1(pr.precision, pr.recall);
  return pr;
}

CombinedReport combined_prf(std::span<const CombinedPage> pages, double tau) {
  CombinedReport report;
  long n_gt = 0;
  for (const CombinedPage &page: pages) {
    report.pages.push_back(combined_match(page.gts, page.preds, tau));
    report.total += report.pages.back().counts;
    n_gt += static_cast<long>(page.gts.size());
  }
  if (n_gt == 0)
    throw UndefinedMetricError(
        "combined metric is undefined without ground-truth molecules");
  report.metrics = precision_recall(report.total);
  return report;
}

ConversionAccuracy conversion_accuracy(std::span<const ConversionPair> pairs) {
  if (pairs.empty())
    throw UndefinedMetricError(
        "conversion accuracy is undefined for an empty pair list");

  long matches = 0;
  double tanimoto_sum = 0;
  for (const ConversionPair &pair: pairs) {
    if (!pair.pred)
      continue;
    if (canonical_key(pair.gt) == canonical_key(*pair.pred))
      ++matches;
    tanimoto_sum += tanimoto(fingerprint(pair.gt), fingerprint(*pair.pred));
  }

  ConversionAccuracy result;
  result.smiles_match_rate = static_cast<double>(matches)
                             / static_cast<double>(pairs.size());
  result.mean_tanimoto = tanimoto_sum / static_cast<double>(pairs.size());
  return result;
}

}  // namespace chemeval
