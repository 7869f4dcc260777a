//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMEVAL_COMBINED_H_
#define CHEMEVAL_COMBINED_H_

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chemeval/canonical.h"
#include "chemeval/detection.h"
#include "chemeval/molecule.h"

namespace chemeval {

/// Key carried by predictions whose structure could not be parsed or
/// normalized; it matches nothing, including another invalid key.
inline const std::string kInvalidKey = "<invalid>";

struct KeyedBox {
  BBox bbox;
  std::string key;
};

struct ScoredKeyedBox {
  ScoredBox box;
  std::string key;
};

struct CombinedCounts {
  long tp = 0;
  long fp = 0;
  long fn = 0;

  CombinedCounts &operator+=(const CombinedCounts &other) {
    tp += other.tp;
    fp += other.fp;
    fn += other.fn;
    return *this;
  }

  friend bool operator==(const CombinedCounts &,
                         const CombinedCounts &) = default;
};

/// Page-level result of the combined detection + structure metric.
struct CombinedMatch {
  CombinedCounts counts;
  // (gt index, pred index) pairs counted as true positives.
  std::vector<std::pair<int, int>> true_positives;
};

/// True when both keys are valid and equal.
bool keys_match(const std::string &a, const std::string &b);

/// One-to-one matching between ground-truth and predicted molecules. A pair
/// is eligible when IoU >= tau and the canonical keys are equal; the result
/// is a maximum matching over eligible pairs, built by trying pairs in
/// descending IoU order (gt index, then pred index on ties) and repairing
/// conflicts with augmenting paths. fp = |pred| - tp, fn = |gt| - tp.
/// Throws std::invalid_argument for tau outside (0, 1].
CombinedMatch combined_match(std::span<const KeyedBox> gts,
                             std::span<const ScoredKeyedBox> preds,
                             double tau = 0.5);

CombinedCounts combined_counts(std::span<const KeyedBox> gts,
                               std::span<const ScoredKeyedBox> preds,
                               double tau = 0.5);

/// Same matching with structure keys ignored: the detection-only count.
CombinedCounts detection_counts(std::span<const KeyedBox> gts,
                                std::span<const ScoredKeyedBox> preds,
                                double tau = 0.5);

struct PrecisionRecall {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

/// precision = tp / (tp + fp), recall = tp / (tp + fn), each 0 on a zero
/// denominator; f1 the harmonic mean.
PrecisionRecall precision_recall(const CombinedCounts &counts);

struct CombinedPage {
  std::vector<KeyedBox> gts;
  std::vector<ScoredKeyedBox> preds;
};

struct CombinedReport {
  CombinedCounts total;
  PrecisionRecall metrics;
  std::vector<CombinedMatch> pages;
};

/// Corpus-level combined metric from summed page counts. Throws
/// UndefinedMetricError when the corpus has no ground-truth molecule.
CombinedReport combined_prf(std::span<const CombinedPage> pages,
                            double tau = 0.5);

/// Ground-truth molecule paired with the model's structure for the same box;
/// nullopt when the prediction is missing or unparseable.
struct ConversionPair {
  Molecule gt;
  std::optional<Molecule> pred;
};

struct ConversionAccuracy {
  double smiles_match_rate = 0;
  double mean_tanimoto = 0;
};

/// Exact-structure match rate and mean fingerprint Tanimoto; invalid
/// predictions score 0 on both. Molecules must be normalized. Throws
/// UndefinedMetricError on an empty list.
ConversionAccuracy conversion_accuracy(std::span<const ConversionPair> pairs);

}  // namespace chemeval

#endif  // CHEMEVAL_COMBINED_H_
