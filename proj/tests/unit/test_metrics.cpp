//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include "chemeval/bipartite.h"
#include "chemeval/combined.h"
#include "chemeval/detection.h"
#include "chemeval/fingerprint.h"
#include "chemeval/reaction.h"
#include "support.h"

namespace chemeval {
namespace {
using testing::smi;

// Fingerprints

Fingerprint bits(std::initializer_list<int> on, int nbits = 16) {
  Fingerprint fp(nbits);
  for (int b: on)
    fp.set(b);
  return fp;
}

TEST(Tanimoto, Examples) {
  EXPECT_DOUBLE_EQ(tanimoto(bits({ 1, 2, 3 }), bits({ 3, 4 })), 0.25);
  EXPECT_DOUBLE_EQ(tanimoto(bits({ 1, 5 }), bits({ 1, 5 })), 1.0);
  EXPECT_DOUBLE_EQ(tanimoto(bits({ 1 }), bits({ 2 })), 0.0);
  EXPECT_DOUBLE_EQ(tanimoto(bits({}), bits({})), 1.0);
  EXPECT_THROW(tanimoto(bits({}, 16), bits({}, 32)), std::invalid_argument);
}

TEST(Fingerprint, Fnv1aKnownValue) {
  // FNV-1a 64 of the eight zero bytes of the value 0.
  EXPECT_EQ(fnv1a64({ 0 }), 0xa8c7f832281a39c5ULL);
  EXPECT_EQ(fnv1a64({}), 0xcbf29ce484222325ULL);
}

TEST(Fingerprint, MethaneRadiusZeroHasOneEnvironment) {
  EXPECT_EQ(environment_ids(smi("C"), 0).size(), 1u);
  EXPECT_EQ(fingerprint(smi("C"), 0).count(), 1);
}

TEST(Fingerprint, RelabelingInvariant) {
  Rng rng(11);
  const Molecule m = smi("CC(=O)Nc1ccc(O)cc1");
  EXPECT_EQ(fingerprint(m), fingerprint(testing::shuffled(m, rng)));
}

TEST(Fingerprint, BenzeneDiffersFromPyridine) {
  EXPECT_NE(fingerprint(smi("c1ccccc1")), fingerprint(smi("c1ccncc1")));
}

TEST(Fingerprint, FoldsIntoRequestedWidth) {
  const Fingerprint fp = fingerprint(smi("CCCCCCCCCCO"), 2, 64);
  EXPECT_EQ(fp.size(), 64);
  EXPECT_GT(fp.count(), 0);
}

// Detection

TEST(Iou, Examples) {
  const BBox a { 0, 0, 10, 10 };
  EXPECT_DOUBLE_EQ(iou(a, a), 1.0);
  EXPECT_DOUBLE_EQ(iou(a, { 20, 20, 30, 30 }), 0.0);
  EXPECT_DOUBLE_EQ(iou(a, { 10, 0, 20, 10 }), 0.0);
  EXPECT_DOUBLE_EQ(iou(a, { 5, 0, 15, 10 }), 50.0 / 150.0);
  EXPECT_DOUBLE_EQ(iou(a, { 0, 0, 10, 6 }), 0.6);
}

TEST(BBoxValid, Rules) {
  EXPECT_TRUE((BBox { 0, 0, 1, 1 }).valid());
  EXPECT_FALSE((BBox { 1, 0, 1, 1 }).valid());
  EXPECT_FALSE((BBox { -1, 0, 1, 1 }).valid());
}

TEST(MatchDetections, HighestScoreFirst) {
  const std::vector<BBox> gts { { 0, 0, 10, 10 } };
  const std::vector<ScoredBox> preds { { { 0, 0, 10, 9 }, 0.3 },
                                       { { 0, 0, 10, 8 }, 0.9 } };
  const auto m = match_detections(preds, gts, 0.5);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0], (std::pair<int, int> { 1, 0 }));
}

TEST(CocoAp, PerfectIsOne) {
  const std::vector<DetectionPage> pages {
    { { { 0, 0, 10, 10 }, { 20, 20, 30, 30 } },
      { { { 0, 0, 10, 10 }, 0.9 }, { { 20, 20, 30, 30 }, 0.8 } } }
  };
  EXPECT_DOUBLE_EQ(coco_ap(pages), 1.0);
  EXPECT_DOUBLE_EQ(coco_ar(pages), 1.0);
}

TEST(CocoAp, SinglePredictionAtIou060) {
  const std::vector<DetectionPage> pages {
    { { { 0, 0, 10, 10 } }, { { { 0, 0, 10, 6 }, 0.8 } } }
  };
  EXPECT_EQ(coco_ap(pages), 0.3);
  EXPECT_EQ(coco_ar(pages), 0.3);
  EXPECT_NEAR(f1(coco_ap(pages), coco_ar(pages)), 0.3, 1e-15);
}

TEST(CocoAp, NoPredictionsIsZero) {
  const std::vector<DetectionPage> pages { { { { 0, 0, 10, 10 } }, {} } };
  EXPECT_EQ(coco_ap(pages), 0.0);
  EXPECT_EQ(coco_ar(pages), 0.0);
}

TEST(CocoAp, UndefinedWithoutGroundTruth) {
  const std::vector<DetectionPage> pages { { {}, { { { 0, 0, 1, 1 }, 1 } } } };
  EXPECT_THROW(coco_ap(pages), UndefinedMetricError);
  EXPECT_THROW(coco_ar(pages), UndefinedMetricError);
}

TEST(F1, Values) {
  EXPECT_DOUBLE_EQ(f1(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(f1(1, 1), 1.0);
  EXPECT_NEAR(f1(0.914, 0.938), 0.926, 0.0005);
  EXPECT_NEAR(f1(0.891, 0.930), 0.910, 0.0005);
  EXPECT_NEAR(f1(0.895, 0.887), 0.891, 0.0005);
}

TEST(SuppressOverlaps, KeepsHighestScoring) {
  const std::vector<ScoredBox> boxes { { { 0, 0, 10, 10 }, 0.5 },
                                       { { 1, 0, 11, 10 }, 0.9 },
                                       { { 50, 50, 60, 60 }, 0.1 },
                                       { { 80, 80, 81, 81 }, 0.95 } };
  const auto kept = suppress_overlaps(boxes, 0.5, 2.0);
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].score, 0.9);
  EXPECT_EQ(kept[1].score, 0.1);
}

// Bipartite matching

TEST(Bipartite, AugmentsPastGreedyChoice) {
  // Left 0 prefers right 0, which left 1 needs.
  const std::vector<std::vector<int>> adj { { 0, 1 }, { 0 } };
  std::vector<int> l { 0, -1 }, r { 0, -1 };
  EXPECT_EQ(max_bipartite_matching(adj, 2, l, r), 2);
  EXPECT_EQ(l[1], 0);
  EXPECT_EQ(l[0], 1);
  EXPECT_EQ(max_bipartite_matching({ { 0 }, { 0 }, { 1 } }, 2), 2);
}

// Combined

TEST(Combined, TwoGroundTruthsOneMismatch) {
  const std::vector<KeyedBox> gts { { { 0, 0, 10, 10 }, "CCO" },
                                    { { 20, 0, 30, 10 }, "c1ccccc1" } };
  const std::vector<ScoredKeyedBox> preds {
    { { { 0, 0, 10, 10 }, 0.9 }, "CCO" },
    { { { 20, 0, 30, 10 }, 0.8 }, "c1ccncc1" },
  };
  const CombinedCounts c = combined_counts(gts, preds, 0.5);
  EXPECT_EQ(c, (CombinedCounts { 1, 1, 1 }));
  const PrecisionRecall pr = precision_recall(c);
  EXPECT_DOUBLE_EQ(pr.precision, 0.5);
  EXPECT_DOUBLE_EQ(pr.recall, 0.5);
  EXPECT_DOUBLE_EQ(pr.f1, 0.5);
  EXPECT_EQ(detection_counts(gts, preds, 0.5), (CombinedCounts { 2, 0, 0 }));
}

TEST(Combined, InvalidKeysNeverMatch) {
  const std::vector<KeyedBox> gts { { { 0, 0, 10, 10 }, kInvalidKey } };
  const std::vector<ScoredKeyedBox> preds { { { { 0, 0, 10, 10 }, 1 },
                                              kInvalidKey } };
  EXPECT_EQ(combined_counts(gts, preds).tp, 0);
}

TEST(Combined, MaximumOverGreedyConflicts) {
  // Greedy by IoU would give gt 0 the only prediction gt 1 can use.
  const std::vector<KeyedBox> gts { { { 0, 0, 10, 10 }, "C" },
                                    { { 2, 0, 12, 10 }, "C" } };
  const std::vector<ScoredKeyedBox> preds {
    { { { 0, 0, 10, 10 }, 0.9 }, "C" },
    { { { 0, 0, 9, 10 }, 0.5 }, "C" },
  };
  EXPECT_EQ(combined_counts(gts, preds, 0.6).tp, 2);
}

TEST(Combined, TauValidation) {
  EXPECT_THROW(combined_counts({}, {}, 0.0), std::invalid_argument);
  EXPECT_THROW(combined_counts({}, {}, 1.5), std::invalid_argument);
}

TEST(Combined, CorpusUndefinedWithoutGroundTruth) {
  std::vector<CombinedPage> pages(2);
  EXPECT_THROW(combined_prf(pages), UndefinedMetricError);
}

TEST(ConversionAccuracy, Examples) {
  const Molecule a = smi("CCO"), b = smi("c1ccccc1");
  const std::vector<ConversionPair> same { { a, a }, { b, b } };
  const ConversionAccuracy acc = conversion_accuracy(same);
  EXPECT_DOUBLE_EQ(acc.smiles_match_rate, 1.0);
  EXPECT_DOUBLE_EQ(acc.mean_tanimoto, 1.0);

  const std::vector<ConversionPair> mixed { { a, a }, { b, std::nullopt } };
  const ConversionAccuracy half = conversion_accuracy(mixed);
  EXPECT_DOUBLE_EQ(half.smiles_match_rate, 0.5);
  EXPECT_DOUBLE_EQ(half.mean_tanimoto, 0.5);

  EXPECT_THROW(conversion_accuracy({}), UndefinedMetricError);
}

// Reactions

RxnEntity entity(RxnRole role, double x, EntityKind kind = EntityKind::kMolecule) {
  return { role, kind, { x, 0, x + 10, 10 } };
}

Reaction esterification() {
  return { { entity(RxnRole::kReactant, 0), entity(RxnRole::kReactant, 20),
             entity(RxnRole::kCondition, 40),
             entity(RxnRole::kCondition, 60, EntityKind::kText),
             entity(RxnRole::kProduct, 80) },
           1.0 };
}

TEST(ReactionMatch, Identical) {
  EXPECT_TRUE(soft_match(esterification(), esterification()));
  EXPECT_TRUE(hard_match(esterification(), esterification()));
}

TEST(ReactionMatch, RoleSwapSplitsSoftAndHard) {
  Reaction pred = esterification();
  pred.entities[1].role = RxnRole::kCondition;
  pred.entities[2].role = RxnRole::kReactant;
  EXPECT_TRUE(soft_match(esterification(), pred));
  EXPECT_FALSE(hard_match(esterification(), pred));
}

TEST(ReactionMatch, MissingProduct) {
  Reaction pred = esterification();
  pred.entities.pop_back();
  EXPECT_FALSE(soft_match(esterification(), pred));
  EXPECT_FALSE(hard_match(esterification(), pred));
}

TEST(ReactionMatch, SoftIgnoresText) {
  Reaction pred = esterification();
  pred.entities.erase(pred.entities.begin() + 3);
  EXPECT_TRUE(soft_match(esterification(), pred));
  EXPECT_FALSE(hard_match(esterification(), pred));
}

TEST(ReactionMatch, IouMustExceedHalf) {
  Reaction pred = esterification();
  // IoU exactly 1/3 and then exactly 0.5.
  pred.entities[0].bbox = { 5, 0, 15, 10 };
  EXPECT_FALSE(soft_match(esterification(), pred));
  pred.entities[0].bbox = { 0, 0, 10, 5 };
  EXPECT_FALSE(soft_match(esterification(), pred));
}

TEST(ReactionPrf, CountsAndEmptyCorpus) {
  ReactionPage page { { esterification(), esterification() },
                      { esterification() } };
  const std::vector<ReactionPage> pages { page };
  const ReactionReport r = reaction_prf(pages, MatchMode::kHard);
  EXPECT_EQ(r.matched, 1);
  EXPECT_DOUBLE_EQ(r.metrics.precision, 1.0);
  EXPECT_DOUBLE_EQ(r.metrics.recall, 0.5);

  const ReactionReport empty = reaction_prf({}, MatchMode::kSoft);
  EXPECT_EQ(empty.metrics.f1, 0.0);
}

}  // namespace
}  // namespace chemeval
