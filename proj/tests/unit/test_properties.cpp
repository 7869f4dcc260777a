//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include "checks.h"
#include "chemeval/corpus.h"
#include "chemeval/fingerprint.h"
#include "generators.h"
#include "oracle/oracle.h"

namespace chemeval {
namespace {
using checks::CheckResult;
using testing::key_of;
using testing::shuffled;

void expect_ok(const CheckResult &r) {
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_GT(r.cases, 0);
}

TEST(Agreement, PermutationInvariance) {
  expect_ok(checks::permutation_invariance(11, 40, 50));
}

TEST(Agreement, KeyIffIsomorphic) {
  expect_ok(checks::key_iff_isomorphic(12, 200));
}

TEST(Agreement, RoundTrips) { expect_ok(checks::round_trips(13, 300)); }

TEST(Agreement, CombinedAgainstReference) {
  expect_ok(checks::combined_vs_oracle(14, 500));
}

TEST(Agreement, ApArAgainstReference) {
  expect_ok(checks::ap_ar_vs_oracle(15, 500));
}

TEST(Agreement, ReactionsAgainstReference) {
  expect_ok(checks::reactions_vs_oracle(16, 1000));
}

TEST(Properties, NormalizeIdempotentAndFingerprintInvariant) {
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const Molecule m = random_molecule(rng);
    EXPECT_EQ(normalize(normalize(m)), normalize(m));
    const Molecule p = shuffled(m, rng);
    EXPECT_EQ(fingerprint(m), fingerprint(p));
    const Molecule q = random_molecule(rng);
    const double t = tanimoto(fingerprint(m), fingerprint(q));
    EXPECT_EQ(t, tanimoto(fingerprint(q), fingerprint(m)));
    EXPECT_GE(t, 0.0);
    EXPECT_LE(t, 1.0);
    EXPECT_EQ(tanimoto(fingerprint(m), fingerprint(p)), 1.0);
  }
}

TEST(Properties, IouBoundsAndSymmetry) {
  Rng rng(22);
  for (int i = 0; i < 2000; ++i) {
    const BBox a = testing::random_box(rng), b = testing::random_box(rng);
    const double v = iou(a, b);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
    EXPECT_EQ(v, iou(b, a));
    EXPECT_EQ(iou(a, a), 1.0);
    EXPECT_NEAR(v, oracle::box_iou(a, b), 1e-12);
  }
}

TEST(Properties, LowestScoringMissDoesNotChangeAp) {
  Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    std::vector<DetectionPage> pages = testing::random_detection_pages(rng);
    pages[0].gts.push_back({ 0, 0, 10, 10 });
    const double ap = coco_ap(pages);
    double lowest = 1;
    for (const DetectionPage &p: pages) {
      for (const ScoredBox &s: p.preds)
        lowest = std::min(lowest, s.score);
    }
    // Far from every box, so it can never match.
    pages[0].preds.push_back({ { 5000, 5000, 5010, 5010 }, lowest / 2 });
    EXPECT_EQ(coco_ap(pages), ap);
  }
}

TEST(Properties, F1Bounds) {
  Rng rng(24);
  for (int i = 0; i < 2000; ++i) {
    const double p = uniform_unit(rng), r = uniform_unit(rng);
    const double v = f1(p, r);
    EXPECT_GE(v, std::min(p, r) - 1e-15);
    EXPECT_LE(v, std::max(p, r) + 1e-15);
  }
  EXPECT_EQ(f1(0, 0), 0.0);
}

TEST(Properties, TauMonotoneAndCombinedBelowDetection) {
  Rng rng(25);
  for (int i = 0; i < 500; ++i) {
    const CombinedPage page = testing::random_combined_page(rng);
    long previous = -1;
    for (double tau: { 0.9, 0.75, 0.5, 0.3 }) {
      const CombinedCounts c = combined_counts(page.gts, page.preds, tau);
      EXPECT_GE(c.tp, previous);
      previous = c.tp;
      EXPECT_LE(c.tp, detection_counts(page.gts, page.preds, tau).tp);
    }
  }
}

TEST(Properties, HardMatchImpliesSoftMatchPerPage) {
  Rng rng(26);
  for (int i = 0; i < 300; ++i) {
    ReactionPage page;
    const int n = uniform_int(rng, 0, 4);
    for (int k = 0; k < n; ++k) {
      page.gts.push_back(testing::random_reaction(rng));
      if (bernoulli(rng, 0.8))
        page.preds.push_back(testing::perturbed_reaction(page.gts.back(), rng));
    }
    const auto soft = match_reactions(page, MatchMode::kSoft);
    const auto hard = match_reactions(page, MatchMode::kHard);
    EXPECT_LE(hard.matched, soft.matched);
  }
}

TEST(Properties, FixtureCountsAgreeWithReference) {
  FixtureParams params;
  params.pages = 30;
  params.max_molecules = 8;
  params.perturbation = { 0.25, 0.3, 0.15, 0.5, 0.2 };
  const Fixture fx = generate_fixture(27, params);
  long checked = 0;
  for (const AlignedPage &ap: align_pages(fx.gt, fx.pred)) {
    std::vector<KeyedBox> gts;
    std::vector<ScoredKeyedBox> preds;
    for (const GtMolecule &m: ap.gt->molecules)
      gts.push_back({ m.bbox, m.key });
    for (const PredMolecule &m: ap.pred->molecules)
      preds.push_back({ m.box, resolve_structure(m.format, m.structure).key });
    if (preds.size() > 8)
      continue;
    ++checked;
    EXPECT_EQ(combined_counts(gts, preds), oracle::oracle_combined(gts, preds, 0.5))
        << ap.gt->page_id;
  }
  EXPECT_GT(checked, 10);
}

}  // namespace
}  // namespace chemeval
