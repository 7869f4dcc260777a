//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMEVAL_REACTION_H_
#define CHEMEVAL_REACTION_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chemeval/combined.h"
#include "chemeval/detection.h"

namespace chemeval {

enum class RxnRole { kReactant, kCondition, kProduct };
enum class EntityKind { kMolecule, kText };
enum class MatchMode { kSoft, kHard };

std::string_view to_string(RxnRole role);
std::string_view to_string(EntityKind kind);
std::string_view to_string(MatchMode mode);

struct RxnEntity {
  RxnRole role = RxnRole::kReactant;
  EntityKind kind = EntityKind::kMolecule;
  BBox bbox;

  friend bool operator==(const RxnEntity &, const RxnEntity &) = default;
};

struct Reaction {
  std::vector<RxnEntity> entities;
  double score = 1.0;

  friend bool operator==(const Reaction &, const Reaction &) = default;
};

/// IoU strictly above this counts as an entity match.
inline constexpr double kEntityIouThreshold = 0.5;

/// Same kind, IoU > 0.5 and, when require_role, the same role.
bool entity_match(const RxnEntity &a, const RxnEntity &b, bool require_role);

/// Molecule entities only, in two pools: reactants together with condition
/// molecules, and products. Each pool must admit a perfect one-to-one
/// matching (IoU > 0.5).
bool soft_match(const Reaction &gt, const Reaction &pred);

/// Every entity, role and kind required, perfect one-to-one matching.
bool hard_match(const Reaction &gt, const Reaction &pred);

bool reaction_match(const Reaction &gt, const Reaction &pred, MatchMode mode);

struct ReactionPage {
  std::vector<Reaction> gts;
  std::vector<Reaction> preds;
};

struct ReactionPageResult {
  long n_gt = 0;
  long n_pred = 0;
  long matched = 0;
  // (gt index, pred index).
  std::vector<std::pair<int, int>> pairs;
};

struct ReactionReport {
  long n_gt = 0;
  long n_pred = 0;
  long matched = 0;
  PrecisionRecall metrics;
  std::vector<ReactionPageResult> pages;
};

/// One-to-one reaction pairing per page: each prediction, in list order,
/// takes the first free ground-truth reaction it matches, and conflicts are
/// repaired with augmenting paths so the number of pairs is maximal.
ReactionPageResult match_reactions(const ReactionPage &page, MatchMode mode);

/// precision = matched / predictions, recall = matched / ground truth (0 on
/// empty denominators); corpus values from summed page counts.
ReactionReport reaction_prf(std::span<const ReactionPage> pages,
                            MatchMode mode);

}  // namespace chemeval

#endif  // CHEMEVAL_REACTION_H_
