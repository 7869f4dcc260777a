//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Brute-force reference implementations. Only domain types are shared with
// the library; every computation here is written independently.

#ifndef CHEMEVAL_TESTS_ORACLE_H_
#define CHEMEVAL_TESTS_ORACLE_H_

#include <vector>

#include "chemeval/combined.h"
#include "chemeval/detection.h"
#include "chemeval/molecule.h"
#include "chemeval/reaction.h"

namespace chemeval::oracle {

double box_iou(const BBox &a, const BBox &b);

/// Maximum tp over every one-to-one assignment with IoU >= tau and equal
/// valid keys. At most 8 boxes per side, else std::length_error.
CombinedCounts oracle_combined(const std::vector<KeyedBox> &gts,
                               const std::vector<ScoredKeyedBox> &preds,
                               double tau);

/// Entity pairing by permutation search. Groups of at most 6 entities.
bool oracle_reaction_match(const Reaction &gt, const Reaction &pred,
                           MatchMode mode);

/// COCO AP and AR from explicitly built precision/recall lists.
double oracle_ap(const std::vector<DetectionPage> &pages);
double oracle_ar(const std::vector<DetectionPage> &pages);

/// Backtracking isomorphism over atom attributes (element, charge, isotope,
/// hydrogens, aromatic flag) and bond orders.
bool oracle_isomorphic(const Molecule &a, const Molecule &b);

/// Same question by trying every atom permutation (at most 8 atoms).
bool oracle_isomorphic_exhaustive(const Molecule &a, const Molecule &b);

}  // namespace chemeval::oracle

#endif  // CHEMEVAL_TESTS_ORACLE_H_
