//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemeval/reaction.h"

#include "chemeval/bipartite.h"

namespace chemeval {
namespace {
bool perfect_matching(const std::vector<RxnEntity> &gt,
                      const std::vector<RxnEntity> &pred, bool require_role) {
  if (gt.size() != pred.size())
    return false;

  std::vector<std::vector<int>> adjacency(gt.size());
  for (std::size_t g = 0; g < gt.size(); ++g) {
    for (std::size_t p = 0; p < pred.size(); ++p) {
      if (entity_match(gt[g], pred[p], require_role))
        adjacency[g].push_back(static_cast<int>(p));
    }
    if (adjacency[g].empty())
      return false;
  }
  return max_bipartite_matching(adjacency, static_cast<int>(pred.size()))
         == static_cast<int>(gt.size());
}

void soft_pools(const Reaction &rxn, std::vector<RxnEntity> &left,
                std::vector<RxnEntity> &products) {
  for (const RxnEntity &e: rxn.entities) {
    if (e.kind != EntityKind::kMolecule)
      continue;
    (e.role == RxnRole::kProduct ? products : left).push_back(e);
  }
}
}  // namespace

std::string_view to_string(RxnRole role) {
  switch (role) {
  case RxnRole::kReactant:
    return "reactant";
  case RxnRole::kCondition:
    return "condition";
  case RxnRole::kProduct:
    return "product";
  }
  return "?";
}

std::string_view to_string(EntityKind kind) {
  return kind == EntityKind::kMolecule ? "molecule" : "text";
}

std::string_view to_string(MatchMode mode) {
  return mode == MatchMode::kSoft ? "soft" : "hard";
}

bool entity_match(const RxnEntity &a, const RxnEntity &b, bool require_role) {
  if (a.kind != b.kind)
    return false;
  if (require_role && a.role != b.role)
    return false;
  return iou(a.bbox, b.bbox) > kEntityIouThreshold;
}

bool soft_match(const Reaction &gt, const Reaction &pred) {
  std::vector<RxnEntity> gt_left, gt_products, pred_left, pred_products;
  soft_pools(gt, gt_left, gt_products);
  soft_pools(pred, pred_left, pred_products);
  return perfect_matching(gt_left, pred_left, false)
         && perfect_matching(gt_products, pred_products, false);
}

bool hard_match(const Reaction &gt, const Reaction &pred) {
  return perfect_matching(gt.entities, pred.entities, true);
}

bool reaction_match(const Reaction &gt, const Reaction &pred,
                    MatchMode mode) {
  return mode == MatchMode::kSoft ? soft_match(gt, pred)
                                  : hard_match(gt, pred);
}

ReactionPageResult match_reactions(const ReactionPage &page, MatchMode mode) {
  const int n_pred = static_cast<int>(page.preds.size());
  const int n_gt = static_cast<int>(page.gts.size());

  std::vector<std::vector<int>> adjacency(n_pred);
  std::vector<int> pred_match(n_pred, -1), gt_match(n_gt, -1);
  for (int p = 0; p < n_pred; ++p) {
    for (int g = 0; g < n_gt; ++g) {
      if (!reaction_match(page.gts[g], page.preds[p], mode))
        continue;
      adjacency[p].push_back(g);
      if (pred_match[p] < 0 && gt_match[g] < 0) {
        pred_match[p] = g;
        gt_match[g] = p;
      }
    }
  }

  ReactionPageResult result;
  result.n_gt = n_gt;
  result.n_pred = n_pred;
  result.matched = max_bipartite_matching(adjacency, n_gt, pred_match,
                                          gt_match);
  for (int g = 0; g < n_gt; ++g) {
    if (gt_match[g] >= 0)
      result.pairs.emplace_back(g, gt_match[g]);
  }
  return result;
}

ReactionReport reaction_prf(std::span<const ReactionPage> pages,
                            MatchMode mode) {
  ReactionReport report;
  for (const ReactionPage &page: pages) {
    report.pages.push_back(match_reactions(page, mode));
    const auto &r = report.pages.back();
    report.n_gt += r.n_gt;
    report.n_pred += r.n_pred;
    report.matched += r.matched;
  }
  if (report.n_pred > 0)
    report.metrics.precision = static_cast<double>(report.matched)
                               / static_cast<double>(report.n_pred);
  if (report.n_gt > 0)
    report.metrics.recall = static_cast<double>(report.matched)
                            / static_cast<double>(report.n_gt);
  report.metrics.f1 = f1(report.metrics.precision, report.metrics.recall);
  return report;
}

}  // namespace chemeval
