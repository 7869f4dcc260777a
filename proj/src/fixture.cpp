//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemeval/fixture.h"

#include <algorithm>
#include <cmath>

#include "chemeval/canonical.h"
#include "chemeval/combined.h"
#include "chemeval/fingerprint.h"
#include "chemeval/molfile.h"
#include "chemeval/normalize.h"
#include "chemeval/smiles.h"

namespace chemeval {
namespace {
using nlohmann::ordered_json;

double round2(double v) {
  return std::round(v * 100) / 100;
}

struct Cell {
  double x;
  double y;
};

class PageBuilder {
public:
  PageBuilder(const FixtureParams &params, Rng &rng)
      : params_(params), rng_(rng),
        cell_w_(params.page_width / params.grid_cols),
        cell_h_(params.page_height / params.grid_rows) {
    for (int r = 0; r < params.grid_rows; ++r) {
      for (int c = 0; c < params.grid_cols; ++c)
        free_.push_back({ c * cell_w_, r * cell_h_ });
    }
    // Fisher-Yates with the fixture's own integer helper.
    for (int i = static_cast<int>(free_.size()) - 1; i > 0; --i)
      std::swap(free_[i], free_[uniform_int(rng_, 0, i)]);
  }

  bool has_free() const { return !free_.empty(); }

  BBox take_box() {
    const Cell cell = free_.back();
    free_.pop_back();
    const double w = cell_w_ * uniform_real(rng_, 0.60, 0.85);
    const double h = cell_h_ * uniform_real(rng_, 0.60, 0.85);
    const double x = cell.x + uniform_real(rng_, 0, cell_w_ - w);
    const double y = cell.y + uniform_real(rng_, 0, cell_h_ - h);
    return { round2(x), round2(y), round2(x + w), round2(y + h) };
  }

  BBox jitter(const BBox &box) {
    const double j = params_.perturbation.box_jitter;
    if (j <= 0)
      return box;
    const double w = box.width(), h = box.height();
    BBox out { box.x1 + w * uniform_real(rng_, -j, j),
               box.y1 + h * uniform_real(rng_, -j, j),
               box.x2 + w * uniform_real(rng_, -j, j),
               box.y2 + h * uniform_real(rng_, -j, j) };
    out.x1 = round2(std::clamp(out.x1, 0.0, params_.page_width));
    out.y1 = round2(std::clamp(out.y1, 0.0, params_.page_height));
    out.x2 = round2(std::clamp(out.x2, 0.0, params_.page_width));
    out.y2 = round2(std::clamp(out.y2, 0.0, params_.page_height));
    return out;
  }

private:
  const FixtureParams &params_;
  Rng &rng_;
  double cell_w_;
  double cell_h_;
  std::vector<Cell> free_;
};

std::string invalidate(const std::string &text, StructureFormat format) {
  if (format == StructureFormat::kSmiles)
    return text + "(";
  const auto end = text.find("M  END");
  return text.substr(0, end);
}

std::string structure_text(const Molecule &mol, StructureFormat format) {
  return format == StructureFormat::kSmiles ? write_smiles(mol)
                                            : write_molfile(mol);
}

std::vector<int> sample_distinct(Rng &rng, int n, int k) {
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i)
    all[i] = i;
  for (int i = 0; i < k; ++i)
    std::swap(all[i], all[uniform_int(rng, i, n - 1)]);
  all.resize(k);
  return all;
}

struct PredSlot {
  bool present = false;
  BBox box;
};

void check_rate(double v, const char *name) {
  if (!(v >= 0 && v <= 1))
    throw FixtureError(std::string(name) + " must lie in [0, 1]");
}
}  // namespace

void validate(const FixtureParams &params) {
  if (params.pages < 0)
    throw FixtureError("pages must be non-negative");
  if (params.min_molecules < 0 || params.min_molecules > params.max_molecules)
    throw FixtureError("invalid molecules per page range");
  if (params.min_reactions < 0 || params.min_reactions > params.max_reactions)
    throw FixtureError("invalid reactions per page range");
  if (params.grid_cols <= 0 || params.grid_rows <= 0)
    throw FixtureError("grid must have at least one cell");
  if (!(params.page_width > 0 && params.page_height > 0))
    throw FixtureError("page size must be positive");
  if (params.max_molecules > params.grid_cols * params.grid_rows)
    throw FixtureError("infeasible layout: "
                       + std::to_string(params.max_molecules)
                       + " molecules do not fit a "
                       + std::to_string(params.grid_cols) + "x"
                       + std::to_string(params.grid_rows) + " grid");
  const Perturbation &p = params.perturbation;
  if (!(p.box_jitter >= 0 && p.box_jitter <= 0.25))
    throw FixtureError("box_jitter must lie in [0, 0.25]");
  check_rate(p.structure_corruption_rate, "structure_corruption_rate");
  check_rate(p.drop_rate, "drop_rate");
  check_rate(p.spurious_rate, "spurious_rate");
  check_rate(p.role_swap_rate, "role_swap_rate");
}

ordered_json to_json(const FixtureParams &params) {
  const Perturbation &p = params.perturbation;
  return ordered_json {
    { "pages", params.pages },
    { "molecules_per_page", { params.min_molecules, params.max_molecules } },
    { "reactions_per_page", { params.min_reactions, params.max_reactions } },
    { "page_size", { params.page_width, params.page_height } },
    { "grid", { params.grid_cols, params.grid_rows } },
    { "dataset", params.dataset },
    { "perturbation",
      { { "box_jitter", p.box_jitter },
        { "structure_corruption_rate", p.structure_corruption_rate },
        { "drop_rate", p.drop_rate },
        { "spurious_rate", p.spurious_rate },
        { "role_swap_rate", p.role_swap_rate } } },
  };
}

Fixture generate_fixture(std::uint64_t seed, const FixtureParams &params) {
  validate(params);
  Rng rng(seed);
  const Perturbation &pert = params.perturbation;

  Fixture fx;
  fx.gt.dataset = params.dataset;
  fx.pred.dataset = params.dataset;

  CombinedCounts total;
  ordered_json page_counts = ordered_json::array();
  long pairs = 0, matches = 0;
  double tanimoto_sum = 0;

  const int width = std::max(
      4, static_cast<int>(std::to_string(params.pages).size()));
  for (int pi = 0; pi < params.pages; ++pi) {
    std::string number = std::to_string(pi + 1);
    const std::string id_buf = "page-"
                               + std::string(width - number.size(), '0')
                               + number;

    PageAnnotation gt_page;
    gt_page.page_id = id_buf;
    gt_page.width = params.page_width;
    gt_page.height = params.page_height;
    PagePrediction pred_page;
    pred_page.page_id = id_buf;

    PageBuilder layout(params, rng);
    const int n_mol = uniform_int(rng, params.min_molecules,
                                  params.max_molecules);
    std::vector<PredSlot> slots(n_mol);
    CombinedCounts counts;

    for (int m = 0; m < n_mol; ++m) {
      GtMolecule gm;
      gm.id = "m" + std::to_string(m + 1);
      gm.bbox = layout.take_box();
      MolfileWriteOptions options;
      options.name = gm.id;
      gm.molfile = write_molfile(random_molecule(rng), options);
      // Same structure the loader rebuilds from the MOLfile text.
      gm.structure = normalize(parse_molfile(gm.molfile).molecule);
      gm.key = canonical_key(gm.structure).value;

      const bool dropped = bernoulli(rng, pert.drop_rate);
      const bool corrupted = bernoulli(rng, pert.structure_corruption_rate);
      const bool invalid = corrupted && bernoulli(rng, 0.25);
      const StructureFormat format = bernoulli(rng, 0.5)
                                         ? StructureFormat::kSmiles
                                         : StructureFormat::kMolfile;
      const Molecule pred_mol = corrupted ? mutate_molecule(gm.structure, rng)
                                          : gm.structure;
      const BBox pred_box = layout.jitter(gm.bbox);
      const double score = std::round(uniform_real(rng, 0.5, 1.0) * 1e4) / 1e4;

      ++pairs;
      if (!dropped) {
        PredMolecule pm;
        pm.id = gm.id;
        pm.box = { pred_box, score };
        pm.format = format;
        pm.structure = structure_text(pred_mol, format);
        if (invalid)
          pm.structure = invalidate(pm.structure, format);
        pred_page.molecules.push_back(std::move(pm));
        slots[m] = { true, pred_box };

        if (!corrupted && iou(gm.bbox, pred_box) >= 0.5)
          ++counts.tp;
        else
          ++counts.fp;
        if (!corrupted)
          ++matches;
        if (!invalid)
          tanimoto_sum += tanimoto(fingerprint(gm.structure),
                                   fingerprint(pred_mol));
      }
      gt_page.molecules.push_back(std::move(gm));
    }
    counts.fn = n_mol - counts.tp;

    // Reactions draw on the page's molecules.
    const int n_rxn = n_mol >= 3 ? uniform_int(rng, params.min_reactions,
                                               params.max_reactions)
                                 : 0;
    for (int r = 0; r < n_rxn; ++r) {
      const int n_left = uniform_int(rng, 2, std::min(3, n_mol - 1));
      const int n_prod = uniform_int(rng, 1, std::min(2, n_mol - n_left));
      const std::vector<int> picked = sample_distinct(rng, n_mol,
                                                      n_left + n_prod);
      const bool condition_molecule = n_left >= 2 && bernoulli(rng, 0.5);

      AnnotatedReaction gt_rxn, pred_rxn;
      pred_rxn.score = std::round(uniform_real(rng, 0.5, 1.0) * 1e4) / 1e4;
      for (int k = 0; k < n_left + n_prod; ++k) {
        const int m = picked[k];
        RxnRole role = RxnRole::kReactant;
        if (k >= n_left)
          role = RxnRole::kProduct;
        else if (condition_molecule && k == n_left - 1)
          role = RxnRole::kCondition;

        AnnotatedEntity ge;
        ge.entity = { role, EntityKind::kMolecule, gt_page.molecules[m].bbox };
        ge.ref = gt_page.molecules[m].id;
        gt_rxn.entities.push_back(ge);

        AnnotatedEntity pe;
        pe.entity.role = role;
        pe.entity.kind = EntityKind::kMolecule;
        if (slots[m].present) {
          pe.entity.bbox = slots[m].box;
          pe.ref = gt_page.molecules[m].id;
        } else {
          pe.entity.bbox = layout.jitter(gt_page.molecules[m].bbox);
        }
        pred_rxn.entities.push_back(pe);
      }

      if (layout.has_free() && bernoulli(rng, 0.5)) {
        const BBox text = layout.take_box();
        gt_rxn.entities.push_back(
            { { RxnRole::kCondition, EntityKind::kText, text }, "" });
        pred_rxn.entities.push_back(
            { { RxnRole::kCondition, EntityKind::kText, layout.jitter(text) },
              "" });
      }

      if (bernoulli(rng, pert.role_swap_rate)) {
        // Left-pool entities are the first n_left in both lists.
        int reactant = -1, condition = -1;
        for (int k = 0; k < n_left; ++k) {
          const RxnRole role = pred_rxn.entities[k].entity.role;
          if (role == RxnRole::kReactant && reactant < 0)
            reactant = k;
          if (role == RxnRole::kCondition)
            condition = k;
        }
        if (condition >= 0) {
          pred_rxn.entities[reactant].entity.role = RxnRole::kCondition;
          pred_rxn.entities[condition].entity.role = RxnRole::kReactant;
        } else {
          pred_rxn.entities[reactant].entity.role = RxnRole::kCondition;
        }
      }

      // Same entity order the JSON role groups produce.
      for (AnnotatedReaction *rxn: { &gt_rxn, &pred_rxn }) {
        std::stable_sort(rxn->entities.begin(), rxn->entities.end(),
                         [](const AnnotatedEntity &a, const AnnotatedEntity &b) {
                           return a.entity.role < b.entity.role;
                         });
      }
      gt_page.reactions.push_back(std::move(gt_rxn));
      pred_page.reactions.push_back(std::move(pred_rxn));
    }

    // Spurious boxes land in cells no ground-truth box occupies.
    while (layout.has_free() && bernoulli(rng, pert.spurious_rate)) {
      PredMolecule pm;
      const Molecule mol = random_molecule(rng);
      pm.box = { layout.take_box(),
                 std::round(uniform_real(rng, 0.05, 0.5) * 1e4) / 1e4 };
      pm.format = StructureFormat::kSmiles;
      pm.structure = write_smiles(mol);
      pred_page.molecules.push_back(std::move(pm));
      ++counts.fp;
    }

    total += counts;
    page_counts.push_back({ { "page_id", gt_page.page_id },
                            { "tp", counts.tp },
                            { "fp", counts.fp },
                            { "fn", counts.fn } });
    fx.gt.pages.push_back(std::move(gt_page));
    fx.pred.pages.push_back(std::move(pred_page));
  }

  ordered_json conversion { { "pairs", pairs },
                            { "matches", matches },
                            { "tanimoto_sum", tanimoto_sum } };
  if (pairs > 0) {
    conversion["smiles_match_rate"] = static_cast<double>(matches) / pairs;
    conversion["mean_tanimoto"] = tanimoto_sum / pairs;
  } else {
    conversion["smiles_match_rate"] = nullptr;
    conversion["mean_tanimoto"] = nullptr;
  }

  fx.expected = {
    { "seed", seed },
    { "params", to_json(params) },
    { "combined",
      { { "tau", 0.5 },
        { "total",
          { { "tp", total.tp }, { "fp", total.fp }, { "fn", total.fn } } },
        { "pages", std::move(page_counts) } } },
    { "conversion", std::move(conversion) },
  };
  return fx;
}

}  // namespace chemeval
