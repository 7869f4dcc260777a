//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMEVAL_FIXTURE_H_
#define CHEMEVAL_FIXTURE_H_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "chemeval/corpus.h"
#include "chemeval/molecule.h"

namespace chemeval {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi].
int uniform_int(Rng &rng, int lo, int hi);
/// Uniform real in [0, 1) from the top 53 bits of one draw.
double uniform_unit(Rng &rng);
double uniform_real(Rng &rng, double lo, double hi);
bool bernoulli(Rng &rng, double p);

struct MoleculeGenOptions {
  int min_atoms = 3;
  int max_atoms = 20;
  // Probability of growing from a Kekule aromatic ring.
  double ring_template_rate = 0.35;
  int max_ring_closures = 2;
};

/// Random connected, normalized molecule. Atoms carry 2D coordinates.
/// Elements C, N, O, S, F, Cl with a per-element valence budget, so every
/// result passes normalize().
Molecule random_molecule(Rng &rng, const MoleculeGenOptions &options = {});

/// Single-edit variant of a normalized molecule (element swap, added methyl
/// or isotope label) whose canonical key differs from the input.
Molecule mutate_molecule(const Molecule &mol, Rng &rng);

struct Perturbation {
  // Each box edge moves by up to this fraction of the box size.
  double box_jitter = 0;
  double structure_corruption_rate = 0;
  double drop_rate = 0;
  double spurious_rate = 0;
  // Reactions whose reactant/condition roles are swapped in the predictions.
  double role_swap_rate = 0;
};

struct FixtureParams {
  int pages = 10;
  int min_molecules = 3;
  int max_molecules = 10;
  int min_reactions = 0;
  int max_reactions = 2;
  Perturbation perturbation;
  double page_width = 1000;
  double page_height = 1400;
  int grid_cols = 4;
  int grid_rows = 5;
  std::string dataset = "synthetic";
};

class FixtureError: public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Throws FixtureError on inconsistent ranges, rates outside [0, 1], jitter
/// outside [0, 0.25] or a molecule range that does not fit the grid.
void validate(const FixtureParams &params);

struct Fixture {
  GroundTruth gt;
  Predictions pred;
  // Counts tracked during generation: combined tp/fp/fn at tau 0.5 per page
  // and in total, plus conversion expectations for id-aligned predictions.
  nlohmann::ordered_json expected;
};

/// Seeded synthetic corpus. Molecules sit in distinct cells of a grid laid
/// over each page; predictions are derived from the ground truth by jitter,
/// structure corruption, drops, spurious boxes in free cells and role swaps.
/// Bit-deterministic per (seed, params).
Fixture generate_fixture(std::uint64_t seed, const FixtureParams &params);

nlohmann::ordered_json to_json(const FixtureParams &params);

}  // namespace chemeval

#endif  // CHEMEVAL_FIXTURE_H_
