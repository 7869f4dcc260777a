//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMEVAL_NORMALIZE_H_
#define CHEMEVAL_NORMALIZE_H_

#include <array>
#include <stdexcept>
#include <string>

#include "chemeval/molecule.h"

namespace chemeval {

class NormalizationError: public std::runtime_error {
public:
  NormalizationError(int atom, const std::string &what)
      : std::runtime_error(what), atom_(atom) { }

  /// Zero-based index of the offending atom.
  int atom() const { return atom_; }

private:
  int atom_;
};

/// Small fixed-capacity list of valences, ascending.
struct ValenceList {
  std::array<int, 3> values {};
  int size = 0;

  bool empty() const { return size == 0; }
  const int *begin() const { return values.data(); }
  const int *end() const { return values.data() + size; }
  int front() const { return values[0]; }
  int back() const { return values[size - 1]; }
};

/// Allowed valences for an element at a formal charge. Empty when the
/// element is not covered by the valence table (no hydrogens are added to
/// such atoms and no valence check is made).
///
/// Table: B 3, C 4, N 3, O 2, P 3/5, S 2/4/6, F/Cl/Br/I 1. Charges shift the
/// table: N, O, P, S and halogens gain one valence unit per positive charge
/// and lose one per negative charge; B does the opposite; C loses one per
/// unit of charge of either sign.
ValenceList allowed_valences(int element, int charge);

/// Sum of bond orders around an atom, counting aromatic bonds as 1.
int bond_valence(const Molecule &mol, int atom);

/// Hydrogen count a SMILES reader or MOLfile reader would infer for the atom
/// from its element, charge, aromatic flag and bonds. Returns -1 when no
/// valence in the table can accommodate the bonds.
int default_hydrogens(const Molecule &mol, int atom);

/// Completes implicit hydrogens and perceives aromatic rings.
///
/// Aromaticity rule: a simple ring of 5 to 7 atoms is aromatic when every
/// ring atom contributes to the pi system according to the table below and
/// the total contribution is 2 mod 4. Perception is repeated until no new
/// ring qualifies, so fused systems are picked up ring by ring.
///
///   atom has an aromatic bond                    1 (2 for a lone-pair N/P,
///                                                   O, S flagged aromatic)
///   double bond inside the ring                  1
///   exocyclic double bond, C to O/N/S            0
///   N or P, three connections incl. H, neutral   2
///   O or S, two connections, neutral             2
///   C with negative charge, all single bonds     2
///   C with positive charge, all single bonds     0
///   B, neutral, all single bonds                 0
///   anything else                                ring rejected
///
/// Throws NormalizationError naming the atom on a valence violation.
Molecule normalize(const Molecule &mol);

}  // namespace chemeval

#endif  // CHEMEVAL_NORMALIZE_H_
