//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMEVAL_CANONICAL_H_
#define CHEMEVAL_CANONICAL_H_

#include <stdexcept>
#include <string>
#include <vector>

#include "chemeval/molecule.h"

namespace chemeval {

/// Canonical SMILES of a normalized molecule. Two keys compare equal iff the
/// molecules are constitutionally identical (element, charge, isotope,
/// hydrogen count, aromatic flag, bond order). Stereo marks, chirality and
/// coordinates never contribute.
struct CanonicalKey {
  std::string value;

  friend auto operator<=>(const CanonicalKey &, const CanonicalKey &) = default;
};

/// Canonical rank of every atom: rank[i] is the position of atom i in the
/// canonical order. Ranks are a permutation of 0..n-1 and are relabeling
/// invariant up to automorphisms of the molecule.
///
/// Atoms are first partitioned by (element, charge, isotope, degree, total H,
/// aromatic flag); the partition is refined by iterated neighbor-multiset
/// hashing until stable. Remaining ties are broken by individualizing an atom
/// of the first tied cell and refining again. All atoms of the cell are tried
/// (minus those already known to be symmetric) and the labeling with the
/// smallest graph certificate wins.
std::vector<int> canonical_ranking(const Molecule &mol);

/// Canonical SMILES, produced by a depth-first walk from the lowest-ranked
/// atom with branches and ring closures visited in rank order.
/// Dot-disconnected fragments are canonicalized independently and joined in
/// lexicographic order. Requires a normalized molecule.
CanonicalKey canonical_key(const Molecule &mol);

class OracleCapacityError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

constexpr int kIsomorphismAtomLimit = 64;

/// Exact isomorphism test by backtracking with invariant pruning. Atoms must
/// agree on element, charge, isotope, total H and aromatic flag; bonds on
/// order. Throws OracleCapacityError above kIsomorphismAtomLimit atoms.
bool isomorphic(const Molecule &a, const Molecule &b);

}  // namespace chemeval

#endif  // CHEMEVAL_CANONICAL_H_
