//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMEVAL_MOLECULE_H_
#define CHEMEVAL_MOLECULE_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chemeval {

/// Atomic number for a periodic-table symbol, 0 for the wildcard "*", or -1
/// when the symbol is not recognized. Symbols are case-sensitive ("Cl", not
/// "CL").
int atomic_number(std::string_view symbol);

/// Inverse of atomic_number(). Returns "*" for 0.
std::string_view element_symbol(int atomic_number);

struct Point3 {
  double x = 0;
  double y = 0;
  double z = 0;

  friend bool operator==(const Point3 &, const Point3 &) = default;
};

struct Atom {
  int element = 6;  // atomic number; 0 is the wildcard
  int charge = 0;
  std::optional<int> isotope;
  std::optional<int> explicit_h;
  bool aromatic = false;
  std::optional<Point3> coords;
  // Inert SMILES chirality token ("@", "@@", "@TH1", ...). Never compared.
  std::string chirality;

  friend bool operator==(const Atom &, const Atom &) = default;
};

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

enum class BondStereo : std::uint8_t {
  kNone,
  kWedge,
  kHash,
  kWavy,
  // SMILES directional single bonds.
  kUp,
  kDown,
};

struct Bond {
  int a = 0;
  int b = 0;
  BondOrder order = BondOrder::kSingle;
  BondStereo stereo = BondStereo::kNone;

  int other(int atom) const { return atom == a ? b : a; }

  friend bool operator==(const Bond &, const Bond &) = default;
};

class MoleculeError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Attributed molecular graph. Atoms and bonds are stored in insertion order;
/// adjacency is rebuilt on every mutation, so a Molecule is cheap to copy and
/// safe to share once built.
class Molecule {
public:
  Molecule() = default;

  /// Validates and builds. Throws MoleculeError on an empty atom list, a bad
  /// bond index, a self-loop, or a duplicate bond.
  Molecule(std::vector<Atom> atoms, std::vector<Bond> bonds);

  int num_atoms() const { return static_cast<int>(atoms_.size()); }
  int num_bonds() const { return static_cast<int>(bonds_.size()); }

  const std::vector<Atom> &atoms() const { return atoms_; }
  const std::vector<Bond> &bonds() const { return bonds_; }
  const Atom &atom(int i) const { return atoms_[i]; }
  const Bond &bond(int i) const { return bonds_[i]; }

  /// Bond indices incident to atom i.
  const std::vector<int> &incident(int i) const { return adjacency_[i]; }
  int degree(int i) const { return static_cast<int>(adjacency_[i].size()); }

  /// Index of the bond joining a and b, or -1.
  int find_bond(int a, int b) const;

  /// Explicit hydrogen count, 0 when not completed yet.
  int total_h(int i) const { return atoms_[i].explicit_h.value_or(0); }

  /// Atom-wise connected components, each sorted by atom index. Components
  /// are ordered by their smallest atom index.
  std::vector<std::vector<int>> components() const;

  /// Induced subgraph on the given atoms (in the given order).
  Molecule subgraph(const std::vector<int> &atoms) const;

  /// Returns a copy where old atom i becomes new atom perm[i].
  Molecule permuted(const std::vector<int> &perm) const;

  /// Structural equality: same atoms and bonds in the same order.
  friend bool operator==(const Molecule &, const Molecule &) = default;

private:
  void build_adjacency();

  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<int>> adjacency_;
};

/// Integer code for a bond order used by invariants and hashing.
constexpr int bond_code(BondOrder order) {
  return static_cast<int>(order);
}

}  // namespace chemeval

#endif  // CHEMEVAL_MOLECULE_H_
