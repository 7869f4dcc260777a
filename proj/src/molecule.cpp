//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemeval/molecule.h"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <utility>

namespace chemeval {
namespace {
constexpr std::array<std::string_view, 119> kSymbols = {
  "*",  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
  "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",
  "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br",
  "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag",
  "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
  "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu",
  "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi",
  "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am",
  "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh",
  "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og",
};
}  // namespace

int atomic_number(std::string_view symbol) {
  auto it = std::find(kSymbols.begin(), kSymbols.end(), symbol);
  if (it == kSymbols.end())
    return -1;
  return static_cast<int>(it - kSymbols.begin());
}

std::string_view element_symbol(int atomic_number) {
  if (atomic_number < 0 || atomic_number >= static_cast<int>(kSymbols.size()))
    return "?";
  return kSymbols[atomic_number];
}

Molecule::Molecule(std::vector<Atom> atoms, std::vector<Bond> bonds)
    : atoms_(std::move(atoms)), bonds_(std::move(bonds)) {
  if (atoms_.empty())
    throw MoleculeError("molecule has no atoms");

  const int n = num_atoms();
  std::set<std::pair<int, int>> seen;
  for (int i = 0; i < num_bonds(); ++i) {
    const Bond &bond = bonds_[i];
    if (bond.a < 0 || bond.a >= n || bond.b < 0 || bond.b >= n) {
      throw MoleculeError("bond " + std::to_string(i + 1)
                          + " references a missing atom");
    }
    if (bond.a == bond.b) {
      throw MoleculeError("bond " + std::to_string(i + 1)
                          + " joins atom to itself");
    }
    if (!seen.emplace(std::minmax(bond.a, bond.b)).second) {
      throw MoleculeError("duplicate bond between atoms "
                          + std::to_string(bond.a + 1) + " and "
                          + std::to_string(bond.b + 1));
    }
  }
  build_adjacency();
}

void Molecule::build_adjacency() {
  adjacency_.assign(atoms_.size(), {});
  for (int i = 0; i < num_bonds(); ++i) {
    adjacency_[bonds_[i].a].push_back(i);
    adjacency_[bonds_[i].b].push_back(i);
  }
}

int Molecule::find_bond(int a, int b) const {
  for (int bi: adjacency_[a]) {
    if (bonds_[bi].other(a) == b)
      return bi;
  }
  return -1;
}

std::vector<std::vector<int>> Molecule::components() const {
  std::vector<int> label(atoms_.size(), -1);
  std::vector<std::vector<int>> result;
  std::vector<int> stack;
  for (int root = 0; root < num_atoms(); ++root) {
    if (label[root] >= 0)
      continue;

    const int id = static_cast<int>(result.size());
    auto &members = result.emplace_back();
    label[root] = id;
    stack.push_back(root);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      members.push_back(u);
      for (int bi: adjacency_[u]) {
        int v = bonds_[bi].other(u);
        if (label[v] < 0) {
          label[v] = id;
          stack.push_back(v);
        }
      }
    }
    std::sort(members.begin(), members.end());
  }
  return result;
}

Molecule Molecule::subgraph(const std::vector<int> &atoms) const {
  std::vector<int> index(atoms_.size(), -1);
  std::vector<Atom> sub_atoms;
  sub_atoms.reserve(atoms.size());
  for (int i = 0; i < static_cast<int>(atoms.size()); ++i) {
    index[atoms[i]] = i;
    sub_atoms.push_back(atoms_[atoms[i]]);
  }

  std::vector<Bond> sub_bonds;
  for (const Bond &bond: bonds_) {
    if (index[bond.a] >= 0 && index[bond.b] >= 0) {
      Bond copy = bond;
      copy.a = index[bond.a];
      copy.b = index[bond.b];
      sub_bonds.push_back(copy);
    }
  }
  return { std::move(sub_atoms), std::move(sub_bonds) };
}

Molecule Molecule::permuted(const std::vector<int> &perm) const {
  std::vector<Atom> new_atoms(atoms_.size());
  for (int i = 0; i < num_atoms(); ++i)
    new_atoms[perm[i]] = atoms_[i];

  std::vector<Bond> new_bonds = bonds_;
  for (Bond &bond: new_bonds) {
    bond.a = perm[bond.a];
    bond.b = perm[bond.b];
  }
  return { std::move(new_atoms), std::move(new_bonds) };
}

}  // namespace chemeval
