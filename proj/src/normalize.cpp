//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemeval/normalize.h"

#include <algorithm>
#include <cstdlib>
#include <utility>
#include <vector>

namespace chemeval {
namespace {
constexpr int kB = 5, kC = 6, kN = 7, kO = 8, kF = 9, kP = 15, kS = 16,
              kCl = 17, kBr = 35, kI = 53;

ValenceList make_list(std::initializer_list<int> base, int shift) {
  ValenceList list;
  for (int v: base) {
    if (v + shift >= 0)
      list.values[list.size++] = v + shift;
  }
  if (list.size == 0)
    list.values[list.size++] = 0;
  return list;
}

struct Ring {
  std::vector<int> atoms;
  std::vector<int> bonds;
};

// Simple cycles of 5 to 7 atoms. Each cycle is reported once, starting from
// its smallest atom index.
std::vector<Ring> small_rings(const Molecule &mol) {
  constexpr int kMaxRing = 7;
  std::vector<Ring> rings;
  std::vector<int> path, path_bonds;
  std::vector<char> on_path(mol.num_atoms(), 0);

  auto dfs = [&](auto &&self, int start, int u) -> void {
    for (int bi: mol.incident(u)) {
      const int v = mol.bond(bi).other(u);
      if (v == start && path.size() >= 5 && path[1] < path.back()) {
        Ring ring { path, path_bonds };
        ring.bonds.push_back(bi);
        rings.push_back(std::move(ring));
        continue;
      }
      if (v <= start || on_path[v] || path.size() >= kMaxRing)
        continue;

      on_path[v] = 1;
      path.push_back(v);
      path_bonds.push_back(bi);
      self(self, start, v);
      path.pop_back();
      path_bonds.pop_back();
      on_path[v] = 0;
    }
  };

  for (int start = 0; start < mol.num_atoms(); ++start) {
    if (mol.degree(start) < 2)
      continue;
    on_path[start] = 1;
    path.assign(1, start);
    path_bonds.clear();
    dfs(dfs, start, start);
    on_path[start] = 0;
  }
  return rings;
}

bool lone_pair_donor(int element, int charge, int connections) {
  if ((element == kN || element == kP) && charge == 0 && connections == 3)
    return true;
  if ((element == kO || element == kS) && charge == 0 && connections == 2)
    return true;
  return element == kN && charge == -1 && connections == 2;
}

// Pi-electron contribution of ring atom `atom`, or -1 when the atom cannot
// take part in an aromatic ring.
int pi_contribution(const Molecule &mol, const std::vector<Atom> &atoms,
                    const std::vector<BondOrder> &orders,
                    const std::vector<char> &in_ring_bond, int atom) {
  const Atom &a = atoms[atom];
  const int connections = mol.degree(atom) + a.explicit_h.value_or(0);

  int ring_doubles = 0, exo_doubles = 0, exo_partner = -1;
  bool has_aromatic = false;
  for (int bi: mol.incident(atom)) {
    switch (orders[bi]) {
    case BondOrder::kTriple:
      return -1;
    case BondOrder::kDouble:
      if (in_ring_bond[bi]) {
        ++ring_doubles;
      } else {
        ++exo_doubles;
        exo_partner = mol.bond(bi).other(atom);
      }
      break;
    case BondOrder::kAromatic:
      has_aromatic = true;
      break;
    case BondOrder::kSingle:
      break;
    }
  }

  if (ring_doubles + exo_doubles > 1)
    return -1;
  if (ring_doubles == 1)
    return 1;
  if (exo_doubles == 1) {
    if (atoms[exo_partner].aromatic)
      return 1;
    const int partner = atoms[exo_partner].element;
    if (a.element == kC && (partner == kO || partner == kN || partner == kS))
      return 0;
    return -1;
  }
  if (has_aromatic)
    return lone_pair_donor(a.element, a.charge, connections) ? 2 : 1;

  if (lone_pair_donor(a.element, a.charge, connections))
    return 2;
  if (a.element == kC && a.charge == -1)
    return 2;
  if (a.element == kC && a.charge == 1)
    return 0;
  if (a.element == kB && a.charge == 0)
    return 0;
  return -1;
}

void perceive_aromaticity(const Molecule &mol, std::vector<Atom> &atoms,
                          std::vector<BondOrder> &orders) {
  const std::vector<Ring> rings = small_rings(mol);
  std::vector<char> done(rings.size(), 0);
  std::vector<char> in_ring_bond(mol.num_bonds(), 0);

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t r = 0; r < rings.size(); ++r) {
      if (done[r])
        continue;

      const Ring &ring = rings[r];
      if (std::all_of(ring.bonds.begin(), ring.bonds.end(), [&](int bi) {
            return orders[bi] == BondOrder::kAromatic;
          })) {
        done[r] = 1;
        continue;
      }

      for (int bi: ring.bonds)
        in_ring_bond[bi] = 1;

      int pi = 0;
      for (int atom: ring.atoms) {
        int c = pi_contribution(mol, atoms, orders, in_ring_bond, atom);
        if (c < 0) {
          pi = -1;
          break;
        }
        pi += c;
      }

      for (int bi: ring.bonds)
        in_ring_bond[bi] = 0;

      if (pi < 0 || pi % 4 != 2)
        continue;

      for (int atom: ring.atoms)
        atoms[atom].aromatic = true;
      for (int bi: ring.bonds)
        orders[bi] = BondOrder::kAromatic;
      done[r] = 1;
      changed = true;
    }
  }
}
}  // namespace

ValenceList allowed_valences(int element, int charge) {
  switch (element) {
  case kB:
    return make_list({ 3 }, -charge);
  case kC:
    return make_list({ 4 }, -std::abs(charge));
  case kN:
    return make_list({ 3 }, charge);
  case kO:
    return make_list({ 2 }, charge);
  case kP:
    return make_list({ 3, 5 }, charge);
  case kS:
    return make_list({ 2, 4, 6 }, charge);
  case kF:
  case kCl:
  case kBr:
  case kI:
    return make_list({ 1 }, charge);
  default:
    return {};
  }
}

int bond_valence(const Molecule &mol, int atom) {
  int sum = 0;
  for (int bi: mol.incident(atom)) {
    const BondOrder order = mol.bond(bi).order;
    sum += order == BondOrder::kAromatic ? 1 : bond_code(order);
  }
  return sum;
}

int default_hydrogens(const Molecule &mol, int atom) {
  const Atom &a = mol.atom(atom);
  const ValenceList valences = allowed_valences(a.element, a.charge);
  if (valences.empty())
    return 0;

  const int used = bond_valence(mol, atom);
  // An aromatic atom donates one valence unit to the pi system when its
  // lowest valence leaves room for it.
  if (a.aromatic && used + 1 <= valences.front())
    return valences.front() - used - 1;

  for (int v: valences) {
    if (v >= used)
      return v - used;
  }
  return -1;
}

Molecule normalize(const Molecule &mol) {
  std::vector<Atom> atoms = mol.atoms();
  std::vector<BondOrder> orders(mol.num_bonds());
  for (int i = 0; i < mol.num_bonds(); ++i) {
    const Bond &bond = mol.bond(i);
    orders[i] = bond.order;
    if (bond.order == BondOrder::kAromatic) {
      atoms[bond.a].aromatic = true;
      atoms[bond.b].aromatic = true;
    }
  }

  std::vector<Bond> bonds = mol.bonds();
  Molecule flagged(atoms, bonds);
  for (int i = 0; i < flagged.num_atoms(); ++i) {
    Atom &atom = atoms[i];
    const std::string where = "atom " + std::to_string(i + 1) + " ("
                              + std::string(element_symbol(atom.element))
                              + ")";
    const int used = bond_valence(flagged, i);
    const ValenceList valences = allowed_valences(atom.element, atom.charge);

    if (!atom.explicit_h) {
      const int h = default_hydrogens(flagged, i);
      if (h < 0) {
        throw NormalizationError(
            i, where + ": bond valence " + std::to_string(used)
                   + " exceeds maximum " + std::to_string(valences.back()));
      }
      atom.explicit_h = h;
    } else if (*atom.explicit_h < 0) {
      throw NormalizationError(i, where + ": negative hydrogen count");
    } else if (!valences.empty() && used + *atom.explicit_h > valences.back()) {
      throw NormalizationError(
          i, where + ": valence "
                 + std::to_string(used + *atom.explicit_h)
                 + " exceeds maximum " + std::to_string(valences.back()));
    }
  }

  perceive_aromaticity(flagged, atoms, orders);
  for (int i = 0; i < static_cast<int>(bonds.size()); ++i)
    bonds[i].order = orders[i];
  return { std::move(atoms), std::move(bonds) };
}

}  // namespace chemeval
