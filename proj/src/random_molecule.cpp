//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "chemeval/canonical.h"
#include "chemeval/fixture.h"
#include "chemeval/normalize.h"

namespace chemeval {
namespace {
struct ElementSpec {
  int element;
  int budget;
  double cumulative;
};

constexpr std::array<ElementSpec, 6> kElements = { {
  { 6, 4, 0.60 },
  { 7, 3, 0.75 },
  { 8, 2, 0.90 },
  { 16, 2, 0.94 },
  { 9, 1, 0.97 },
  { 17, 1, 1.00 },
} };

constexpr double kBondLength = 1.5;

double round4(double v) {
  return std::round(v * 1e4) / 1e4;
}

struct Builder {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  std::vector<int> budget;

  int add(int element, int budget_left, double x, double y) {
    Atom atom;
    atom.element = element;
    atom.coords = Point3 { round4(x), round4(y), 0 };
    atoms.push_back(atom);
    budget.push_back(budget_left);
    return static_cast<int>(atoms.size()) - 1;
  }

  void bond(int a, int b, int order) {
    bonds.push_back({ a, b, static_cast<BondOrder>(order), BondStereo::kNone });
    budget[a] -= order;
    budget[b] -= order;
  }

  bool bonded(int a, int b) const {
    for (const Bond &bd: bonds) {
      if ((bd.a == a && bd.b == b) || (bd.a == b && bd.b == a))
        return true;
    }
    return false;
  }
};

// Kekule five- and six-membered rings. Atom 0 carries the heteroatom.
void add_ring_template(Builder &b, Rng &rng) {
  static constexpr int kHetero[] = { 6, 7, 7, 16, 8 };
  const int choice = uniform_int(rng, 0, 4);
  const int size = choice <= 1 ? 6 : 5;
  const int hetero = kHetero[choice];

  const double radius = kBondLength / (2 * std::sin(std::numbers::pi / size));
  for (int i = 0; i < size; ++i) {
    const double angle = 2 * std::numbers::pi * i / size;
    const int element = i == 0 ? hetero : 6;
    const int budget = element == 6 ? 4 : element == 7 ? 3 : 2;
    b.add(element, budget, radius * std::cos(angle), radius * std::sin(angle));
  }
  if (size == 6) {
    for (int i = 0; i < 6; ++i)
      b.bond(i, (i + 1) % 6, i % 2 == 0 ? 2 : 1);
  } else {
    b.bond(0, 1, 1);
    b.bond(1, 2, 2);
    b.bond(2, 3, 1);
    b.bond(3, 4, 2);
    b.bond(4, 0, 1);
  }
}

const ElementSpec &pick_element(Rng &rng) {
  const double r = uniform_unit(rng);
  for (const ElementSpec &spec: kElements) {
    if (r < spec.cumulative)
      return spec;
  }
  return kElements.back();
}

Molecule try_random_molecule(Rng &rng, const MoleculeGenOptions &options) {
  const int n = uniform_int(rng, options.min_atoms, options.max_atoms);
  Builder b;
  if (n >= 6 && bernoulli(rng, options.ring_template_rate))
    add_ring_template(b, rng);

  while (static_cast<int>(b.atoms.size()) < n) {
    std::vector<int> open;
    for (int i = 0; i < static_cast<int>(b.atoms.size()); ++i) {
      if (b.budget[i] >= 1)
        open.push_back(i);
    }
    if (b.atoms.empty()) {
      const ElementSpec &spec = pick_element(rng);
      b.add(spec.element, spec.budget, 0, 0);
      continue;
    }
    if (open.empty())
      break;

    const int parent = open[uniform_int(rng, 0,
                                        static_cast<int>(open.size()) - 1)];
    const ElementSpec &spec = pick_element(rng);
    int budget = spec.budget;
    int charge = 0;
    if (spec.element == 7 && bernoulli(rng, 0.05)) {
      charge = 1;
      budget = 4;
    }

    const double angle = 2 * std::numbers::pi * uniform_unit(rng);
    const Point3 &at = *b.atoms[parent].coords;
    const int child = b.add(spec.element, budget,
                            at.x + kBondLength * std::cos(angle),
                            at.y + kBondLength * std::sin(angle));
    b.atoms[child].charge = charge;
    if (spec.element == 6 && bernoulli(rng, 0.03))
      b.atoms[child].isotope = 13;

    const int room = std::min(b.budget[parent], b.budget[child]);
    int order = 1;
    const double r = uniform_unit(rng);
    if (room >= 3 && r < 0.04) {
      order = 3;
    } else if (room >= 2 && r < 0.16) {
      order = 2;
    }
    b.bond(parent, child, order);
  }

  const int closures = uniform_int(rng, 0, options.max_ring_closures);
  const int count = static_cast<int>(b.atoms.size());
  for (int c = 0; c < closures && count >= 3; ++c) {
    for (int attempt = 0; attempt < 10; ++attempt) {
      const int i = uniform_int(rng, 0, count - 1);
      const int j = uniform_int(rng, 0, count - 1);
      if (i == j || b.budget[i] < 1 || b.budget[j] < 1 || b.bonded(i, j))
        continue;
      b.bond(i, j, 1);
      break;
    }
  }

  return normalize(Molecule(std::move(b.atoms), std::move(b.bonds)));
}

int label_isotope(int element) {
  switch (element) {
  case 6:
    return 13;
  case 7:
    return 15;
  case 8:
    return 17;
  case 16:
    return 33;
  case 9:
    return 18;
  case 17:
    return 37;
  default:
    return 2 * element + 1;
  }
}

Molecule toggle_isotope(const Molecule &mol, int atom) {
  std::vector<Atom> atoms = mol.atoms();
  if (atoms[atom].isotope) {
    atoms[atom].isotope.reset();
  } else {
    atoms[atom].isotope = label_isotope(atoms[atom].element);
  }
  return Molecule(std::move(atoms), mol.bonds());
}

std::optional<Molecule> swap_element(const Molecule &mol, Rng &rng) {
  std::vector<int> sites;
  for (int i = 0; i < mol.num_atoms(); ++i) {
    const Atom &a = mol.atom(i);
    if (a.aromatic || a.charge != 0)
      continue;
    const int bv = bond_valence(mol, i);
    if ((a.element == 6 && bv <= 3) || a.element == 7 || a.element == 8)
      sites.push_back(i);
  }
  if (sites.empty())
    return std::nullopt;

  const int site = sites[uniform_int(rng, 0, static_cast<int>(sites.size()) - 1)];
  std::vector<Atom> atoms = mol.atoms();
  Atom &a = atoms[site];
  a.element = a.element == 6 ? 7 : a.element == 7 ? 6 : 16;
  a.explicit_h.reset();
  try {
    return normalize(Molecule(std::move(atoms), mol.bonds()));
  } catch (const NormalizationError &) {
    return std::nullopt;
  }
}

std::optional<Molecule> add_methyl(const Molecule &mol, Rng &rng) {
  std::vector<int> sites;
  for (int i = 0; i < mol.num_atoms(); ++i) {
    if (mol.total_h(i) > 0)
      sites.push_back(i);
  }
  if (sites.empty())
    return std::nullopt;

  const int site = sites[uniform_int(rng, 0, static_cast<int>(sites.size()) - 1)];
  std::vector<Atom> atoms = mol.atoms();
  std::vector<Bond> bonds = mol.bonds();
  atoms[site].explicit_h = mol.total_h(site) - 1;

  Atom methyl;
  methyl.element = 6;
  methyl.explicit_h = 3;
  const Point3 at = atoms[site].coords.value_or(Point3 {});
  const double angle = 2 * std::numbers::pi * uniform_unit(rng);
  methyl.coords = Point3 { round4(at.x + kBondLength * std::cos(angle)),
                           round4(at.y + kBondLength * std::sin(angle)), 0 };
  atoms.push_back(methyl);
  bonds.push_back({ site, static_cast<int>(atoms.size()) - 1,
                    BondOrder::kSingle, BondStereo::kNone });
  try {
    return normalize(Molecule(std::move(atoms), std::move(bonds)));
  } catch (const NormalizationError &) {
    return std::nullopt;
  }
}
}  // namespace

int uniform_int(Rng &rng, int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(rng() % span);
}

double uniform_unit(Rng &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_real(Rng &rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(rng);
}

bool bernoulli(Rng &rng, double p) {
  return uniform_unit(rng) < p;
}

Molecule random_molecule(Rng &rng, const MoleculeGenOptions &options) {
  for (;;) {
    try {
      return try_random_molecule(rng, options);
    } catch (const NormalizationError &) {
    }
  }
}

Molecule mutate_molecule(const Molecule &mol, Rng &rng) {
  const CanonicalKey before = canonical_key(mol);
  std::optional<Molecule> edited;
  switch (uniform_int(rng, 0, 2)) {
  case 0:
    edited = swap_element(mol, rng);
    break;
  case 1:
    edited = add_methyl(mol, rng);
    break;
  default:
    edited = toggle_isotope(
        mol, uniform_int(rng, 0, mol.num_atoms() - 1));
    break;
  }
  if (edited && canonical_key(*edited) != before)
    return *edited;
  return toggle_isotope(mol, 0);
}

}  // namespace chemeval
