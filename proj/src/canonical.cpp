//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemeval/canonical.h"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>

#include "chemeval/normalize.h"

namespace chemeval {
namespace {
// Ordered partition: rank[i] is the number of atoms strictly before atom i's
// cell, so the members of a cell share the cell's first position.
using Ranks = std::vector<int>;

int count_cells(const Ranks &ranks) {
  std::vector<char> used(ranks.size(), 0);
  int cells = 0;
  for (int r: ranks) {
    if (!used[r]) {
      used[r] = 1;
      ++cells;
    }
  }
  return cells;
}

Ranks initial_ranks(const Molecule &mol) {
  const int n = mol.num_atoms();
  using Invariant = std::array<int, 6>;
  std::vector<Invariant> inv(n);
  for (int i = 0; i < n; ++i) {
    const Atom &a = mol.atom(i);
    inv[i] = { a.element, a.charge, a.isotope.value_or(0), mol.degree(i),
               mol.total_h(i), a.aromatic ? 1 : 0 };
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return inv[x] < inv[y]; });

  Ranks ranks(n);
  for (int k = 0; k < n; ++k) {
    const int i = order[k];
    ranks[i] = (k > 0 && inv[order[k - 1]] == inv[i]) ? ranks[order[k - 1]]
                                                      : k;
  }
  return ranks;
}

// Splits cells by the sorted multiset of (neighbor rank, bond order) until
// the number of cells stops growing. Preserves the relative order of cells.
void refine(const Molecule &mol, Ranks &ranks) {
  const int n = mol.num_atoms();
  std::vector<std::vector<int>> sig(n);
  std::vector<int> order(n);
  int cells = count_cells(ranks);

  while (cells < n) {
    for (int i = 0; i < n; ++i) {
      auto &s = sig[i];
      s.clear();
      for (int bi: mol.incident(i)) {
        const Bond &bond = mol.bond(bi);
        s.push_back(ranks[bond.other(i)] * 8 + bond_code(bond.order));
      }
      std::sort(s.begin(), s.end());
    }

    std::iota(order.begin(), order.end(), 0);
    auto less = [&](int x, int y) {
      if (ranks[x] != ranks[y])
        return ranks[x] < ranks[y];
      return sig[x] < sig[y];
    };
    std::sort(order.begin(), order.end(), less);

    Ranks next(n);
    for (int k = 0; k < n; ++k) {
      const int i = order[k];
      next[i] = (k > 0 && !less(order[k - 1], i)) ? next[order[k - 1]] : k;
    }

    const int next_cells = count_cells(next);
    ranks = std::move(next);
    if (next_cells == cells)
      break;
    cells = next_cells;
  }
}

// Serialized labeled graph; equal certificates mean the two labelings map
// the molecule onto the same labeled graph.
std::vector<int> certificate(const Molecule &mol, const Ranks &ranks) {
  const int n = mol.num_atoms();
  std::vector<int> at(n);
  for (int i = 0; i < n; ++i)
    at[ranks[i]] = i;

  std::vector<int> cert;
  cert.reserve(n * 10);
  std::vector<int> nbrs;
  for (int p = 0; p < n; ++p) {
    const int i = at[p];
    const Atom &a = mol.atom(i);
    cert.insert(cert.end(), { a.element, a.charge, a.isotope.value_or(0),
                              mol.total_h(i), a.aromatic ? 1 : 0,
                              mol.degree(i) });
    nbrs.clear();
    for (int bi: mol.incident(i)) {
      const Bond &bond = mol.bond(bi);
      nbrs.push_back(ranks[bond.other(i)] * 8 + bond_code(bond.order));
    }
    std::sort(nbrs.begin(), nbrs.end());
    cert.insert(cert.end(), nbrs.begin(), nbrs.end());
  }
  return cert;
}

class UnionFind {
public:
  explicit UnionFind(int n): parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(int x, int y) { parent_[find(x)] = find(y); }

private:
  std::vector<int> parent_;
};

class CanonicalSearch {
public:
  explicit CanonicalSearch(const Molecule &mol): mol_(mol) { }

  Ranks run() {
    Ranks ranks = initial_ranks(mol_);
    std::vector<int> prefix;
    visit(std::move(ranks), prefix);
    return best_ranks_;
  }

private:
  void visit(Ranks ranks, std::vector<int> &prefix) {
    refine(mol_, ranks);

    const int n = mol_.num_atoms();
    std::vector<int> cell_size(n, 0);
    for (int r: ranks)
      ++cell_size[r];

    int target = -1;
    for (int r = 0; r < n; ++r) {
      if (cell_size[r] > 1) {
        target = r;
        break;
      }
    }

    if (target < 0) {
      leaf(ranks);
      return;
    }

    std::vector<int> explored;
    for (int v = 0; v < n; ++v) {
      if (ranks[v] != target)
        continue;
      if (!explored.empty() && symmetric_to_explored(v, explored, prefix))
        continue;

      Ranks child = ranks;
      for (int u = 0; u < n; ++u) {
        if (u != v && ranks[u] == target)
          ++child[u];
      }
      prefix.push_back(v);
      visit(std::move(child), prefix);
      prefix.pop_back();
      explored.push_back(v);
    }
  }

  void leaf(const Ranks &ranks) {
    std::vector<int> cert = certificate(mol_, ranks);
    if (best_ranks_.empty() || cert < best_cert_) {
      best_cert_ = std::move(cert);
      best_ranks_ = ranks;
      return;
    }
    if (cert != best_cert_)
      return;

    // Same labeled graph: atom i and the atom holding i's position in the
    // best labeling are exchanged by an automorphism.
    const int n = mol_.num_atoms();
    std::vector<int> at_best(n);
    for (int i = 0; i < n; ++i)
      at_best[best_ranks_[i]] = i;

    std::vector<int> gamma(n);
    for (int i = 0; i < n; ++i)
      gamma[i] = at_best[ranks[i]];
    automorphisms_.push_back(std::move(gamma));
  }

  // True when v lies in the orbit of an explored atom under the automorphisms
  // found so far that fix every individualized atom.
  bool symmetric_to_explored(int v, const std::vector<int> &explored,
                             const std::vector<int> &prefix) const {
    UnionFind orbits(mol_.num_atoms());
    bool any = false;
    for (const auto &gamma: automorphisms_) {
      if (!std::all_of(prefix.begin(), prefix.end(),
                       [&](int p) { return gamma[p] == p; }))
        continue;
      any = true;
      for (int i = 0; i < mol_.num_atoms(); ++i)
        orbits.unite(i, gamma[i]);
    }
    if (!any)
      return false;

    const int root = orbits.find(v);
    return std::any_of(explored.begin(), explored.end(),
                       [&](int e) { return orbits.find(e) == root; });
  }

  const Molecule &mol_;
  std::vector<int> best_cert_;
  Ranks best_ranks_;
  std::vector<std::vector<int>> automorphisms_;
};

bool organic_subset(int element) {
  switch (element) {
  case 5:
  case 6:
  case 7:
  case 8:
  case 9:
  case 15:
  case 16:
  case 17:
  case 35:
  case 53:
    return true;
  default:
    return false;
  }
}

bool aromatic_organic(int element) {
  return element == 5 || element == 6 || element == 7 || element == 8
         || element == 15 || element == 16;
}

// Whether a SMILES reader will flag the written atom aromatic.
bool written_lowercase(const Atom &atom) {
  return atom.aromatic && atom.element != 0;
}

std::string atom_token(const Molecule &mol, int i) {
  const Atom &a = mol.atom(i);
  std::string symbol(element_symbol(a.element));
  if (written_lowercase(a))
    symbol[0] = static_cast<char>(symbol[0] - 'A' + 'a');

  const int h = mol.total_h(i);
  const bool bare = organic_subset(a.element) && a.charge == 0 && !a.isotope
                    && (!a.aromatic || aromatic_organic(a.element))
                    && h == default_hydrogens(mol, i);
  if (bare)
    return symbol;

  std::string token = "[";
  if (a.isotope)
    token += std::to_string(*a.isotope);
  token += symbol;
  if (h > 0) {
    token += 'H';
    if (h > 1)
      token += std::to_string(h);
  }
  if (a.charge != 0) {
    token += a.charge > 0 ? '+' : '-';
    if (std::abs(a.charge) > 1)
      token += std::to_string(std::abs(a.charge));
  }
  token += ']';
  return token;
}

std::string bond_token(const Molecule &mol, const Bond &bond) {
  const bool both_lower = written_lowercase(mol.atom(bond.a))
                          && written_lowercase(mol.atom(bond.b));
  switch (bond.order) {
  case BondOrder::kSingle:
    return both_lower ? "-" : "";
  case BondOrder::kDouble:
    return "=";
  case BondOrder::kTriple:
    return "#";
  case BondOrder::kAromatic:
    return both_lower ? "" : ":";
  }
  return "";
}

std::string ring_label(int digit) {
  if (digit < 10)
    return std::to_string(digit);
  return "%" + std::to_string(digit);
}

// Canonical SMILES for one connected molecule.
class SmilesWriter {
public:
  SmilesWriter(const Molecule &mol, const Ranks &ranks)
      : mol_(mol), ranks_(ranks), children_(mol.num_atoms()),
        ring_bonds_(mol.num_atoms()), visited_(mol.num_atoms(), 0),
        tree_bond_(mol.num_bonds(), 0) { }

  std::string write() {
    const int root = static_cast<int>(
        std::min_element(ranks_.begin(), ranks_.end()) - ranks_.begin());
    build_tree(root);

    std::fill(visited_.begin(), visited_.end(), 0);
    open_digit_.assign(mol_.num_bonds(), -1);
    emit(root, -1);
    return out_;
  }

private:
  std::vector<int> sorted_neighbor_bonds(int u) const {
    std::vector<int> bonds = mol_.incident(u);
    std::sort(bonds.begin(), bonds.end(), [&](int x, int y) {
      return ranks_[mol_.bond(x).other(u)] < ranks_[mol_.bond(y).other(u)];
    });
    return bonds;
  }

  void build_tree(int u) {
    visited_[u] = 1;
    for (int bi: sorted_neighbor_bonds(u)) {
      const int v = mol_.bond(bi).other(u);
      if (!visited_[v]) {
        tree_bond_[bi] = 1;
        children_[u].push_back(bi);
        build_tree(v);
      }
    }
    for (int bi: sorted_neighbor_bonds(u)) {
      if (!tree_bond_[bi])
        ring_bonds_[u].push_back(bi);
    }
  }

  void emit(int u, int via_bond) {
    if (via_bond >= 0)
      out_ += bond_token(mol_, mol_.bond(via_bond));
    out_ += atom_token(mol_, u);
    visited_[u] = 1;

    for (int bi: ring_bonds_[u]) {
      const int v = mol_.bond(bi).other(u);
      if (visited_[v]) {
        // Closing: the digit was assigned when v was written.
        const int digit = open_digit_[bi];
        out_ += ring_label(digit);
        free_digits_.push_back(digit);
        std::sort(free_digits_.begin(), free_digits_.end());
      } else {
        int digit;
        if (!free_digits_.empty()) {
          digit = free_digits_.front();
          free_digits_.erase(free_digits_.begin());
        } else {
          digit = ++max_digit_;
        }
        open_digit_[bi] = digit;
        out_ += bond_token(mol_, mol_.bond(bi));
        out_ += ring_label(digit);
      }
    }

    const auto &kids = children_[u];
    for (size_t k = 0; k < kids.size(); ++k) {
      const int v = mol_.bond(kids[k]).other(u);
      const bool branch = k + 1 < kids.size();
      if (branch)
        out_ += '(';
      emit(v, kids[k]);
      if (branch)
        out_ += ')';
    }
  }

  const Molecule &mol_;
  const Ranks &ranks_;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<int>> ring_bonds_;
  std::vector<char> visited_;
  std::vector<char> tree_bond_;
  std::vector<int> open_digit_;
  std::vector<int> free_digits_;
  int max_digit_ = 0;
  std::string out_;
};

// Atom invariant used by the isomorphism search.
using IsoInvariant = std::array<int, 7>;

std::vector<IsoInvariant> iso_invariants(const Molecule &mol) {
  const int n = mol.num_atoms();
  std::vector<IsoInvariant> inv(n);
  for (int i = 0; i < n; ++i) {
    const Atom &a = mol.atom(i);
    int bond_sum = 0;
    for (int bi: mol.incident(i))
      bond_sum += 1 << (3 * bond_code(mol.bond(bi).order));
    inv[i] = { a.element, a.charge, a.isotope.value_or(0), mol.total_h(i),
               a.aromatic ? 1 : 0, mol.degree(i), bond_sum };
  }
  return inv;
}

class IsomorphismSearch {
public:
  IsomorphismSearch(const Molecule &a, const Molecule &b)
      : a_(a), b_(b), inv_a_(iso_invariants(a)), inv_b_(iso_invariants(b)),
        map_ab_(a.num_atoms(), -1), map_ba_(b.num_atoms(), -1) {
    // Visit a's atoms so each one after the first of its component has an
    // already-mapped neighbor.
    std::vector<char> seen(a.num_atoms(), 0);
    for (int root = 0; root < a.num_atoms(); ++root) {
      if (seen[root])
        continue;
      seen[root] = 1;
      const size_t begin = order_.size();
      order_.push_back(root);
      for (size_t k = begin; k < order_.size(); ++k) {
        for (int bi: a.incident(order_[k])) {
          const int v = a.bond(bi).other(order_[k]);
          if (!seen[v]) {
            seen[v] = 1;
            order_.push_back(v);
          }
        }
      }
    }
  }

  bool run() {
    std::vector<IsoInvariant> sa = inv_a_, sb = inv_b_;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb)
      return false;
    return extend(0);
  }

private:
  bool feasible(int u, int v) const {
    if (inv_a_[u] != inv_b_[v])
      return false;
    for (int bi: a_.incident(u)) {
      const Bond &bond = a_.bond(bi);
      const int mu = map_ab_[bond.other(u)];
      if (mu < 0)
        continue;
      const int bj = b_.find_bond(v, mu);
      if (bj < 0 || b_.bond(bj).order != bond.order)
        return false;
    }
    int mapped_b = 0, mapped_a = 0;
    for (int bi: b_.incident(v))
      mapped_b += map_ba_[b_.bond(bi).other(v)] >= 0;
    for (int bi: a_.incident(u))
      mapped_a += map_ab_[a_.bond(bi).other(u)] >= 0;
    return mapped_a == mapped_b;
  }

  bool extend(size_t depth) {
    if (depth == order_.size())
      return true;

    const int u = order_[depth];
    for (int v = 0; v < b_.num_atoms(); ++v) {
      if (map_ba_[v] >= 0 || !feasible(u, v))
        continue;
      map_ab_[u] = v;
      map_ba_[v] = u;
      if (extend(depth + 1))
        return true;
      map_ab_[u] = -1;
      map_ba_[v] = -1;
    }
    return false;
  }

  const Molecule &a_;
  const Molecule &b_;
  std::vector<IsoInvariant> inv_a_, inv_b_;
  std::vector<int> map_ab_, map_ba_;
  std::vector<int> order_;
};
}  // namespace

std::vector<int> canonical_ranking(const Molecule &mol) {
  return CanonicalSearch(mol).run();
}

CanonicalKey canonical_key(const Molecule &mol) {
  std::vector<std::string> fragments;
  for (const auto &component: mol.components()) {
    const Molecule fragment = component.size() == mol.atoms().size()
                                  ? mol
                                  : mol.subgraph(component);
    const Ranks ranks = canonical_ranking(fragment);
    fragments.push_back(SmilesWriter(fragment, ranks).write());
  }
  std::sort(fragments.begin(), fragments.end());

  CanonicalKey key;
  for (size_t i = 0; i < fragments.size(); ++i) {
    if (i > 0)
      key.value += '.';
    key.value += fragments[i];
  }
  return key;
}

bool isomorphic(const Molecule &a, const Molecule &b) {
  if (a.num_atoms() > kIsomorphismAtomLimit
      || b.num_atoms() > kIsomorphismAtomLimit) {
    throw OracleCapacityError("isomorphism oracle is limited to "
                              + std::to_string(kIsomorphismAtomLimit)
                              + " atoms");
  }
  if (a.num_atoms() != b.num_atoms() || a.num_bonds() != b.num_bonds())
    return false;
  return IsomorphismSearch(a, b).run();
}

}  // namespace chemeval
