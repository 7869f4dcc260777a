//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemeval/fingerprint.h"

#include <algorithm>
#include <bit>
#include <string>

namespace chemeval {
namespace {
constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;
}  // namespace

Fingerprint::Fingerprint(int nbits): nbits_(nbits) {
  if (nbits <= 0)
    throw std::invalid_argument("fingerprint length must be positive");
  words_.assign((nbits + 63) / 64, 0);
}

int Fingerprint::count() const {
  int total = 0;
  for (std::uint64_t w: words_)
    total += std::popcount(w);
  return total;
}

std::uint64_t fnv1a64(const std::vector<std::int64_t> &values) {
  std::uint64_t h = kFnvOffset;
  for (std::int64_t value: values) {
    auto bits = static_cast<std::uint64_t>(value);
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (bits >> (8 * byte)) & 0xff;
      h *= kFnvPrime;
    }
  }
  return h;
}

std::vector<std::uint64_t> environment_ids(const Molecule &mol, int radius) {
  const int n = mol.num_atoms();
  std::vector<std::uint64_t> current(n);
  for (int i = 0; i < n; ++i) {
    const Atom &a = mol.atom(i);
    current[i] = fnv1a64({ a.element, mol.degree(i), mol.total_h(i), a.charge,
                           a.isotope.value_or(0), a.aromatic ? 1 : 0 });
  }

  std::vector<std::uint64_t> ids = current;
  std::vector<std::uint64_t> next(n);
  std::vector<std::pair<int, std::uint64_t>> nbrs;
  for (int r = 1; r <= radius; ++r) {
    for (int i = 0; i < n; ++i) {
      nbrs.clear();
      for (int bi: mol.incident(i)) {
        const Bond &bond = mol.bond(bi);
        nbrs.emplace_back(bond_code(bond.order), current[bond.other(i)]);
      }
      std::sort(nbrs.begin(), nbrs.end());

      std::vector<std::int64_t> data { r, static_cast<std::int64_t>(current[i]) };
      for (auto [order, id]: nbrs) {
        data.push_back(order);
        data.push_back(static_cast<std::int64_t>(id));
      }
      next[i] = fnv1a64(data);
    }
    current.swap(next);
    ids.insert(ids.end(), current.begin(), current.end());
  }
  return ids;
}

Fingerprint fingerprint(const Molecule &mol, int radius, int nbits) {
  if (radius < 0)
    throw std::invalid_argument("fingerprint radius must be non-negative");
  Fingerprint fp(nbits);
  for (std::uint64_t id: environment_ids(mol, radius))
    fp.set(static_cast<int>(id % static_cast<std::uint64_t>(nbits)));
  return fp;
}

double tanimoto(const Fingerprint &a, const Fingerprint &b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("tanimoto: fingerprint lengths differ ("
                                + std::to_string(a.size()) + " vs "
                                + std::to_string(b.size()) + ")");
  }
  int both = 0, either = 0;
  for (std::size_t k = 0; k < a.words().size(); ++k) {
    both += std::popcount(a.words()[k] & b.words()[k]);
    either += std::popcount(a.words()[k] | b.words()[k]);
  }
  if (either == 0)
    return 1.0;
  return static_cast<double>(both) / either;
}

}  // namespace chemeval
