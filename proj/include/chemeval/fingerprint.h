//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMEVAL_FINGERPRINT_H_
#define CHEMEVAL_FINGERPRINT_H_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "chemeval/molecule.h"

namespace chemeval {

constexpr int kDefaultFingerprintBits = 2048;
constexpr int kDefaultFingerprintRadius = 2;

/// Folded bitset. Bits are stored little-endian in 64-bit words.
class Fingerprint {
public:
  explicit Fingerprint(int nbits = kDefaultFingerprintBits);

  int size() const { return nbits_; }
  bool test(int bit) const { return (words_[bit >> 6] >> (bit & 63)) & 1; }
  void set(int bit) { words_[bit >> 6] |= std::uint64_t { 1 } << (bit & 63); }
  int count() const;

  const std::vector<std::uint64_t> &words() const { return words_; }

  friend bool operator==(const Fingerprint &, const Fingerprint &) = default;

private:
  int nbits_;
  std::vector<std::uint64_t> words_;
};

/// 64-bit FNV-1a over the little-endian bytes of each value in turn.
std::uint64_t fnv1a64(const std::vector<std::int64_t> &values);

/// Identifiers of the circular atom environments of radius 0..radius, one per
/// atom and radius (duplicates kept). See docs/fingerprint.md for the exact
/// hashing scheme.
std::vector<std::uint64_t> environment_ids(const Molecule &mol, int radius);

/// Circular fingerprint: every environment identifier sets bit id % nbits.
/// Requires a normalized molecule.
Fingerprint fingerprint(const Molecule &mol,
                        int radius = kDefaultFingerprintRadius,
                        int nbits = kDefaultFingerprintBits);

/// |a & b| / |a | b|; 1.0 when both are empty. Throws std::invalid_argument
/// on a length mismatch.
double tanimoto(const Fingerprint &a, const Fingerprint &b);

}  // namespace chemeval

#endif  // CHEMEVAL_FINGERPRINT_H_
