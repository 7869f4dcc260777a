//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMEVAL_TESTS_SUPPORT_H_
#define CHEMEVAL_TESTS_SUPPORT_H_

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "chemeval/canonical.h"
#include "chemeval/detection.h"
#include "chemeval/fixture.h"
#include "chemeval/molecule.h"
#include "chemeval/normalize.h"
#include "chemeval/smiles.h"

namespace chemeval::testing {

inline Molecule smi(std::string_view text) {
  return normalize(parse_smiles(text));
}

inline std::string key_of(const Molecule &mol) {
  return canonical_key(mol).value;
}

inline std::vector<int> random_permutation(int n, Rng &rng) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i)
    perm[i] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[i], perm[uniform_int(rng, 0, i)]);
  return perm;
}

inline Molecule shuffled(const Molecule &mol, Rng &rng) {
  return mol.permuted(random_permutation(mol.num_atoms(), rng));
}

inline BBox random_box(Rng &rng, double extent = 100) {
  const double x = uniform_real(rng, 0, extent);
  const double y = uniform_real(rng, 0, extent);
  return { x, y, x + uniform_real(rng, 5, 40), y + uniform_real(rng, 5, 40) };
}

// Box overlapping `box` with a random shift of up to `shift` of its size.
inline BBox nudged(const BBox &box, Rng &rng, double shift) {
  const double dx = box.width() * uniform_real(rng, -shift, shift);
  const double dy = box.height() * uniform_real(rng, -shift, shift);
  return { std::max(0.0, box.x1 + dx), std::max(0.0, box.y1 + dy),
           box.x2 + dx + 1e-9, box.y2 + dy + 1e-9 };
}

inline std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_file(const std::filesystem::path &path,
                       std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
  explicit TempDir(const std::string &name)
      : path_(std::filesystem::temp_directory_path() / ("chemeval-" + name)) {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path &path() const { return path_; }
  std::string file(const std::string &name) const {
    return (path_ / name).string();
  }

private:
  std::filesystem::path path_;
};

}  // namespace chemeval::testing

#endif  // CHEMEVAL_TESTS_SUPPORT_H_
