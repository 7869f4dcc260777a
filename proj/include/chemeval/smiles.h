//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMEVAL_SMILES_H_
#define CHEMEVAL_SMILES_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "chemeval/molecule.h"

namespace chemeval {

class SmilesParseError: public std::runtime_error {
public:
  SmilesParseError(std::size_t offset, const std::string &what)
      : std::runtime_error("SMILES offset " + std::to_string(offset) + ": "
                           + what),
        offset_(offset) { }

  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

/// Parses the SMILES subset documented in docs/smiles.md. The result is not
/// normalized: organic-subset atoms carry no hydrogen count yet, bracket
/// atoms carry their explicit count.
Molecule parse_smiles(std::string_view text);

/// Canonical SMILES of a normalized molecule; same string as
/// canonical_key().
std::string write_smiles(const Molecule &mol);

}  // namespace chemeval

#endif  // CHEMEVAL_SMILES_H_
