//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMEVAL_MOLFILE_H_
#define CHEMEVAL_MOLFILE_H_

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chemeval/molecule.h"

namespace chemeval {

class MolfileError: public std::runtime_error {
public:
  /// line is 1-based; 0 when the error is not tied to a line.
  MolfileError(int line, const std::string &what)
      : std::runtime_error(line > 0 ? "MOLfile line " + std::to_string(line)
                                          + ": " + what
                                    : "MOLfile: " + what),
        line_(line) { }

  int line() const { return line_; }

private:
  int line_;
};

/// V3000 input is rejected with this distinct error type.
class MolfileVersionError: public MolfileError {
public:
  using MolfileError::MolfileError;
};

struct MolfileDocument {
  std::array<std::string, 3> header;
  // Every atom carries coordinates.
  Molecule molecule;
  // Property-block lines as read, "M  END" included.
  std::vector<std::string> properties;

  int num_atoms() const { return molecule.num_atoms(); }
  int num_bonds() const { return molecule.num_bonds(); }
};

struct Point2 {
  double x = 0;
  double y = 0;

  friend bool operator==(const Point2 &, const Point2 &) = default;
};

/// Reads one V2000 connection table.
///
/// Atom lines need the fixed-width coordinate and symbol columns; the legacy
/// charge column is optional and ignored whenever an "M  CHG" line exists.
/// Bond type 4 is read as aromatic, bond stereo 1/6/4 as wedge/hash/wavy.
/// The valence column, when non-zero, fixes the atom's hydrogen count.
/// Throws MolfileError with a 1-based line number.
MolfileDocument parse_molfile(std::string_view text);

struct MolfileWriteOptions {
  std::string name;
  std::string program = "  chemeval";
  std::string comment;
};

/// Writes a V2000 connection table. Coordinates use %10.4f columns, aromatic
/// bonds are written as type 4, wavy marks as stereo 4, charges and isotopes
/// via "M  CHG"/"M  ISO". Atoms whose hydrogen count a reader would not infer
/// get the valence column set. Throws MolfileError when `layout` does not
/// cover every atom.
std::string write_molfile(const Molecule &mol, std::span<const Point2> layout,
                          const MolfileWriteOptions &options = {});

/// Same, taking (x, y) from each atom's coordinates.
std::string write_molfile(const Molecule &mol,
                          const MolfileWriteOptions &options = {});

/// 2D coordinates of a parsed document, in atom order.
std::vector<Point2> layout_of(const MolfileDocument &doc);

/// Root-mean-square deviation between two layouts of the same structure.
///
/// Atoms are paired through their canonical ranks. Layout a is centred and
/// scaled to unit RMS radius, then b is aligned onto it by the least-squares
/// similarity transform (translation, rotation, uniform scale), so the result
/// lies in [0, 1]. Throws std::invalid_argument when the canonical keys differ.
double layout_rmsd(const MolfileDocument &a, const MolfileDocument &b);

}  // namespace chemeval

#endif  // CHEMEVAL_MOLFILE_H_
