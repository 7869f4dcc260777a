//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemeval/molfile.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

#include "chemeval/canonical.h"
#include "chemeval/normalize.h"

namespace chemeval {
namespace {
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) {
      if (begin < text.size())
        lines.push_back(text.substr(begin));
      break;
    }
    std::string_view line = text.substr(begin, end - begin);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    lines.push_back(line);
    begin = end + 1;
  }
  return lines;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty()
         && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// Fixed-width column; empty when the line is too short.
std::string_view column(std::string_view line, std::size_t begin,
                        std::size_t width) {
  if (begin >= line.size())
    return {};
  return trim(line.substr(begin, width));
}

std::optional<int> to_int(std::string_view s) {
  s = trim(s);
  if (s.empty())
    return std::nullopt;
  if (s.front() == '+')
    s.remove_prefix(1);
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    return std::nullopt;
  return value;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (s.empty())
    return std::nullopt;
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    return std::nullopt;
  return value;
}

int legacy_charge(int code) {
  switch (code) {
  case 1:
    return 3;
  case 2:
    return 2;
  case 3:
    return 1;
  case 5:
    return -1;
  case 6:
    return -2;
  case 7:
    return -3;
  default:
    return 0;
  }
}

int element_from_molfile(std::string_view symbol) {
  if (symbol == "*" || symbol == "A" || symbol == "Q" || symbol == "R"
      || symbol == "R#")
    return 0;
  return atomic_number(symbol);
}

// "M  CHG" / "M  ISO" entries: (atom, value) pairs.
std::vector<std::pair<int, int>> property_pairs(std::string_view line,
                                                int line_no) {
  auto count = to_int(column(line, 6, 3));
  if (!count || *count < 0 || *count > 8)
    throw MolfileError(line_no, "bad property entry count");

  std::vector<std::pair<int, int>> pairs;
  for (int k = 0; k < *count; ++k) {
    auto atom = to_int(column(line, 9 + 8 * k, 4));
    auto value = to_int(column(line, 13 + 8 * k, 4));
    if (!atom || !value)
      throw MolfileError(line_no, "truncated property line");
    pairs.emplace_back(*atom, *value);
  }
  return pairs;
}

void append_property_lines(std::string &out, const char *tag,
                           const std::vector<std::pair<int, int>> &entries) {
  char buf[32];
  for (std::size_t start = 0; start < entries.size(); start += 8) {
    const std::size_t n = std::min<std::size_t>(8, entries.size() - start);
    std::snprintf(buf, sizeof(buf), "M  %s%3zu", tag, n);
    out += buf;
    for (std::size_t k = start; k < start + n; ++k) {
      std::snprintf(buf, sizeof(buf), "%4d%4d", entries[k].first,
                    entries[k].second);
      out += buf;
    }
    out += '\n';
  }
}

int stereo_code(BondStereo stereo) {
  switch (stereo) {
  case BondStereo::kWedge:
    return 1;
  case BondStereo::kHash:
    return 6;
  case BondStereo::kWavy:
    return 4;
  default:
    return 0;
  }
}
}  // namespace

MolfileDocument parse_molfile(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.size() < 4)
    throw MolfileError(static_cast<int>(lines.size()) + 1,
                       "missing counts line");

  MolfileDocument doc;
  for (int i = 0; i < 3; ++i)
    doc.header[i] = std::string(lines[i]);

  const std::string_view counts = lines[3];
  if (counts.find("V3000") != std::string_view::npos)
    throw MolfileVersionError(4, "V3000 connection tables are not supported");
  if (trim(counts).size() < 5 || trim(counts).substr(trim(counts).size() - 5)
                                     != "V2000")
    throw MolfileError(4, "counts line does not end with V2000");

  const auto n_atoms = to_int(column(counts, 0, 3));
  const auto n_bonds = to_int(column(counts, 3, 3));
  if (!n_atoms || !n_bonds || *n_atoms < 0 || *n_bonds < 0)
    throw MolfileError(4, "malformed atom/bond counts");
  if (*n_atoms == 0)
    throw MolfileError(4, "connection table has no atoms");

  std::size_t cursor = 4;
  auto line_no = [&] { return static_cast<int>(cursor) + 1; };

  std::vector<Atom> atoms;
  std::vector<int> valence_field;
  for (int i = 0; i < *n_atoms; ++i, ++cursor) {
    const std::string where = "atom line " + std::to_string(i + 1) + " of "
                              + std::to_string(*n_atoms);
    if (cursor >= lines.size())
      throw MolfileError(line_no(), where + " missing (counts line declares "
                                        + std::to_string(*n_atoms)
                                        + " atoms)");

    const std::string_view line = lines[cursor];
    if (line.size() < 32 || line.substr(0, 3) == "M  ")
      throw MolfileError(line_no(), "short " + where + " (counts line declares "
                                        + std::to_string(*n_atoms)
                                        + " atoms)");

    const auto x = to_double(line.substr(0, 10));
    const auto y = to_double(line.substr(10, 10));
    const auto z = to_double(line.substr(20, 10));
    if (!x || !y || !z)
      throw MolfileError(line_no(), "bad coordinates on " + where);

    const std::string_view symbol = column(line, 31, 3);
    Atom atom;
    atom.element = element_from_molfile(symbol);
    if (atom.element < 0)
      throw MolfileError(line_no(),
                         "unknown element '" + std::string(symbol) + "'");
    atom.coords = Point3 { *x, *y, *z };
    if (auto code = to_int(column(line, 36, 3)))
      atom.charge = legacy_charge(*code);
    valence_field.push_back(to_int(column(line, 48, 3)).value_or(0));
    atoms.push_back(std::move(atom));
  }

  std::vector<Bond> bonds;
  std::set<std::pair<int, int>> pairs;
  for (int i = 0; i < *n_bonds; ++i, ++cursor) {
    const std::string where = "bond line " + std::to_string(i + 1) + " of "
                              + std::to_string(*n_bonds);
    if (cursor >= lines.size())
      throw MolfileError(line_no(), where + " missing");

    const std::string_view line = lines[cursor];
    if (line.size() < 9 || line.substr(0, 3) == "M  ")
      throw MolfileError(line_no(), "short " + where);

    const auto a = to_int(line.substr(0, 3));
    const auto b = to_int(line.substr(3, 3));
    const auto type = to_int(line.substr(6, 3));
    if (!a || !b || !type)
      throw MolfileError(line_no(), "malformed " + where);
    if (*a < 1 || *a > *n_atoms || *b < 1 || *b > *n_atoms || *a == *b)
      throw MolfileError(line_no(), where + " references invalid atoms");
    if (!pairs.emplace(std::minmax(*a, *b)).second)
      throw MolfileError(line_no(), "duplicate " + where);

    Bond bond;
    bond.a = *a - 1;
    bond.b = *b - 1;
    switch (*type) {
    case 1:
      bond.order = BondOrder::kSingle;
      break;
    case 2:
      bond.order = BondOrder::kDouble;
      break;
    case 3:
      bond.order = BondOrder::kTriple;
      break;
    case 4:
      bond.order = BondOrder::kAromatic;
      break;
    default:
      throw MolfileError(line_no(),
                         "unknown bond type " + std::to_string(*type));
    }
    switch (to_int(column(line, 9, 3)).value_or(0)) {
    case 1:
      bond.stereo = BondStereo::kWedge;
      break;
    case 6:
      bond.stereo = BondStereo::kHash;
      break;
    case 4:
      bond.stereo = BondStereo::kWavy;
      break;
    default:
      break;
    }
    if (bond.order == BondOrder::kAromatic) {
      atoms[bond.a].aromatic = true;
      atoms[bond.b].aromatic = true;
    }
    bonds.push_back(bond);
  }

  bool saw_end = false, saw_chg = false;
  std::vector<std::pair<int, int>> charges, isotopes;
  for (; cursor < lines.size(); ++cursor) {
    const std::string_view line = lines[cursor];
    doc.properties.emplace_back(line);
    if (line.substr(0, 6) == "M  END") {
      saw_end = true;
      break;
    }
    if (line.substr(0, 6) == "M  CHG") {
      saw_chg = true;
      auto entries = property_pairs(line, line_no());
      charges.insert(charges.end(), entries.begin(), entries.end());
    } else if (line.substr(0, 6) == "M  ISO") {
      auto entries = property_pairs(line, line_no());
      isotopes.insert(isotopes.end(), entries.begin(), entries.end());
    }
  }
  if (!saw_end)
    throw MolfileError(0, "missing \"M  END\"");

  if (saw_chg) {
    for (Atom &atom: atoms)
      atom.charge = 0;
    for (auto [index, charge]: charges) {
      if (index < 1 || index > *n_atoms)
        throw MolfileError(0, "M  CHG references atom "
                                  + std::to_string(index));
      atoms[index - 1].charge = charge;
    }
  }
  for (auto [index, mass]: isotopes) {
    if (index < 1 || index > *n_atoms || mass <= 0)
      throw MolfileError(0, "bad M  ISO entry for atom "
                                + std::to_string(index));
    atoms[index - 1].isotope = mass;
  }

  Molecule mol(atoms, bonds);
  for (int i = 0; i < mol.num_atoms(); ++i) {
    if (valence_field[i] == 0)
      continue;
    const int total = valence_field[i] == 15 ? 0 : valence_field[i];
    const int h = total - bond_valence(mol, i);
    if (h < 0)
      throw MolfileError(5 + i, "valence field smaller than bond valence");
    atoms[i].explicit_h = h;
  }
  doc.molecule = Molecule(std::move(atoms), std::move(bonds));
  return doc;
}

std::string write_molfile(const Molecule &mol, std::span<const Point2> layout,
                          const MolfileWriteOptions &options) {
  if (static_cast<int>(layout.size()) != mol.num_atoms())
    throw MolfileError(0, "layout has " + std::to_string(layout.size())
                              + " points for "
                              + std::to_string(mol.num_atoms()) + " atoms");

  // What a reader will see: aromatic flags only through aromatic bonds.
  std::vector<Atom> read_atoms = mol.atoms();
  for (Atom &atom: read_atoms) {
    atom.aromatic = false;
    atom.explicit_h.reset();
  }
  for (const Bond &bond: mol.bonds()) {
    if (bond.order == BondOrder::kAromatic) {
      read_atoms[bond.a].aromatic = true;
      read_atoms[bond.b].aromatic = true;
    }
  }
  const Molecule as_read(std::move(read_atoms), mol.bonds());

  std::string out;
  out += options.name + '\n';
  out += options.program + '\n';
  out += options.comment + '\n';

  char buf[128];
  std::snprintf(buf, sizeof(buf), "%3d%3d%3d%3d%3d%3d%3d%3d%3d%3d%3d%6s\n",
                mol.num_atoms(), mol.num_bonds(), 0, 0, 0, 0, 0, 0, 0, 0,
                999, "V2000");
  out += buf;

  std::vector<std::pair<int, int>> charges, isotopes;
  for (int i = 0; i < mol.num_atoms(); ++i) {
    const Atom &atom = mol.atom(i);
    int valence = 0;
    if (atom.explicit_h && *atom.explicit_h != default_hydrogens(as_read, i)) {
      valence = *atom.explicit_h + bond_valence(mol, i);
      if (valence == 0)
        valence = 15;
      else if (valence > 14)
        throw MolfileError(0, "atom " + std::to_string(i + 1)
                                  + " valence cannot be written");
    }
    std::snprintf(buf, sizeof(buf),
                  "%10.4f%10.4f%10.4f %-3s%2d%3d%3d%3d%3d%3d%3d%3d%3d%3d%3d%3d\n",
                  layout[i].x, layout[i].y,
                  atom.coords ? atom.coords->z : 0.0,
                  std::string(element_symbol(atom.element)).c_str(), 0, 0, 0,
                  0, 0, valence, 0, 0, 0, 0, 0, 0);
    out += buf;
    if (atom.charge != 0)
      charges.emplace_back(i + 1, atom.charge);
    if (atom.isotope)
      isotopes.emplace_back(i + 1, *atom.isotope);
  }

  for (const Bond &bond: mol.bonds()) {
    std::snprintf(buf, sizeof(buf), "%3d%3d%3d%3d\n", bond.a + 1, bond.b + 1,
                  bond_code(bond.order), stereo_code(bond.stereo));
    out += buf;
  }

  append_property_lines(out, "CHG", charges);
  append_property_lines(out, "ISO", isotopes);
  out += "M  END\n";
  return out;
}

std::string write_molfile(const Molecule &mol,
                          const MolfileWriteOptions &options) {
  std::vector<Point2> layout;
  layout.reserve(mol.num_atoms());
  for (int i = 0; i < mol.num_atoms(); ++i) {
    const auto &coords = mol.atom(i).coords;
    if (!coords)
      throw MolfileError(0, "atom " + std::to_string(i + 1)
                                + " has no coordinates");
    layout.push_back({ coords->x, coords->y });
  }
  return write_molfile(mol, layout, options);
}

std::vector<Point2> layout_of(const MolfileDocument &doc) {
  std::vector<Point2> layout;
  for (const Atom &atom: doc.molecule.atoms())
    layout.push_back({ atom.coords->x, atom.coords->y });
  return layout;
}

double layout_rmsd(const MolfileDocument &a, const MolfileDocument &b) {
  const Molecule na = normalize(a.molecule);
  const Molecule nb = normalize(b.molecule);
  if (canonical_key(na) != canonical_key(nb))
    throw std::invalid_argument(
        "layout_rmsd: documents describe different structures");

  const std::vector<int> rank_a = canonical_ranking(na);
  const std::vector<int> rank_b = canonical_ranking(nb);
  const int n = na.num_atoms();
  std::vector<int> b_at_rank(n);
  for (int i = 0; i < n; ++i)
    b_at_rank[rank_b[i]] = i;

  const auto pa = layout_of(a), pb = layout_of(b);
  using Complex = std::complex<double>;
  std::vector<Complex> p(n), q(n);
  Complex mean_p, mean_q;
  for (int i = 0; i < n; ++i) {
    p[i] = { pa[i].x, pa[i].y };
    const Point2 &matched = pb[b_at_rank[rank_a[i]]];
    q[i] = { matched.x, matched.y };
    mean_p += p[i];
    mean_q += q[i];
  }
  mean_p /= n;
  mean_q /= n;

  double spp = 0, sqq = 0;
  for (int i = 0; i < n; ++i) {
    p[i] -= mean_p;
    q[i] -= mean_q;
    spp += std::norm(p[i]);
    sqq += std::norm(q[i]);
  }
  if (spp == 0 || sqq == 0)
    return spp == sqq ? 0.0 : 1.0;

  // a is scaled to unit RMS radius; the least-squares similarity transform
  // of q onto it leaves n * (1 - overlap^2) as squared residual.
  Complex cross;
  for (int i = 0; i < n; ++i)
    cross += p[i] * std::conj(q[i]);
  const double overlap = std::abs(cross) / std::sqrt(spp * sqq);
  return std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
}

}  // namespace chemeval
