//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemeval/smiles.h"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "chemeval/canonical.h"

namespace chemeval {
namespace {
struct PendingBond {
  std::optional<BondOrder> order;
  BondStereo stereo = BondStereo::kNone;
  std::size_t offset = 0;

  bool present() const { return order.has_value(); }
};

struct OpenRing {
  int atom;
  PendingBond bond;
  std::size_t offset;
};

class SmilesParser {
public:
  explicit SmilesParser(std::string_view text): text_(text) { }

  Molecule parse() {
    if (text_.empty())
      throw SmilesParseError(0, "empty SMILES");

    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '(') {
        if (prev_ < 0)
          fail(pos_, "branch without a preceding atom");
        if (pending_.present())
          fail(pos_, "bond symbol before '('");
        branches_.push_back({ prev_, pos_ });
        ++pos_;
      } else if (c == ')') {
        if (branches_.empty())
          fail(pos_, "unbalanced ')'");
        if (pending_.present())
          fail(pos_, "bond symbol before ')'");
        prev_ = branches_.back().first;
        branches_.pop_back();
        ++pos_;
      } else if (c == '.') {
        if (pending_.present())
          fail(pos_, "bond symbol before '.'");
        if (!branches_.empty())
          fail(pos_, "'.' inside a branch");
        prev_ = -1;
        ++pos_;
      } else if (is_bond_symbol(c)) {
        if (pending_.present())
          fail(pos_, "two consecutive bond symbols");
        if (prev_ < 0)
          fail(pos_, "bond symbol without a preceding atom");
        pending_ = read_bond();
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
        ring_closure();
      } else {
        atom();
      }
    }

    if (pending_.present())
      fail(pending_.offset, "dangling bond symbol");
    if (!branches_.empty())
      fail(branches_.back().second, "unbalanced '('");
    if (!rings_.empty()) {
      const auto &[digit, open] = *rings_.begin();
      fail(open.offset,
           "ring bond " + std::to_string(digit) + " never closed");
    }
    return { std::move(atoms_), std::move(bonds_) };
  }

private:
  [[noreturn]] void fail(std::size_t offset, const std::string &what) const {
    throw SmilesParseError(offset, what);
  }

  static bool is_bond_symbol(char c) {
    return c == '-' || c == '=' || c == '#' || c == ':' || c == '/'
           || c == '\\' || c == '$';
  }

  PendingBond read_bond() {
    PendingBond bond;
    bond.offset = pos_;
    switch (text_[pos_]) {
    case '-':
      bond.order = BondOrder::kSingle;
      break;
    case '=':
      bond.order = BondOrder::kDouble;
      break;
    case '#':
      bond.order = BondOrder::kTriple;
      break;
    case ':':
      bond.order = BondOrder::kAromatic;
      break;
    case '/':
      bond.order = BondOrder::kSingle;
      bond.stereo = BondStereo::kUp;
      break;
    case '\\':
      bond.order = BondOrder::kSingle;
      bond.stereo = BondStereo::kDown;
      break;
    default:
      fail(pos_, "unsupported bond symbol '" + std::string(1, text_[pos_])
                     + "'");
    }
    ++pos_;
    return bond;
  }

  void add_bond(int a, int b, const PendingBond &pending,
                std::size_t offset) {
    if (a == b)
      fail(offset, "ring bond joins an atom to itself");
    if (!pairs_.emplace(std::minmax(a, b)).second)
      fail(offset, "two bonds between the same pair of atoms");

    Bond bond;
    bond.a = a;
    bond.b = b;
    if (pending.order) {
      bond.order = *pending.order;
      bond.stereo = pending.stereo;
    } else {
      bond.order = atoms_[a].aromatic && atoms_[b].aromatic
                       ? BondOrder::kAromatic
                       : BondOrder::kSingle;
    }
    bonds_.push_back(bond);
  }

  void ring_closure() {
    const std::size_t start = pos_;
    if (prev_ < 0)
      fail(start, "ring-closure digit without a preceding atom");

    int digit;
    if (text_[pos_] == '%') {
      if (pos_ + 2 >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))
          || !std::isdigit(static_cast<unsigned char>(text_[pos_ + 2])))
        fail(start, "'%' must be followed by two digits");
      digit = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
      pos_ += 3;
    } else {
      digit = text_[pos_] - '0';
      ++pos_;
    }

    auto it = rings_.find(digit);
    if (it == rings_.end()) {
      rings_.emplace(digit, OpenRing { prev_, pending_, start });
    } else {
      const OpenRing open = it->second;
      rings_.erase(it);
      PendingBond bond = open.bond;
      if (pending_.present()) {
        if (bond.present() && *bond.order != *pending_.order)
          fail(start, "conflicting bond symbols on ring bond "
                          + std::to_string(digit));
        bond = pending_;
      }
      add_bond(open.atom, prev_, bond, start);
    }
    pending_ = {};
  }

  void atom() {
    const std::size_t start = pos_;
    Atom atom = text_[pos_] == '[' ? bracket_atom() : organic_atom();
    const int index = static_cast<int>(atoms_.size());
    atoms_.push_back(std::move(atom));
    if (prev_ >= 0)
      add_bond(prev_, index, pending_, start);
    pending_ = {};
    prev_ = index;
  }

  Atom organic_atom() {
    const std::size_t start = pos_;
    Atom atom;
    const char c = text_[pos_];
    const char next = pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0';

    if (c == 'C' && next == 'l') {
      atom.element = 17;
      pos_ += 2;
    } else if (c == 'B' && next == 'r') {
      atom.element = 35;
      pos_ += 2;
    } else {
      switch (c) {
      case 'B':
      case 'C':
      case 'N':
      case 'O':
      case 'P':
      case 'S':
      case 'F':
      case 'I':
        atom.element = atomic_number(std::string(1, c));
        break;
      case 'b':
      case 'c':
      case 'n':
      case 'o':
      case 'p':
      case 's':
        atom.element = atomic_number(
            std::string(1, static_cast<char>(std::toupper(c))));
        atom.aromatic = true;
        break;
      case '*':
        atom.element = 0;
        break;
      default:
        fail(start, "unexpected character '" + std::string(1, c) + "'");
      }
      ++pos_;
    }
    return atom;
  }

  bool at_digit() const {
    return pos_ < text_.size()
           && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  int read_number() {
    int value = 0;
    while (at_digit()) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 100000)
        fail(pos_, "number too large");
      ++pos_;
    }
    return value;
  }

  Atom bracket_atom() {
    const std::size_t open = pos_;
    ++pos_;
    Atom atom;
    atom.explicit_h = 0;

    if (at_digit()) {
      const std::size_t at = pos_;
      atom.isotope = read_number();
      if (*atom.isotope <= 0)
        fail(at, "isotope must be positive");
    }

    if (pos_ >= text_.size())
      fail(open, "unterminated bracket atom");

    const std::size_t sym_at = pos_;
    const char c = text_[pos_];
    if (c == '*') {
      atom.element = 0;
      ++pos_;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      const bool lower = std::islower(static_cast<unsigned char>(c));
      std::string one(1, static_cast<char>(std::toupper(c)));
      std::string two;
      if (pos_ + 1 < text_.size()
          && std::islower(static_cast<unsigned char>(text_[pos_ + 1])))
        two = one + text_[pos_ + 1];

      if (!two.empty() && atomic_number(two) > 0) {
        atom.element = atomic_number(two);
        pos_ += 2;
      } else if (atomic_number(one) > 0) {
        atom.element = atomic_number(one);
        pos_ += 1;
      } else {
        fail(sym_at, "unknown element");
      }
      atom.aromatic = lower;
    } else {
      fail(sym_at, "expected an element symbol");
    }

    if (pos_ < text_.size() && text_[pos_] == '@') {
      const std::size_t begin = pos_;
      while (pos_ < text_.size() && text_[pos_] == '@')
        ++pos_;
      if (pos_ + 1 < text_.size() && std::isupper(static_cast<unsigned char>(text_[pos_]))
          && std::isupper(static_cast<unsigned char>(text_[pos_ + 1]))
          && text_[pos_] != 'H') {
        pos_ += 2;
        read_number();
      }
      atom.chirality = std::string(text_.substr(begin, pos_ - begin));
    }

    if (pos_ < text_.size() && text_[pos_] == 'H') {
      ++pos_;
      atom.explicit_h = at_digit() ? read_number() : 1;
    }

    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      const char sign = text_[pos_];
      const int unit = sign == '+' ? 1 : -1;
      ++pos_;
      if (at_digit()) {
        atom.charge = unit * read_number();
      } else {
        atom.charge = unit;
        while (pos_ < text_.size() && text_[pos_] == sign) {
          atom.charge += unit;
          ++pos_;
        }
      }
    }

    if (pos_ < text_.size() && text_[pos_] == ':') {
      ++pos_;
      if (!at_digit())
        fail(pos_, "expected atom class number");
      read_number();
    }

    if (pos_ >= text_.size() || text_[pos_] != ']')
      fail(pos_ < text_.size() ? pos_ : open, "expected ']'");
    ++pos_;
    return atom;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int prev_ = -1;
  PendingBond pending_;
  std::vector<std::pair<int, std::size_t>> branches_;
  std::map<int, OpenRing> rings_;
  std::set<std::pair<int, int>> pairs_;
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
};
}  // namespace

Molecule parse_smiles(std::string_view text) {
  return SmilesParser(text).parse();
}

std::string write_smiles(const Molecule &mol) {
  return canonical_key(mol).value;
}

}  // namespace chemeval
