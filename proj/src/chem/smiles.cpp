#include <cctype>
#include <map>
#include <optional>

#include "txf/chem/elements.hpp"
#include "txf/chem/smiles.hpp"

namespace txf::chem {
namespace {

struct PendingBond {
  std::optional<BondOrder> order;
  char direction = 0;  // '/' or '\\'
  std::size_t offset = 0;
};

struct RingOpening {
  int atom;
  PendingBond bond;
  std::size_t slot;  // index in the opener's stereo_neighbors
  std::size_t offset;
};

// '/' or '\\' written between `first` and the other end of `bond`.
struct DirectionMark {
  int bond;
  char symbol;
  int first;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Molecule run() {
    if (text_.empty()) throw SmilesError("empty SMILES", 0);
    while (pos_ < text_.size()) step();
    if (!branches_.empty()) throw SmilesError("unclosed branch", text_.size());
    if (!rings_.empty()) {
      throw SmilesError("unmatched ring-closure digit " + std::to_string(rings_.begin()->first),
                        rings_.begin()->second.offset);
    }
    if (pending_) throw SmilesError("bond symbol without a following atom", pending_->offset);
    if (expect_atom_) throw SmilesError("expected an atom", text_.size());
    finish();
    return std::move(mol_);
  }

 private:
  void step() {
    const char c = text_[pos_];
    if (c == '[' || c == '*' || std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      const int atom = c == '[' ? bracket_atom() : organic_atom();
      attach(atom, start);
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
      ring_closure();
    } else if (c == '-' || c == '=' || c == '#' || c == ':' || c == '/' || c == '\\' || c == '$') {
      bond_symbol();
    } else if (c == '(') {
      if (prev_ < 0) throw SmilesError("branch without a preceding atom", pos_);
      if (pending_) throw SmilesError("bond symbol before '('", pos_);
      branches_.push_back(prev_);
      expect_atom_ = true;
      ++pos_;
    } else if (c == ')') {
      if (branches_.empty()) throw SmilesError("unmatched ')'", pos_);
      if (expect_atom_) throw SmilesError("empty branch", pos_);
      if (pending_) throw SmilesError("bond symbol before ')'", pos_);
      prev_ = branches_.back();
      branches_.pop_back();
      ++pos_;
    } else if (c == '.') {
      if (pending_) throw SmilesError("bond symbol before '.'", pos_);
      if (prev_ < 0 || expect_atom_) throw SmilesError("empty component", pos_);
      prev_ = -1;
      expect_atom_ = true;
      ++pos_;
    } else {
      throw SmilesError(std::string("unexpected character '") + c + "'", pos_);
    }
  }

  void bond_symbol() {
    const char c = text_[pos_];
    if (prev_ < 0) throw SmilesError("bond symbol without a preceding atom", pos_);
    if (pending_) throw SmilesError("two consecutive bond symbols", pos_);
    PendingBond b;
    b.offset = pos_;
    switch (c) {
      case '-': b.order = BondOrder::Single; break;
      case '=': b.order = BondOrder::Double; break;
      case '#': b.order = BondOrder::Triple; break;
      case ':': b.order = BondOrder::Aromatic; break;
      case '/': case '\\': b.order = BondOrder::Single; b.direction = c; break;
      default: throw SmilesError("quadruple bonds are not supported", pos_);
    }
    pending_ = b;
    ++pos_;
  }

  int organic_atom() {
    const std::size_t start = pos_;
    Atom atom;
    bool organic = true;
    const char c = text_[pos_];
    if (c == '*') {
      atom.atomic_number = 0;
      ++pos_;
    } else if (text_.substr(pos_, 2) == "Cl") {
      atom.atomic_number = 17;
      pos_ += 2;
    } else if (text_.substr(pos_, 2) == "Br") {
      atom.atomic_number = 35;
      pos_ += 2;
    } else {
      switch (c) {
        case 'B': atom.atomic_number = 5; break;
        case 'C': atom.atomic_number = 6; break;
        case 'N': atom.atomic_number = 7; break;
        case 'O': atom.atomic_number = 8; break;
        case 'P': atom.atomic_number = 15; break;
        case 'S': atom.atomic_number = 16; break;
        case 'F': atom.atomic_number = 9; break;
        case 'I': atom.atomic_number = 53; break;
        case 'b': atom.atomic_number = 5; atom.aromatic = true; break;
        case 'c': atom.atomic_number = 6; atom.aromatic = true; break;
        case 'n': atom.atomic_number = 7; atom.aromatic = true; break;
        case 'o': atom.atomic_number = 8; atom.aromatic = true; break;
        case 'p': atom.atomic_number = 15; atom.aromatic = true; break;
        case 's': atom.atomic_number = 16; atom.aromatic = true; break;
        default: organic = false;
      }
      if (!organic) throw SmilesError("unknown element outside brackets", start);
      ++pos_;
    }
    const int idx = mol_.add_atom(std::move(atom));
    needs_implicit_h_.push_back(true);
    return idx;
  }

  int read_number() {
    int value = 0;
    bool any = false;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1'000'000) throw SmilesError("number too large", pos_);
      ++pos_;
      any = true;
    }
    return any ? value : -1;
  }

  int bracket_atom() {
    const std::size_t open = pos_++;
    Atom atom;
    const int isotope = read_number();
    if (isotope >= 0) atom.isotope = isotope;

    if (pos_ >= text_.size()) throw SmilesError("malformed bracket atom", pos_);
    const std::size_t sym_at = pos_;
    const char c = text_[pos_];
    if (c == '*') {
      atom.atomic_number = 0;
      ++pos_;
    } else if (std::islower(static_cast<unsigned char>(c))) {
      // aromatic symbols: two-letter forms first
      static const std::pair<std::string_view, int> kAromatic[] = {
          {"se", 34}, {"as", 33}, {"te", 52}, {"b", 5}, {"c", 6}, {"n", 7}, {"o", 8}, {"p", 15}, {"s", 16}};
      bool found = false;
      for (const auto& [sym, z] : kAromatic) {
        if (text_.substr(pos_, sym.size()) == sym) {
          atom.atomic_number = z;
          atom.aromatic = true;
          pos_ += sym.size();
          found = true;
          break;
        }
      }
      if (!found) throw SmilesError("unknown aromatic element", sym_at);
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      std::optional<int> z;
      if (pos_ + 1 < text_.size() && std::islower(static_cast<unsigned char>(text_[pos_ + 1]))) {
        z = atomic_number(text_.substr(pos_, 2));
        if (z) pos_ += 2;
      }
      if (!z) {
        z = atomic_number(text_.substr(pos_, 1));
        if (!z) throw SmilesError("unknown element", sym_at);
        ++pos_;
      }
      atom.atomic_number = *z;
    } else {
      throw SmilesError("malformed bracket atom", sym_at);
    }

    if (pos_ < text_.size() && text_[pos_] == '@') {
      ++pos_;
      atom.chirality = Chirality::Anticlockwise;
      if (pos_ < text_.size() && text_[pos_] == '@') {
        ++pos_;
        atom.chirality = Chirality::Clockwise;
      }
      if (pos_ < text_.size() && std::isupper(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != 'H') {
        throw SmilesError("only @ and @@ chirality classes are supported", pos_);
      }
    }

    if (pos_ < text_.size() && text_[pos_] == 'H') {
      ++pos_;
      const int count = read_number();
      atom.hydrogens = count >= 0 ? count : 1;
    }

    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      const char sign = text_[pos_++];
      int magnitude = 1;
      const int n = read_number();
      if (n >= 0) {
        magnitude = n;
      } else {
        while (pos_ < text_.size() && text_[pos_] == sign) {
          ++magnitude;
          ++pos_;
        }
      }
      atom.charge = sign == '+' ? magnitude : -magnitude;
    }

    if (pos_ < text_.size() && text_[pos_] == ':') {
      ++pos_;
      const int map = read_number();
      if (map < 0) throw SmilesError("atom class without a number", pos_);
      atom.atom_map = map;
    }

    if (pos_ >= text_.size() || text_[pos_] != ']') throw SmilesError("malformed bracket atom", open);
    ++pos_;
    if (atom.aromatic && !aromatic_capable(atom.atomic_number)) {
      throw SmilesError("element cannot be aromatic", sym_at);
    }
    const int idx = mol_.add_atom(std::move(atom));
    needs_implicit_h_.push_back(false);
    return idx;
  }

  void attach(int atom, std::size_t /*offset*/) {
    if (prev_ >= 0) {
      const PendingBond b = pending_.value_or(PendingBond{});
      make_bond(prev_, atom, b, prev_);
      mol_.atom(atom).stereo_neighbors.push_back(prev_);
      mol_.atom(prev_).stereo_neighbors.push_back(atom);
    }
    Atom& a = mol_.atom(atom);
    if (a.chirality != Chirality::None && a.hydrogens > 0) a.stereo_neighbors.push_back(kImplicitHydrogen);
    pending_.reset();
    prev_ = atom;
    expect_atom_ = false;
  }

  int make_bond(int u, int v, const PendingBond& pb, int written_first) {
    BondOrder order = BondOrder::Single;
    if (pb.order) {
      order = *pb.order;
    } else if (mol_.atom(u).aromatic && mol_.atom(v).aromatic) {
      order = BondOrder::Aromatic;
    }
    int bond = 0;
    try {
      bond = mol_.add_bond(u, v, order);
    } catch (const std::invalid_argument& e) {
      throw SmilesError(e.what(), pos_ == 0 ? 0 : pos_ - 1);
    }
    if (pb.direction) marks_.push_back({bond, pb.direction, written_first});
    return bond;
  }

  void ring_closure() {
    const std::size_t at = pos_;
    if (prev_ < 0 || expect_atom_) throw SmilesError("ring-closure digit without a preceding atom", at);
    int number = 0;
    if (text_[pos_] == '%') {
      if (pos_ + 2 >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_ + 2]))) {
        throw SmilesError("'%' must be followed by two digits", at);
      }
      number = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
      pos_ += 3;
    } else {
      number = text_[pos_++] - '0';
    }
    const PendingBond here = pending_.value_or(PendingBond{});
    pending_.reset();

    auto it = rings_.find(number);
    if (it == rings_.end()) {
      Atom& a = mol_.atom(prev_);
      rings_[number] = {prev_, here, a.stereo_neighbors.size(), at};
      a.stereo_neighbors.push_back(kUnfilled);
      return;
    }
    const RingOpening open = it->second;
    rings_.erase(it);
    if (open.atom == prev_) throw SmilesError("ring closure bonds an atom to itself", at);
    if (open.bond.order && here.order && *open.bond.order != *here.order) {
      throw SmilesError("conflicting ring-closure bond orders", at);
    }
    PendingBond merged = here.order ? here : open.bond;
    int written_first = prev_;
    if (!here.direction && open.bond.direction) {
      merged.direction = open.bond.direction;
      written_first = open.atom;
    } else if (here.direction) {
      merged.direction = here.direction;
    }
    if (!merged.order) merged.order = here.order ? here.order : open.bond.order;
    make_bond(open.atom, prev_, merged, written_first);
    mol_.atom(open.atom).stereo_neighbors[open.slot] = prev_;
    mol_.atom(prev_).stereo_neighbors.push_back(open.atom);
  }

  void finish() {
    for (std::size_t i = 0; i < mol_.atom_count(); ++i) {
      const int idx = static_cast<int>(i);
      Atom& a = mol_.atom(idx);
      if (needs_implicit_h_[i]) a.hydrogens = implicit_hydrogens(mol_, idx);
      if (a.chirality == Chirality::None) a.stereo_neighbors.clear();
    }
    assign_double_bond_stereo();
  }

  // Which side of the double bond the marked neighbor sits on, relative to
  // the double-bond atom: '/' read in writing order, flipped when the
  // double-bond atom was written first.
  std::optional<std::pair<int, bool>> side_of(int atom, int double_bond) const {
    for (const auto& inc : mol_.neighbors(atom)) {
      if (inc.bond == double_bond) continue;
      for (const auto& m : marks_) {
        if (m.bond == inc.bond) {
          const bool up = (m.symbol == '/') != (m.first == atom);
          return std::make_pair(inc.neighbor, up);
        }
      }
    }
    return std::nullopt;
  }

  void assign_double_bond_stereo() {
    if (marks_.empty()) return;
    for (std::size_t i = 0; i < mol_.bond_count(); ++i) {
      const Bond& b = mol_.bond(static_cast<int>(i));
      if (b.order != BondOrder::Double) continue;
      const auto sa = side_of(b.a, static_cast<int>(i));
      const auto sb = side_of(b.b, static_cast<int>(i));
      if (!sa || !sb) continue;
      mol_.add_double_bond_stereo({static_cast<int>(i), sa->first, sb->first, sa->second == sb->second});
    }
  }

  static constexpr int kUnfilled = -2;

  std::string_view text_;
  std::size_t pos_ = 0;
  Molecule mol_;
  int prev_ = -1;
  bool expect_atom_ = true;
  std::optional<PendingBond> pending_;
  std::vector<int> branches_;
  std::map<int, RingOpening> rings_;
  std::vector<bool> needs_implicit_h_;
  std::vector<DirectionMark> marks_;
};

}  // namespace

Molecule parse_smiles(std::string_view text) { return Parser(text).run(); }

std::vector<Molecule> parse_reaction_side(std::string_view text) {
  std::vector<Molecule> out;
  std::size_t start = 0;
  while (true) {
    const auto dot = text.find('.', start);
    const auto part = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    try {
      out.push_back(parse_smiles(part));
    } catch (const SmilesError& e) {
      throw SmilesError(e.detail(), start + e.offset());
    }
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return out;
}

std::string canonicalize(std::string_view smiles) { return write_canonical(parse_smiles(smiles)); }

}  // namespace txf::chem
