#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <set>
#include <stdexcept>

#include "txf/chem/elements.hpp"
#include "txf/chem/smiles.hpp"

namespace txf::chem {
namespace {

using Key = std::vector<long long>;

// Dense ranks (0-based) of keys; returns the number of distinct classes.
int dense_rank(const std::vector<Key>& keys, std::vector<int>& ranks) {
  std::vector<int> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return keys[static_cast<std::size_t>(x)] < keys[static_cast<std::size_t>(y)]; });
  ranks.assign(keys.size(), 0);
  int current = -1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || keys[static_cast<std::size_t>(order[i])] != keys[static_cast<std::size_t>(order[i - 1])]) ++current;
    ranks[static_cast<std::size_t>(order[i])] = current;
  }
  return current + 1;
}

int refine(const Molecule& mol, std::vector<int>& ranks, int classes) {
  const std::size_t n = mol.atom_count();
  std::vector<Key> keys(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) {
      Key& key = keys[i];
      key.clear();
      key.push_back(ranks[i]);
      const auto nbrs = mol.neighbors(static_cast<int>(i));
      const std::size_t head = key.size();
      for (const auto& inc : nbrs) {
        const auto order = static_cast<long long>(mol.bond(inc.bond).order);
        key.push_back(order * static_cast<long long>(n + 1) + ranks[static_cast<std::size_t>(inc.neighbor)]);
      }
      std::sort(key.begin() + static_cast<std::ptrdiff_t>(head), key.end());
    }
    std::vector<int> next;
    const int next_classes = dense_rank(keys, next);
    ranks = std::move(next);
    if (next_classes == classes) return classes;
    classes = next_classes;
  }
}

// Parity of the permutation taking `from` to `to` (same elements).
std::optional<bool> odd_permutation(std::vector<int> from, const std::vector<int>& to) {
  if (from.size() != to.size()) return std::nullopt;
  bool odd = false;
  for (std::size_t i = 0; i < to.size(); ++i) {
    const auto it = std::find(from.begin() + static_cast<std::ptrdiff_t>(i), from.end(), to[i]);
    if (it == from.end()) return std::nullopt;
    const auto j = static_cast<std::size_t>(it - from.begin());
    if (j != i) {
      std::swap(from[i], from[j]);
      odd = !odd;
    }
  }
  return odd;
}

struct RingBond {
  int bond;
  int partner;
  bool closing;  // true at the atom written later
};

class Writer {
 public:
  Writer(const Molecule& mol, std::span<const int> priority)
      : mol_(mol), priority_(priority), n_(mol.atom_count()) {
    if (priority.size() != n_) throw std::invalid_argument("priority must have one entry per atom");
  }

  std::string run() {
    parent_.assign(n_, -1);
    parent_bond_.assign(n_, -1);
    children_.assign(n_, {});
    rings_.assign(n_, {});
    visited_.assign(n_, false);
    bond_seen_.assign(mol_.bond_count(), false);
    first_written_.assign(mol_.bond_count(), -1);
    mark_.assign(mol_.bond_count(), 0);

    std::vector<int> by_priority(n_);
    std::iota(by_priority.begin(), by_priority.end(), 0);
    std::sort(by_priority.begin(), by_priority.end(), [&](int a, int b) { return prio(a) < prio(b); });

    std::vector<int> roots;
    for (int v : by_priority) {
      if (visited_[static_cast<std::size_t>(v)]) continue;
      roots.push_back(v);
      explore(v);
    }
    order_ring_bonds();
    assign_direction_marks();

    digit_in_use_.clear();
    digit_of_bond_.assign(mol_.bond_count(), -1);
    std::string out;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (i) out += '.';
      emit(roots[i], out);
    }
    return out;
  }

 private:
  int prio(int atom) const { return priority_[static_cast<std::size_t>(atom)]; }

  std::vector<Incidence> sorted_neighbors(int v) const {
    auto nbrs = mol_.neighbors(v);
    std::vector<Incidence> out(nbrs.begin(), nbrs.end());
    std::sort(out.begin(), out.end(), [&](const Incidence& a, const Incidence& b) { return prio(a.neighbor) < prio(b.neighbor); });
    return out;
  }

  void explore(int v) {
    visited_[static_cast<std::size_t>(v)] = true;
    for (const auto& inc : sorted_neighbors(v)) {
      const auto b = static_cast<std::size_t>(inc.bond);
      if (bond_seen_[b]) continue;
      bond_seen_[b] = true;
      const auto u = static_cast<std::size_t>(inc.neighbor);
      if (!visited_[u]) {
        parent_[u] = v;
        parent_bond_[u] = inc.bond;
        first_written_[b] = v;
        children_[static_cast<std::size_t>(v)].push_back(inc.neighbor);
        explore(inc.neighbor);
      } else {
        // back edge to an ancestor: it opens at u and closes here
        rings_[u].push_back({inc.bond, v, false});
        rings_[static_cast<std::size_t>(v)].push_back({inc.bond, inc.neighbor, true});
        first_written_[b] = v;  // the bond symbol goes on the closing side
      }
    }
  }

  void order_ring_bonds() {
    for (auto& list : rings_) {
      std::stable_sort(list.begin(), list.end(), [&](const RingBond& a, const RingBond& b) {
        if (a.closing != b.closing) return a.closing;
        return prio(a.partner) < prio(b.partner);
      });
    }
  }

  int pick_reference(int atom, int exclude) const {
    int best = -1;
    for (const auto& inc : mol_.neighbors(atom)) {
      if (inc.neighbor == exclude) continue;
      if (mark_[static_cast<std::size_t>(inc.bond)]) return inc.neighbor;
      if (best < 0 || prio(inc.neighbor) < prio(best)) best = inc.neighbor;
    }
    return best;
  }

  void assign_direction_marks() {
    auto stereo = std::vector<DoubleBondStereo>(mol_.double_bond_stereo().begin(), mol_.double_bond_stereo().end());
    std::sort(stereo.begin(), stereo.end(), [&](const DoubleBondStereo& x, const DoubleBondStereo& y) {
      const Bond& bx = mol_.bond(x.bond);
      const Bond& by = mol_.bond(y.bond);
      return std::min(prio(bx.a), prio(bx.b)) < std::min(prio(by.a), prio(by.b));
    });
    for (const auto& st : stereo) {
      const Bond& db = mol_.bond(st.bond);
      // mark the end written first, so the first mark is always '/'
      int end_a = db.a, end_b = db.b, stored_a = st.ref_a, stored_b = st.ref_b;
      if (prio(end_b) < prio(end_a)) {
        std::swap(end_a, end_b);
        std::swap(stored_a, stored_b);
      }
      const int ref_a = pick_reference(end_a, end_b);
      const int ref_b = pick_reference(end_b, end_a);
      if (ref_a < 0 || ref_b < 0) continue;
      bool cis = st.cis;
      if (ref_a != stored_a) cis = !cis;
      if (ref_b != stored_b) cis = !cis;
      const auto bond_a = static_cast<std::size_t>(*mol_.bond_between(end_a, ref_a));
      const auto bond_b = static_cast<std::size_t>(*mol_.bond_between(end_b, ref_b));

      bool up_a = false;
      if (mark_[bond_a]) {
        up_a = (mark_[bond_a] == '/') != (first_written_[bond_a] == end_a);
      } else {
        up_a = first_written_[bond_a] != end_a;  // writes '/'
        mark_[bond_a] = '/';
      }
      const bool up_b = cis ? up_a : !up_a;
      const char want = (up_b != (first_written_[bond_b] == end_b)) ? '/' : '\\';
      if (!mark_[bond_b]) mark_[bond_b] = want;
    }
  }

  std::string bond_text(int bond) const {
    const char m = mark_[static_cast<std::size_t>(bond)];
    if (m) return std::string(1, m);
    const Bond& b = mol_.bond(bond);
    const bool both_aromatic = mol_.atom(b.a).aromatic && mol_.atom(b.b).aromatic;
    switch (b.order) {
      case BondOrder::Single: return both_aromatic ? "-" : "";
      case BondOrder::Double: return "=";
      case BondOrder::Triple: return "#";
      case BondOrder::Aromatic: return both_aromatic ? "" : ":";
    }
    return "";
  }

  static std::string digit_text(int d) { return d < 10 ? std::to_string(d) : "%" + std::to_string(d); }

  int take_digit() {
    for (int d = 1;; ++d) {
      if (!digit_in_use_.contains(d)) {
        digit_in_use_.insert(d);
        return d;
      }
    }
  }

  Chirality output_chirality(int v) const {
    const Atom& atom = mol_.atom(v);
    if (atom.chirality == Chirality::None) return Chirality::None;
    std::vector<int> order;
    if (parent_[static_cast<std::size_t>(v)] >= 0) order.push_back(parent_[static_cast<std::size_t>(v)]);
    if (std::find(atom.stereo_neighbors.begin(), atom.stereo_neighbors.end(), kImplicitHydrogen) !=
        atom.stereo_neighbors.end()) {
      order.push_back(kImplicitHydrogen);
    }
    for (const auto& rb : rings_[static_cast<std::size_t>(v)]) order.push_back(rb.partner);
    for (int c : children_[static_cast<std::size_t>(v)]) order.push_back(c);
    const auto odd = odd_permutation(atom.stereo_neighbors, order);
    if (!odd) return Chirality::None;
    if (!*odd) return atom.chirality;
    return atom.chirality == Chirality::Clockwise ? Chirality::Anticlockwise : Chirality::Clockwise;
  }

  std::string atom_text(int v) const {
    const Atom& a = mol_.atom(v);
    const Chirality chir = output_chirality(v);
    std::string symbol(element_symbol(a.atomic_number));
    if (a.aromatic) {
      for (auto& ch : symbol) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
    const bool organic = in_organic_subset(a.atomic_number) && !a.isotope && a.charge == 0 && !a.atom_map &&
                         chir == Chirality::None &&
                         (!a.aromatic || (a.atomic_number != 33 && a.atomic_number != 34 && a.atomic_number != 52)) &&
                         a.hydrogens == implicit_hydrogens(mol_, v);
    if (organic) return symbol;

    std::string out = "[";
    if (a.isotope) out += std::to_string(*a.isotope);
    out += symbol;
    if (chir == Chirality::Anticlockwise) out += "@";
    if (chir == Chirality::Clockwise) out += "@@";
    if (a.hydrogens > 0) {
      out += "H";
      if (a.hydrogens > 1) out += std::to_string(a.hydrogens);
    }
    if (a.charge != 0) {
      out += a.charge > 0 ? "+" : "-";
      if (std::abs(a.charge) > 1) out += std::to_string(std::abs(a.charge));
    }
    if (a.atom_map) out += ":" + std::to_string(*a.atom_map);
    out += "]";
    return out;
  }

  void emit(int v, std::string& out) {
    out += atom_text(v);
    for (const auto& rb : rings_[static_cast<std::size_t>(v)]) {
      const auto b = static_cast<std::size_t>(rb.bond);
      if (rb.closing) {
        out += bond_text(rb.bond);
        out += digit_text(digit_of_bond_[b]);
        digit_in_use_.erase(digit_of_bond_[b]);
      } else {
        digit_of_bond_[b] = take_digit();
        out += digit_text(digit_of_bond_[b]);
      }
    }
    const auto& kids = children_[static_cast<std::size_t>(v)];
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const bool branch = i + 1 < kids.size();
      if (branch) out += '(';
      out += bond_text(parent_bond_[static_cast<std::size_t>(kids[i])]);
      emit(kids[i], out);
      if (branch) out += ')';
    }
  }

  const Molecule& mol_;
  std::span<const int> priority_;
  std::size_t n_;
  std::vector<int> parent_, parent_bond_;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<RingBond>> rings_;
  std::vector<bool> visited_, bond_seen_;
  std::vector<int> first_written_;
  std::vector<char> mark_;
  std::set<int> digit_in_use_;
  std::vector<int> digit_of_bond_;
};

}  // namespace

std::vector<int> canonical_ranks(const Molecule& mol) {
  const std::size_t n = mol.atom_count();
  std::vector<Key> keys(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Atom& a = mol.atom(static_cast<int>(i));
    // degree first so that chains are written from a terminal atom
    keys[i] = {mol.degree(static_cast<int>(i)),
               a.atomic_number,
               a.isotope.value_or(-1),
               a.charge,
               a.aromatic ? 1 : 0,
               a.hydrogens,
               a.atom_map.value_or(-1)};
  }
  std::vector<int> ranks;
  int classes = dense_rank(keys, ranks);
  classes = refine(mol, ranks, classes);

  while (classes < static_cast<int>(n)) {
    // split the lowest tied class by promoting its first member
    std::vector<int> count(n, 0);
    for (int r : ranks) ++count[static_cast<std::size_t>(r)];
    int tied = 0;
    while (count[static_cast<std::size_t>(tied)] < 2) ++tied;
    int chosen = -1;
    for (std::size_t i = 0; i < n && chosen < 0; ++i) {
      if (ranks[i] == tied) chosen = static_cast<int>(i);
    }
    std::vector<Key> split_keys(n);
    for (std::size_t i = 0; i < n; ++i) split_keys[i] = {ranks[i], static_cast<int>(i) == chosen ? 0 : 1};
    classes = dense_rank(split_keys, ranks);
    classes = refine(mol, ranks, classes);
  }
  return ranks;
}

std::string write_smiles(const Molecule& mol, std::span<const int> priority) {
  return Writer(mol, priority).run();
}

std::string write_canonical(const Molecule& mol) {
  const auto ranks = canonical_ranks(mol);
  return write_smiles(mol, ranks);
}

}  // namespace txf::chem
