#include "txf/chem/molecule.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "txf/chem/elements.hpp"

namespace txf::chem {

int Molecule::add_atom(Atom atom) {
  atoms_.push_back(std::move(atom));
  adjacency_.emplace_back();
  return static_cast<int>(atoms_.size()) - 1;
}

int Molecule::add_bond(int a, int b, BondOrder order) {
  const int n = static_cast<int>(atoms_.size());
  if (a < 0 || b < 0 || a >= n || b >= n) throw std::invalid_argument("bond references a missing atom");
  if (a == b) throw std::invalid_argument("bond from an atom to itself");
  if (bond_between(a, b)) throw std::invalid_argument("duplicate bond between the same atoms");
  bonds_.push_back({a, b, order});
  const int idx = static_cast<int>(bonds_.size()) - 1;
  adjacency_[static_cast<std::size_t>(a)].push_back({b, idx});
  adjacency_[static_cast<std::size_t>(b)].push_back({a, idx});
  return idx;
}

std::optional<int> Molecule::bond_between(int a, int b) const {
  for (const auto& inc : adjacency_[static_cast<std::size_t>(a)]) {
    if (inc.neighbor == b) return inc.bond;
  }
  return std::nullopt;
}

std::vector<bool> Molecule::ring_bonds() const {
  // A bond is on a cycle iff it is not a bridge (Tarjan lowlink).
  const std::size_t n = atoms_.size();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> ring(bonds_.size(), true);
  int timer = 0;

  struct Frame {
    int atom;
    int parent_bond;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (std::size_t root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    stack.push_back({static_cast<int>(root), -1, 0});
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& adj = adjacency_[static_cast<std::size_t>(f.atom)];
      if (f.next < adj.size()) {
        const Incidence inc = adj[f.next++];
        if (inc.bond == f.parent_bond) continue;
        const auto nb = static_cast<std::size_t>(inc.neighbor);
        if (disc[nb] < 0) {
          disc[nb] = low[nb] = timer++;
          stack.push_back({inc.neighbor, inc.bond, 0});
        } else {
          low[static_cast<std::size_t>(f.atom)] = std::min(low[static_cast<std::size_t>(f.atom)], disc[nb]);
        }
      } else {
        const Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          const auto parent = static_cast<std::size_t>(stack.back().atom);
          const auto child = static_cast<std::size_t>(done.atom);
          low[parent] = std::min(low[parent], low[child]);
          if (low[child] > disc[parent]) ring[static_cast<std::size_t>(done.parent_bond)] = false;
        }
      }
    }
  }
  return ring;
}

std::vector<bool> Molecule::ring_atoms() const {
  std::vector<bool> atoms(atoms_.size(), false);
  const auto ring = ring_bonds();
  for (std::size_t i = 0; i < bonds_.size(); ++i) {
    if (ring[i]) {
      atoms[static_cast<std::size_t>(bonds_[i].a)] = true;
      atoms[static_cast<std::size_t>(bonds_[i].b)] = true;
    }
  }
  return atoms;
}

std::vector<std::vector<int>> Molecule::components() const {
  std::vector<int> label(atoms_.size(), -1);
  std::vector<std::vector<int>> out;
  for (std::size_t start = 0; start < atoms_.size(); ++start) {
    if (label[start] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> todo{static_cast<int>(start)};
    label[start] = id;
    while (!todo.empty()) {
      const int v = todo.back();
      todo.pop_back();
      out.back().push_back(v);
      for (const auto& inc : neighbors(v)) {
        if (label[static_cast<std::size_t>(inc.neighbor)] < 0) {
          label[static_cast<std::size_t>(inc.neighbor)] = id;
          todo.push_back(inc.neighbor);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

Molecule Molecule::subgraph(std::span<const int> keep) const {
  std::vector<int> remap(atoms_.size(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) remap[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);

  Molecule out;
  for (int old : keep) {
    Atom atom = atoms_[static_cast<std::size_t>(old)];
    int lost_neighbors = 0;
    for (const auto& inc : neighbors(old)) {
      if (remap[static_cast<std::size_t>(inc.neighbor)] < 0) {
        const BondOrder order = bonds_[static_cast<std::size_t>(inc.bond)].order;
        // an aromatic atom losing an exocyclic double bond keeps its ring
        // electrons and needs one hydrogen, as in c(=O) -> [cH]
        atom.hydrogens += (atom.aromatic && order == BondOrder::Double) ? 1 : valence_contribution(order);
        ++lost_neighbors;
      }
    }
    if (atom.chirality != Chirality::None) {
      if (lost_neighbors == 0) {
        for (int& s : atom.stereo_neighbors) {
          if (s != kImplicitHydrogen) s = remap[static_cast<std::size_t>(s)];
        }
      } else {
        atom.chirality = Chirality::None;
        atom.stereo_neighbors.clear();
      }
    }
    out.add_atom(std::move(atom));
  }

  std::vector<int> bond_remap(bonds_.size(), -1);
  for (std::size_t i = 0; i < bonds_.size(); ++i) {
    const int a = remap[static_cast<std::size_t>(bonds_[i].a)];
    const int b = remap[static_cast<std::size_t>(bonds_[i].b)];
    if (a >= 0 && b >= 0) bond_remap[i] = out.add_bond(a, b, bonds_[i].order);
  }
  for (const auto& st : double_bond_stereo_) {
    const int bond = bond_remap[static_cast<std::size_t>(st.bond)];
    const int ra = remap[static_cast<std::size_t>(st.ref_a)];
    const int rb = remap[static_cast<std::size_t>(st.ref_b)];
    if (bond < 0 || ra < 0 || rb < 0) continue;
    // bond endpoints keep their relative order because kept bonds are re-added as (a, b)
    out.add_double_bond_stereo({bond, ra, rb, st.cis});
  }
  return out;
}

bool Molecule::aromaticity_suspect() const {
  const auto ring = ring_bonds();
  const auto ring_atom = ring_atoms();
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].aromatic && !ring_atom[i]) return true;
  }
  for (std::size_t i = 0; i < bonds_.size(); ++i) {
    if (bonds_[i].order == BondOrder::Aromatic && !ring[i]) return true;
  }
  return false;
}

int valence_contribution(BondOrder order) {
  switch (order) {
    case BondOrder::Single: return 1;
    case BondOrder::Double: return 2;
    case BondOrder::Triple: return 3;
    case BondOrder::Aromatic: return 1;
  }
  return 1;
}

int implicit_hydrogens(const Molecule& mol, int atom) {
  const Atom& a = mol.atom(atom);
  const auto valences = default_valences(a.atomic_number);
  if (valences.empty()) return 0;
  int used = 0;
  for (const auto& inc : mol.neighbors(atom)) used += valence_contribution(mol.bond(inc.bond).order);
  if (a.aromatic) {
    // one valence unit is taken by the delocalized pi system
    return std::max(0, valences.front() - (used + 1));
  }
  for (int v : valences) {
    if (v >= used) return v - used;
  }
  return 0;
}

Molecule strip_atom_maps(Molecule mol) {
  for (auto& atom : mol.atoms()) atom.atom_map.reset();
  return mol;
}

}  // namespace txf::chem
