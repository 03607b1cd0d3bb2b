#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace txf::chem {

enum class BondOrder : std::uint8_t { Single = 1, Double = 2, Triple = 3, Aromatic = 4 };

/// Tetrahedral tag as written: '@' is anticlockwise, '@@' clockwise, looking
/// from the first neighbor in `Atom::stereo_neighbors`.
enum class Chirality : std::uint8_t { None, Anticlockwise, Clockwise };

/// Marks the implicit hydrogen slot in `Atom::stereo_neighbors`.
inline constexpr int kImplicitHydrogen = -1;

struct Atom {
  int atomic_number = 6;  // 0 is the '*' wildcard
  bool aromatic = false;
  int charge = 0;
  std::optional<int> isotope;
  /// Total attached hydrogens not present as explicit graph atoms.
  int hydrogens = 0;
  std::optional<int> atom_map;
  Chirality chirality = Chirality::None;
  /// Neighbor order the chirality tag refers to (atom indices or
  /// kImplicitHydrogen). Empty when chirality is None.
  std::vector<int> stereo_neighbors;

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Bond {
  int a = 0;
  int b = 0;
  BondOrder order = BondOrder::Single;

  int other(int atom) const { return atom == a ? b : a; }
  friend bool operator==(const Bond&, const Bond&) = default;
};

/// Cis/trans configuration of a double bond: `ref_a` is a neighbor of
/// bond.a, `ref_b` a neighbor of bond.b, and `cis` tells whether they sit on
/// the same side.
struct DoubleBondStereo {
  int bond = 0;
  int ref_a = 0;
  int ref_b = 0;
  bool cis = false;

  friend bool operator==(const DoubleBondStereo&, const DoubleBondStereo&) = default;
};

struct Incidence {
  int neighbor;
  int bond;
};

/// Attributed molecular graph.
class Molecule {
 public:
  int add_atom(Atom atom);
  /// Throws std::invalid_argument on self loops, bad indices, or a second bond
  /// between the same pair.
  int add_bond(int a, int b, BondOrder order);
  void add_double_bond_stereo(DoubleBondStereo stereo) { double_bond_stereo_.push_back(stereo); }

  std::size_t atom_count() const { return atoms_.size(); }
  std::size_t bond_count() const { return bonds_.size(); }
  bool empty() const { return atoms_.empty(); }

  const Atom& atom(int i) const { return atoms_[static_cast<std::size_t>(i)]; }
  Atom& atom(int i) { return atoms_[static_cast<std::size_t>(i)]; }
  std::span<const Atom> atoms() const { return atoms_; }
  std::span<Atom> atoms() { return atoms_; }
  const Bond& bond(int i) const { return bonds_[static_cast<std::size_t>(i)]; }
  std::span<const Bond> bonds() const { return bonds_; }
  std::span<const Incidence> neighbors(int atom) const { return adjacency_[static_cast<std::size_t>(atom)]; }
  int degree(int atom) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(atom)].size()); }
  std::span<const DoubleBondStereo> double_bond_stereo() const { return double_bond_stereo_; }

  /// Index of the bond joining a and b, if any.
  std::optional<int> bond_between(int a, int b) const;

  /// Bonds lying on at least one cycle.
  std::vector<bool> ring_bonds() const;
  std::vector<bool> ring_atoms() const;
  /// Connected components, each listed in ascending atom order.
  std::vector<std::vector<int>> components() const;

  /// Copy restricted to `keep` (ascending or not); atoms are renumbered in
  /// the given order. Hydrogens of kept atoms absorb removed bonds so
  /// valences stay satisfied. Tetrahedral tags survive only on atoms that
  /// keep all their neighbors; cis/trans marks only while both references
  /// remain.
  Molecule subgraph(std::span<const int> keep) const;

  /// Aromatic atoms or bonds outside any ring. Aromaticity is taken as
  /// written, so such molecules are flagged rather than repaired.
  bool aromaticity_suspect() const;

 private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::vector<DoubleBondStereo> double_bond_stereo_;
};

/// Hydrogen count an unbracketed atom with this bonding would receive.
int implicit_hydrogens(const Molecule& mol, int atom);

/// Bond order contribution to valence (aromatic counts as 1).
int valence_contribution(BondOrder order);

/// Same graph with every atom map cleared.
Molecule strip_atom_maps(Molecule mol);

}  // namespace txf::chem
