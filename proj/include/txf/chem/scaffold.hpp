#pragma once

#include <optional>
#include <string>

#include "txf/chem/molecule.hpp"

namespace txf::chem {

/// Bemis-Murcko framework: repeatedly removes degree-1 atoms that are not in
/// a ring until none remain. Atoms attached to the framework by a double
/// bond are pruned like any other side chain. Returns nullopt for acyclic
/// molecules.
std::optional<Molecule> murcko_scaffold(const Molecule& mol);

/// Canonical SMILES of the scaffold, or "" when acyclic.
std::string scaffold_key(const Molecule& mol);

}  // namespace txf::chem
