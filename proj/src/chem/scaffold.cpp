#include "txf/chem/scaffold.hpp"

#include <vector>

#include "txf/chem/smiles.hpp"

namespace txf::chem {

std::optional<Molecule> murcko_scaffold(const Molecule& mol) {
  const auto in_ring = mol.ring_atoms();
  const std::size_t n = mol.atom_count();
  bool any_ring = false;
  for (bool r : in_ring) any_ring = any_ring || r;
  if (!any_ring) return std::nullopt;

  std::vector<int> degree(n);
  std::vector<bool> removed(n, false);
  std::vector<int> stack;
  for (std::size_t i = 0; i < n; ++i) {
    degree[i] = mol.degree(static_cast<int>(i));
    if (!in_ring[i] && degree[i] <= 1) stack.push_back(static_cast<int>(i));
  }
  while (!stack.empty()) {
    const int atom = stack.back();
    stack.pop_back();
    if (removed[static_cast<std::size_t>(atom)]) continue;
    removed[static_cast<std::size_t>(atom)] = true;
    for (const auto& inc : mol.neighbors(atom)) {
      const auto nb = static_cast<std::size_t>(inc.neighbor);
      if (removed[nb]) continue;
      if (--degree[nb] <= 1 && !in_ring[nb]) stack.push_back(inc.neighbor);
    }
  }

  std::vector<int> keep;
  for (std::size_t i = 0; i < n; ++i) {
    if (!removed[i]) keep.push_back(static_cast<int>(i));
  }
  return mol.subgraph(keep);
}

std::string scaffold_key(const Molecule& mol) {
  auto scaffold = murcko_scaffold(mol);
  return scaffold ? write_canonical(*scaffold) : std::string();
}

}  // namespace txf::chem
