#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace txf::chem {

/// Atomic number for a capitalized element symbol ("C", "Cl"); 0 for "*".
std::optional<int> atomic_number(std::string_view symbol);
std::string_view element_symbol(int atomic_number);

/// Elements that may be written without brackets.
bool in_organic_subset(int atomic_number);
/// Elements that may be written lowercase (aromatic).
bool aromatic_capable(int atomic_number);

/// Ascending allowed valences of an organic-subset element; empty otherwise.
std::span<const int> default_valences(int atomic_number);

}  // namespace txf::chem
