//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "moltext/core/error.hpp"
#include "moltext/molgraph/graph.hpp"

namespace moltext::molgraph {

/// Parse or write failure with the byte offset of the offending input.
class SmilesError : public DataError {
public:
  SmilesError(const std::string& message, std::size_t position)
      : DataError(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// Parses a SMILES string into a validated molecular graph.
///
/// Supported grammar: organic-subset bare atoms (B C N O P S F Cl Br I and
/// aromatic b c n o p s), bracket atoms with explicit H count and charge,
/// branches, ring closures (digits and %nn), bond symbols - = # :, and the
/// dot separator for disconnected fragments. Stereo markers and isotopes are
/// rejected. Implicit hydrogens on bare atoms are filled to the smallest
/// permitted valence; bracket atoms carry exactly their written H count.
MolecularGraph parse_smiles(std::string_view text);

/// Writes a (non-canonical) SMILES string that re-parses to an isomorphic
/// graph. Disconnected components are joined with '.'.
std::string write_smiles(const MolecularGraph& graph);

struct SmilesFileRecord {
  std::string smiles;
  std::string name;  // optional tab-separated field
  std::size_t line_number = 0;
};

/// Reads a SMILES file: one molecule per line, optional tab-separated name.
/// Blank lines are skipped.
std::vector<SmilesFileRecord> read_smiles_file(const std::string& path);

}  // namespace moltext::molgraph
