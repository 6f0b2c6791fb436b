//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "moltext/core/matrix.hpp"

namespace moltext::molgraph {

/// Supported elements. Parsing rejects anything outside this set.
enum class Element : std::uint8_t { B, C, N, O, P, S, F, Cl, Br, I, H };

constexpr int kElementCount = 11;

/// Symbol as written in SMILES ("Cl", "Br", ...).
const char* element_symbol(Element e);

/// Atomic number (B=5, C=6, ...).
int atomic_number(Element e);

/// Permitted valences for a neutral atom of this element, ascending
/// (C: {4}; P: {3,5}; S: {2,4,6}; ...).
const std::vector<int>& default_valences(Element e);

/// True for elements with an aromatic lowercase form (b, c, n, o, p, s).
bool can_be_aromatic(Element e);

enum class BondOrder : std::uint8_t { Single = 1, Double = 2, Triple = 3, Aromatic = 4 };

/// Valence contribution of one bond: 1, 2, 3, or 1.5.
double bond_order_value(BondOrder order);

struct Atom {
  Element element = Element::C;
  bool aromatic = false;
  int formal_charge = 0;
  int implicit_h = 0;
};

struct Bond {
  std::uint32_t a = 0;  // lower atom index
  std::uint32_t b = 0;  // higher atom index
  BondOrder order = BondOrder::Single;
};

struct MolecularGraph {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;  // simple undirected graph: one bond per atom pair
  std::string name;

  std::size_t atom_count() const { return atoms.size(); }
  std::size_t bond_count() const { return bonds.size(); }

  /// Sum of incident bond order values for one atom, with the aromatic
  /// contribution rounded half-down (two aromatic bonds count 3, three
  /// count 4).
  double bonded_valence(std::size_t atom_index) const;

  /// Indices of atoms bonded to atom_index, in bond-list order.
  std::vector<std::uint32_t> neighbors(std::size_t atom_index) const;

  /// Finds the bond joining u and v, if any.
  std::optional<std::size_t> find_bond(std::uint32_t u, std::uint32_t v) const;

  /// Total implicit hydrogen count over all atoms.
  int total_implicit_h() const;
};

struct ValenceViolation {
  std::uint32_t atom_index = 0;
  double observed = 0.0;          // implicit_h + bonded valence (rounded aromatic total)
  std::vector<int> permitted;     // allowed totals for this element and charge
};

struct ValidationReport {
  std::vector<ValenceViolation> violations;
  bool ok() const { return violations.empty(); }
  /// Renders as line-oriented text: `atom <idx>: valence <observed> not in {<permitted>}`.
  std::string to_string() const;
};

/// Checks every atom's valence: implicit_h + rounded bonded valence must be a
/// permitted total for the element, where charge shifts each permitted
/// valence by its sign (N+ allows 4). Never throws; reports all violations.
ValidationReport validate(const MolecularGraph& graph);

/// Permitted valence totals for an element with a given formal charge.
std::vector<int> permitted_valences(Element e, int formal_charge);

/// Numeric node/edge encoding consumed by the graph encoder.
struct GraphFeatures {
  /// One row per atom: element one-hot (kElementCount), implicit_h,
  /// aromatic flag, formal charge.
  core::Matrix node_features;
  /// Each bond emitted in both directions.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_list;
  /// Per directed edge, the bond order value (1, 2, 3, 1.5).
  std::vector<double> edge_orders;
};

constexpr int kNodeFeatureDim = kElementCount + 3;

/// Deterministic feature encoding; atom order follows the graph's atom list.
GraphFeatures to_features(const MolecularGraph& graph);

}  // namespace moltext::molgraph
