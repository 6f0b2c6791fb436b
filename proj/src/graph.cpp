//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltext/molgraph/graph.hpp"

#include <array>
#include <sstream>

namespace moltext::molgraph {

namespace {

struct ElementInfo {
  const char* symbol;
  int atomic_number;
  std::vector<int> valences;
  bool aromatic_form;
};

const std::array<ElementInfo, kElementCount>& element_table() {
  static const std::array<ElementInfo, kElementCount> table = {{
      {"B", 5, {3}, true},
      {"C", 6, {4}, true},
      {"N", 7, {3}, true},
      {"O", 8, {2}, true},
      {"P", 15, {3, 5}, true},
      {"S", 16, {2, 4, 6}, true},
      {"F", 9, {1}, false},
      {"Cl", 17, {1}, false},
      {"Br", 35, {1}, false},
      {"I", 53, {1}, false},
      {"H", 1, {1}, false},
  }};
  return table;
}

}  // namespace

const char* element_symbol(Element e) {
  return element_table()[static_cast<std::size_t>(e)].symbol;
}

int atomic_number(Element e) {
  return element_table()[static_cast<std::size_t>(e)].atomic_number;
}

const std::vector<int>& default_valences(Element e) {
  return element_table()[static_cast<std::size_t>(e)].valences;
}

bool can_be_aromatic(Element e) {
  return element_table()[static_cast<std::size_t>(e)].aromatic_form;
}

double bond_order_value(BondOrder order) {
  switch (order) {
    case BondOrder::Single: return 1.0;
    case BondOrder::Double: return 2.0;
    case BondOrder::Triple: return 3.0;
    case BondOrder::Aromatic: return 1.5;
  }
  return 1.0;
}

double MolecularGraph::bonded_valence(std::size_t atom_index) const {
  int plain = 0;
  int aromatic_bonds = 0;
  for (const Bond& bond : bonds) {
    if (bond.a != atom_index && bond.b != atom_index) continue;
    if (bond.order == BondOrder::Aromatic) {
      ++aromatic_bonds;
    } else {
      plain += static_cast<int>(bond_order_value(bond.order));
    }
  }
  // Aromatic contribution rounds half-down: 2 bonds -> 3, 3 bonds -> 4.
  return plain + (3 * aromatic_bonds) / 2;
}

std::vector<std::uint32_t> MolecularGraph::neighbors(std::size_t atom_index) const {
  std::vector<std::uint32_t> result;
  for (const Bond& bond : bonds) {
    if (bond.a == atom_index) result.push_back(bond.b);
    if (bond.b == atom_index) result.push_back(bond.a);
  }
  return result;
}

std::optional<std::size_t> MolecularGraph::find_bond(std::uint32_t u, std::uint32_t v) const {
  for (std::size_t i = 0; i < bonds.size(); ++i) {
    const Bond& bond = bonds[i];
    if ((bond.a == u && bond.b == v) || (bond.a == v && bond.b == u)) return i;
  }
  return std::nullopt;
}

int MolecularGraph::total_implicit_h() const {
  int total = 0;
  for (const Atom& atom : atoms) total += atom.implicit_h;
  return total;
}

std::vector<int> permitted_valences(Element e, int formal_charge) {
  // Charge shifts each permitted valence by the signed charge (N+ -> 4).
  std::vector<int> result;
  for (int v : default_valences(e)) {
    const int shifted = v + formal_charge;
    if (shifted >= 0) result.push_back(shifted);
  }
  return result;
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const ValenceViolation& v : violations) {
    out << "atom " << v.atom_index << ": valence " << v.observed << " not in {";
    for (std::size_t i = 0; i < v.permitted.size(); ++i) {
      if (i > 0) out << ", ";
      out << v.permitted[i];
    }
    out << "}\n";
  }
  return out.str();
}

ValidationReport validate(const MolecularGraph& graph) {
  ValidationReport report;
  for (std::size_t i = 0; i < graph.atoms.size(); ++i) {
    const Atom& atom = graph.atoms[i];
    const double observed = atom.implicit_h + graph.bonded_valence(i);
    const auto permitted = permitted_valences(atom.element, atom.formal_charge);
    bool ok = false;
    for (int p : permitted) {
      if (observed == static_cast<double>(p)) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      report.violations.push_back(
          {static_cast<std::uint32_t>(i), observed, permitted});
    }
  }
  return report;
}

GraphFeatures to_features(const MolecularGraph& graph) {
  GraphFeatures features;
  features.node_features = core::Matrix(graph.atom_count(), kNodeFeatureDim);
  for (std::size_t i = 0; i < graph.atoms.size(); ++i) {
    const Atom& atom = graph.atoms[i];
    features.node_features(i, static_cast<std::size_t>(atom.element)) = 1.0;
    features.node_features(i, kElementCount + 0) = atom.implicit_h;
    features.node_features(i, kElementCount + 1) = atom.aromatic ? 1.0 : 0.0;
    features.node_features(i, kElementCount + 2) = atom.formal_charge;
  }
  features.edge_list.reserve(2 * graph.bonds.size());
  features.edge_orders.reserve(2 * graph.bonds.size());
  for (const Bond& bond : graph.bonds) {
    features.edge_list.emplace_back(bond.a, bond.b);
    features.edge_list.emplace_back(bond.b, bond.a);
    const double order = bond_order_value(bond.order);
    features.edge_orders.push_back(order);
    features.edge_orders.push_back(order);
  }
  return features;
}

}  // namespace moltext::molgraph
