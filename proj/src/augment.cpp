//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltext/augment/augment.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "moltext/core/error.hpp"

namespace moltext::augment {

using molgraph::Atom;
using molgraph::Bond;
using molgraph::BondOrder;
using molgraph::Element;

namespace {

/// Carbon atoms with at least one implicit hydrogen.
std::vector<std::uint32_t> addition_sites(const MolecularGraph& graph) {
  std::vector<std::uint32_t> sites;
  for (std::size_t i = 0; i < graph.atoms.size(); ++i) {
    const Atom& atom = graph.atoms[i];
    if (atom.element == Element::C && atom.implicit_h >= 1) {
      sites.push_back(static_cast<std::uint32_t>(i));
    }
  }
  return sites;
}

/// Attaches a new single-bonded atom at a sampled eligible carbon, trading
/// one implicit hydrogen of the site for the bond.
MolecularGraph attach_group(const MolecularGraph& graph, core::Rng& rng, Element element,
                            int group_implicit_h) {
  const auto sites = addition_sites(graph);
  if (sites.empty()) return graph;
  const std::uint32_t site = sites[rng.next_below(sites.size())];

  MolecularGraph result = graph;
  result.atoms[site].implicit_h -= 1;
  Atom added;
  added.element = element;
  added.implicit_h = group_implicit_h;
  const auto added_index = static_cast<std::uint32_t>(result.atoms.size());
  result.atoms.push_back(added);
  result.bonds.push_back(Bond{site, added_index, BondOrder::Single});
  return result;
}

/// Terminal groups removable by the reverse reactions: a non-aromatic,
/// uncharged atom of `element` with `group_implicit_h` hydrogens and exactly
/// one incident bond, which must be single.
std::vector<std::uint32_t> removal_sites(const MolecularGraph& graph, Element element,
                                         int group_implicit_h) {
  std::vector<int> degree(graph.atom_count(), 0);
  std::vector<bool> single_only(graph.atom_count(), true);
  for (const Bond& bond : graph.bonds) {
    ++degree[bond.a];
    ++degree[bond.b];
    if (bond.order != BondOrder::Single) {
      single_only[bond.a] = false;
      single_only[bond.b] = false;
    }
  }
  std::vector<std::uint32_t> sites;
  for (std::size_t i = 0; i < graph.atoms.size(); ++i) {
    const Atom& atom = graph.atoms[i];
    if (atom.element == element && !atom.aromatic && atom.formal_charge == 0 &&
        atom.implicit_h == group_implicit_h && degree[i] == 1 && single_only[i]) {
      sites.push_back(static_cast<std::uint32_t>(i));
    }
  }
  return sites;
}

MolecularGraph detach_group(const MolecularGraph& graph, core::Rng& rng, Element element,
                            int group_implicit_h) {
  const auto sites = removal_sites(graph, element, group_implicit_h);
  if (sites.empty()) return graph;
  const std::uint32_t victim = sites[rng.next_below(sites.size())];

  MolecularGraph result;
  result.name = graph.name;
  std::vector<std::uint32_t> remap(graph.atom_count());
  for (std::size_t i = 0; i < graph.atoms.size(); ++i) {
    if (i == victim) continue;
    remap[i] = static_cast<std::uint32_t>(result.atoms.size());
    result.atoms.push_back(graph.atoms[i]);
  }
  for (const Bond& bond : graph.bonds) {
    if (bond.a == victim || bond.b == victim) {
      const std::uint32_t neighbor = bond.a == victim ? bond.b : bond.a;
      result.atoms[remap[neighbor]].implicit_h += 1;
      continue;
    }
    result.bonds.push_back(Bond{remap[bond.a], remap[bond.b], bond.order});
  }
  return result;
}

MolecularGraph keep_atoms(const MolecularGraph& graph, const std::vector<bool>& keep) {
  MolecularGraph result;
  result.name = graph.name;
  std::vector<std::uint32_t> remap(graph.atom_count());
  for (std::size_t i = 0; i < graph.atoms.size(); ++i) {
    if (!keep[i]) continue;
    remap[i] = static_cast<std::uint32_t>(result.atoms.size());
    result.atoms.push_back(graph.atoms[i]);
  }
  for (const Bond& bond : graph.bonds) {
    if (keep[bond.a] && keep[bond.b]) {
      result.bonds.push_back(Bond{remap[bond.a], remap[bond.b], bond.order});
    }
  }
  return result;
}

}  // namespace

PolicyKind policy_from_name(const std::string& name) {
  if (name == "methylate") return PolicyKind::Methylate;
  if (name == "demethylate") return PolicyKind::Demethylate;
  if (name == "aminate") return PolicyKind::Aminate;
  if (name == "deaminate") return PolicyKind::Deaminate;
  if (name == "drop_nodes") return PolicyKind::DropNodes;
  if (name == "subgraph") return PolicyKind::Subgraph;
  if (name == "identity") return PolicyKind::Identity;
  if (name == "random_principled") return PolicyKind::RandomPrincipled;
  if (name == "random_graphcl") return PolicyKind::RandomGraphCl;
  throw UsageError("unknown augmentation policy: " + name);
}

const char* policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Methylate: return "methylate";
    case PolicyKind::Demethylate: return "demethylate";
    case PolicyKind::Aminate: return "aminate";
    case PolicyKind::Deaminate: return "deaminate";
    case PolicyKind::DropNodes: return "drop_nodes";
    case PolicyKind::Subgraph: return "subgraph";
    case PolicyKind::Identity: return "identity";
    case PolicyKind::RandomPrincipled: return "random_principled";
    case PolicyKind::RandomGraphCl: return "random_graphcl";
  }
  return "identity";
}

MolecularGraph methylate(const MolecularGraph& graph, core::Rng& rng) {
  return attach_group(graph, rng, Element::C, 3);
}

MolecularGraph aminate(const MolecularGraph& graph, core::Rng& rng) {
  return attach_group(graph, rng, Element::N, 2);
}

MolecularGraph demethylate(const MolecularGraph& graph, core::Rng& rng) {
  return detach_group(graph, rng, Element::C, 3);
}

MolecularGraph deaminate(const MolecularGraph& graph, core::Rng& rng) {
  return detach_group(graph, rng, Element::N, 2);
}

MolecularGraph drop_nodes(const MolecularGraph& graph, double ratio, core::Rng& rng) {
  if (ratio < 0.0 || ratio >= 1.0) throw UsageError("drop_nodes ratio must be in [0, 1)");
  if (graph.atoms.empty()) throw DataError("drop_nodes: empty graph");
  const std::size_t n = graph.atom_count();
  std::size_t to_drop = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n)));
  if (to_drop >= n) to_drop = n - 1;  // at least one atom survives
  if (to_drop == 0) return graph;

  std::vector<std::uint32_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
  rng.shuffle(order);
  std::vector<bool> keep(n, true);
  for (std::size_t i = 0; i < to_drop; ++i) keep[order[i]] = false;
  return keep_atoms(graph, keep);
}

MolecularGraph subgraph(const MolecularGraph& graph, double ratio, core::Rng& rng) {
  if (ratio <= 0.0 || ratio > 1.0) throw UsageError("subgraph ratio must be in (0, 1]");
  if (graph.atoms.empty()) throw DataError("subgraph: empty graph");
  const std::size_t n = graph.atom_count();
  const auto target =
      static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(n)));

  std::vector<std::vector<std::uint32_t>> adjacency(n);
  for (const Bond& bond : graph.bonds) {
    adjacency[bond.a].push_back(bond.b);
    adjacency[bond.b].push_back(bond.a);
  }

  std::uint32_t current = static_cast<std::uint32_t>(rng.next_below(n));
  std::vector<bool> keep(n, false);
  keep[current] = true;
  std::size_t kept = 1;
  std::size_t stalled = 0;
  while (kept < target && stalled < n) {
    const auto& nbrs = adjacency[current];
    if (nbrs.empty()) break;  // isolated seed: walk confined to it
    current = nbrs[rng.next_below(nbrs.size())];
    if (keep[current]) {
      ++stalled;
    } else {
      keep[current] = true;
      ++kept;
      stalled = 0;
    }
  }
  return keep_atoms(graph, keep);
}

MolecularGraph apply_policy(const MolecularGraph& graph, const AugmentationPolicy& policy,
                            core::Rng& rng) {
  switch (policy.kind) {
    case PolicyKind::Methylate: return methylate(graph, rng);
    case PolicyKind::Demethylate: return demethylate(graph, rng);
    case PolicyKind::Aminate: return aminate(graph, rng);
    case PolicyKind::Deaminate: return deaminate(graph, rng);
    case PolicyKind::DropNodes: return drop_nodes(graph, policy.ratio, rng);
    case PolicyKind::Subgraph: return subgraph(graph, policy.ratio, rng);
    case PolicyKind::Identity: return graph;
    case PolicyKind::RandomPrincipled: {
      switch (rng.next_below(4)) {
        case 0: return methylate(graph, rng);
        case 1: return demethylate(graph, rng);
        case 2: return aminate(graph, rng);
        default: return deaminate(graph, rng);
      }
    }
    case PolicyKind::RandomGraphCl: {
      if (rng.next_below(2) == 0) return drop_nodes(graph, policy.ratio, rng);
      return subgraph(graph, policy.ratio, rng);
    }
  }
  return graph;
}

std::pair<MolecularGraph, MolecularGraph> augment_pair(const MolecularGraph& graph,
                                                       const AugmentationPolicy& policy,
                                                       core::Rng& rng) {
  MolecularGraph first = apply_policy(graph, policy, rng);
  MolecularGraph second = apply_policy(graph, policy, rng);
  return {std::move(first), std::move(second)};
}

}  // namespace moltext::augment
