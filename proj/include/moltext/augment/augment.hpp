//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>
#include <utility>

#include "moltext/core/rng.hpp"
#include "moltext/molgraph/graph.hpp"

namespace moltext::augment {

using molgraph::MolecularGraph;

enum class PolicyKind {
  Methylate,
  Demethylate,
  Aminate,
  Deaminate,
  DropNodes,
  Subgraph,
  Identity,
  RandomPrincipled,  // one of the four reaction augmentations per view
  RandomGraphCl,     // drop_nodes or subgraph per view
};

struct AugmentationPolicy {
  PolicyKind kind = PolicyKind::Identity;
  double ratio = 0.2;  // drop_nodes / subgraph only
};

/// Parses a policy name as used by the CLI (e.g. "methylate",
/// "random_principled"). Throws UsageError on unknown names.
PolicyKind policy_from_name(const std::string& name);
const char* policy_name(PolicyKind kind);

// Reaction-inspired augmentations. Eligible sites are carbon atoms with at
// least one implicit hydrogen; one site is sampled uniformly. When no site
// exists the input is returned unchanged. Outputs always pass validate().

/// Attaches a CH3 group to a sampled eligible carbon.
MolecularGraph methylate(const MolecularGraph& graph, core::Rng& rng);

/// Removes a sampled terminal CH3 group (non-aromatic, uncharged carbon with
/// implicit_h = 3 and exactly one single bond); its neighbor regains one
/// implicit hydrogen.
MolecularGraph demethylate(const MolecularGraph& graph, core::Rng& rng);

/// Attaches an NH2 group to a sampled eligible carbon.
MolecularGraph aminate(const MolecularGraph& graph, core::Rng& rng);

/// Removes a sampled terminal NH2 group (non-aromatic, uncharged nitrogen
/// with implicit_h = 2 and exactly one single bond).
MolecularGraph deaminate(const MolecularGraph& graph, core::Rng& rng);

// GraphCL-style baselines. No chemical re-validation: the results may not
// make physical sense and are used as-is by the graph encoder.

/// Removes floor(ratio * n) uniformly sampled atoms and their bonds, clamped
/// so at least one atom survives. Requires 0 <= ratio < 1.
MolecularGraph drop_nodes(const MolecularGraph& graph, double ratio, core::Rng& rng);

/// Keeps the atoms visited by a random walk from a uniform start node until
/// ceil(ratio * n) distinct atoms are seen or the walk stalls for n
/// consecutive steps; induced bonds are kept. Requires 0 < ratio <= 1.
MolecularGraph subgraph(const MolecularGraph& graph, double ratio, core::Rng& rng);

/// Applies the policy once (the per-view action used by augment_pair and the
/// CLI augment subcommand).
MolecularGraph apply_policy(const MolecularGraph& graph, const AugmentationPolicy& policy,
                            core::Rng& rng);

/// Two independently sampled augmented views of the same molecule.
std::pair<MolecularGraph, MolecularGraph> augment_pair(const MolecularGraph& graph,
                                                       const AugmentationPolicy& policy,
                                                       core::Rng& rng);

}  // namespace moltext::augment
