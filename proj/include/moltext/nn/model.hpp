//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "moltext/molgraph/graph.hpp"
#include "moltext/nn/tape.hpp"

namespace moltext::nn {

struct GinConfig {
  int num_layers = 3;
  int hidden_dim = 64;
  bool eps_learnable = false;  // fixed eps = 0 otherwise
  enum class Readout { Sum, Mean } readout = Readout::Mean;
  int joint_dim = 32;
};

/// Several molecular graphs packed into one node-feature matrix with shared
/// neighbor lists and a node-to-graph segment map.
struct BatchedGraphs {
  core::Matrix node_features;
  core::Csr neighbors;
  std::vector<std::uint32_t> segments;  // non-decreasing
  std::size_t n_graphs = 0;

  static BatchedGraphs build(std::span<const molgraph::GraphFeatures> graphs);
};

// Parameter naming:
//   gin.layer<k>.mlp1 / gin.layer<k>.mlp2 (+ gin.layer<k>.eps when learnable)
//   proj_graph.l1 / proj_graph.l2
//   proj_text.l1 / proj_text.l2
//   clf.l1 / clf.l2

void init_encoder_params(ParameterStore& store, const GinConfig& config, int node_feature_dim,
                         core::Rng& rng);
void init_text_params(ParameterStore& store, const GinConfig& config, int text_dim,
                      core::Rng& rng);
void init_classifier_params(ParameterStore& store, const GinConfig& config, int n_tasks,
                            core::Rng& rng);

/// GIN message passing and readout: per layer,
/// h <- MLP((1+eps) h + sum of neighbors), ReLU between layers; then
/// sum/mean pooling per graph. Returns the [n_graphs, hidden_dim] readout.
Tape::Id gin_graph_hidden(Tape& tape, const ParameterStore& store, const GinConfig& config,
                          const BatchedGraphs& batch);

/// Projection heads: one hidden layer with ReLU, output rows L2-normalized.
Tape::Id project_graph(Tape& tape, const ParameterStore& store, Tape::Id graph_hidden);
Tape::Id project_text(Tape& tape, const ParameterStore& store, Tape::Id text_embeddings);

/// Classifier head on the joint graph embedding: hidden ReLU layer, one
/// logit per task (no sigmoid; pair with bce_masked or sigmoid()).
Tape::Id classifier_logits(Tape& tape, const ParameterStore& store, Tape::Id joint_embedding);

struct CheckpointMeta {
  std::map<std::string, double> entries;

  double get(const std::string& key, double fallback) const {
    const auto it = entries.find(key);
    return it == entries.end() ? fallback : it->second;
  }
};

/// Checkpoint file (MCKP, little-endian): magic "MCKP", u32 version, then
/// per parameter a u32 name length, the UTF-8 name, u32 rank (1 for row
/// vectors, 2 otherwise), u32 dims, and the f64 payload. Metadata travels as
/// 1x1 parameters under the reserved "meta/" prefix and is split back out on
/// load.
void save_checkpoint(const std::string& path, const ParameterStore& store,
                     const CheckpointMeta& meta);
std::pair<ParameterStore, CheckpointMeta> load_checkpoint(const std::string& path);

/// Meta describing the model layout, written next to the weights so that
/// fine-tuning and evaluation can rebuild the encoder without the original
/// run configuration.
CheckpointMeta encoder_meta(const GinConfig& config, int node_feature_dim, int text_dim);
GinConfig gin_config_from_meta(const CheckpointMeta& meta);

}  // namespace moltext::nn
