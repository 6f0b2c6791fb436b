//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltext/nn/model.hpp"

#include <cstring>
#include <fstream>

#include "moltext/core/binio.hpp"
#include "moltext/core/error.hpp"

namespace moltext::nn {

using core::Matrix;

BatchedGraphs BatchedGraphs::build(std::span<const molgraph::GraphFeatures> graphs) {
  BatchedGraphs batch;
  batch.n_graphs = graphs.size();
  std::size_t total_nodes = 0;
  std::size_t total_edges = 0;
  for (const auto& g : graphs) {
    total_nodes += g.node_features.rows();
    total_edges += g.edge_list.size();
  }
  const std::size_t feature_dim = graphs.empty() ? 0 : graphs[0].node_features.cols();
  batch.node_features = Matrix(total_nodes, feature_dim);
  batch.segments.resize(total_nodes);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(total_edges);
  std::size_t node_offset = 0;
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    const auto& features = graphs[g];
    const std::size_t n = features.node_features.rows();
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t c = 0; c < feature_dim; ++c) {
        batch.node_features(node_offset + v, c) = features.node_features(v, c);
      }
      batch.segments[node_offset + v] = static_cast<std::uint32_t>(g);
    }
    for (const auto& [src, dst] : features.edge_list) {
      edges.emplace_back(static_cast<std::uint32_t>(src + node_offset),
                         static_cast<std::uint32_t>(dst + node_offset));
    }
    node_offset += n;
  }
  batch.neighbors = core::Csr::from_edges(total_nodes, edges);
  return batch;
}

void init_encoder_params(ParameterStore& store, const GinConfig& config, int node_feature_dim,
                         core::Rng& rng) {
  int in_dim = node_feature_dim;
  for (int layer = 0; layer < config.num_layers; ++layer) {
    const std::string prefix = "gin.layer" + std::to_string(layer);
    init_linear(store, prefix + ".mlp1", in_dim, config.hidden_dim, rng);
    init_linear(store, prefix + ".mlp2", config.hidden_dim, config.hidden_dim, rng);
    if (config.eps_learnable) store.create(prefix + ".eps", 1, 1);
    in_dim = config.hidden_dim;
  }
  init_linear(store, "proj_graph.l1", config.hidden_dim, config.hidden_dim, rng);
  init_linear(store, "proj_graph.l2", config.hidden_dim, config.joint_dim, rng);
}

void init_text_params(ParameterStore& store, const GinConfig& config, int text_dim,
                      core::Rng& rng) {
  init_linear(store, "proj_text.l1", text_dim, config.hidden_dim, rng);
  init_linear(store, "proj_text.l2", config.hidden_dim, config.joint_dim, rng);
}

void init_classifier_params(ParameterStore& store, const GinConfig& config, int n_tasks,
                            core::Rng& rng) {
  init_linear(store, "clf.l1", config.joint_dim, config.hidden_dim, rng);
  init_linear(store, "clf.l2", config.hidden_dim, n_tasks, rng);
}

namespace {

Tape::Id linear(Tape& tape, const ParameterStore& store, const std::string& prefix,
                Tape::Id input) {
  const Tape::Id w = tape.param(store, prefix + ".w");
  const Tape::Id b = tape.param(store, prefix + ".b");
  return tape.add_rowvec(tape.matmul(input, w), b);
}

}  // namespace

Tape::Id gin_graph_hidden(Tape& tape, const ParameterStore& store, const GinConfig& config,
                          const BatchedGraphs& batch) {
  if (batch.node_features.cols() == 0 || batch.n_graphs == 0) {
    throw DataError("gin_graph_hidden: empty batch");
  }
  Tape::Id h = tape.constant(batch.node_features);
  for (int layer = 0; layer < config.num_layers; ++layer) {
    const std::string prefix = "gin.layer" + std::to_string(layer);
    std::optional<Tape::Id> eps_param;
    if (config.eps_learnable) eps_param = tape.param(store, prefix + ".eps");
    const Tape::Id aggregated = tape.neighbor_aggregate(h, batch.neighbors, 0.0, eps_param);
    Tape::Id out = linear(tape, store, prefix + ".mlp2",
                          tape.relu(linear(tape, store, prefix + ".mlp1", aggregated)));
    if (layer + 1 < config.num_layers) out = tape.relu(out);
    h = out;
  }
  return tape.segment_reduce(h, batch.segments, batch.n_graphs,
                             config.readout == GinConfig::Readout::Mean);
}

Tape::Id project_graph(Tape& tape, const ParameterStore& store, Tape::Id graph_hidden) {
  const Tape::Id hidden = tape.relu(linear(tape, store, "proj_graph.l1", graph_hidden));
  return tape.row_l2_normalize(linear(tape, store, "proj_graph.l2", hidden));
}

Tape::Id project_text(Tape& tape, const ParameterStore& store, Tape::Id text_embeddings) {
  const Tape::Id hidden = tape.relu(linear(tape, store, "proj_text.l1", text_embeddings));
  return tape.row_l2_normalize(linear(tape, store, "proj_text.l2", hidden));
}

Tape::Id classifier_logits(Tape& tape, const ParameterStore& store, Tape::Id joint_embedding) {
  const Tape::Id hidden = tape.relu(linear(tape, store, "clf.l1", joint_embedding));
  return linear(tape, store, "clf.l2", hidden);
}

namespace {
constexpr std::uint32_t kCheckpointVersion = 1;
constexpr const char* kMetaPrefix = "meta/";
}  // namespace

void save_checkpoint(const std::string& path, const ParameterStore& store,
                     const CheckpointMeta& meta) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write checkpoint: " + path);
  core::write_magic(out, "MCKP");
  core::write_u32(out, kCheckpointVersion);

  const auto write_param = [&out](const std::string& name, const Matrix& value) {
    core::write_u32(out, static_cast<std::uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    if (value.rows() == 1) {
      core::write_u32(out, 1);
      core::write_u32(out, static_cast<std::uint32_t>(value.cols()));
    } else {
      core::write_u32(out, 2);
      core::write_u32(out, static_cast<std::uint32_t>(value.rows()));
      core::write_u32(out, static_cast<std::uint32_t>(value.cols()));
    }
    for (std::size_t i = 0; i < value.size(); ++i) core::write_f64(out, value.data()[i]);
  };

  for (const auto& [name, value] : store.values()) {
    write_param(name, value);
  }
  for (const auto& [key, value] : meta.entries) {
    Matrix cell(1, 1);
    cell(0, 0) = value;
    write_param(kMetaPrefix + key, cell);
  }
  if (!out) throw DataError("write failed: " + path);
}

std::pair<ParameterStore, CheckpointMeta> load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint: " + path);
  core::expect_magic(in, "MCKP", "MCKP checkpoint");
  const std::uint32_t version = core::read_u32(in);
  if (version != kCheckpointVersion) {
    throw DataError(path + ": unsupported checkpoint version " + std::to_string(version));
  }

  ParameterStore store;
  CheckpointMeta meta;
  while (in.peek() != std::char_traits<char>::eof()) {
    const std::uint32_t name_length = core::read_u32(in);
    std::string name(name_length, '\0');
    in.read(name.data(), name_length);
    if (!in) throw DataError(path + ": truncated parameter name");
    const std::uint32_t rank = core::read_u32(in);
    if (rank != 1 && rank != 2) throw DataError(path + ": unsupported rank");
    std::size_t rows = 1, cols = 0;
    if (rank == 1) {
      cols = core::read_u32(in);
    } else {
      rows = core::read_u32(in);
      cols = core::read_u32(in);
    }
    Matrix value(rows, cols);
    for (std::size_t i = 0; i < value.size(); ++i) value.data()[i] = core::read_f64(in);

    if (name.rfind(kMetaPrefix, 0) == 0) {
      if (value.size() != 1) throw DataError(path + ": meta entry must be a single value");
      meta.entries[name.substr(std::strlen(kMetaPrefix))] = value(0, 0);
    } else {
      store.create(name, rows, cols);
      store.value(name) = value;
    }
  }
  return {std::move(store), std::move(meta)};
}

CheckpointMeta encoder_meta(const GinConfig& config, int node_feature_dim, int text_dim) {
  CheckpointMeta meta;
  meta.entries["gin.num_layers"] = config.num_layers;
  meta.entries["gin.hidden_dim"] = config.hidden_dim;
  meta.entries["gin.eps_learnable"] = config.eps_learnable ? 1.0 : 0.0;
  meta.entries["gin.readout_mean"] = config.readout == GinConfig::Readout::Mean ? 1.0 : 0.0;
  meta.entries["gin.joint_dim"] = config.joint_dim;
  meta.entries["node_feature_dim"] = node_feature_dim;
  meta.entries["text_dim"] = text_dim;
  return meta;
}

GinConfig gin_config_from_meta(const CheckpointMeta& meta) {
  GinConfig config;
  config.num_layers = static_cast<int>(meta.get("gin.num_layers", config.num_layers));
  config.hidden_dim = static_cast<int>(meta.get("gin.hidden_dim", config.hidden_dim));
  config.eps_learnable = meta.get("gin.eps_learnable", 0.0) != 0.0;
  config.readout = meta.get("gin.readout_mean", 1.0) != 0.0 ? GinConfig::Readout::Mean
                                                            : GinConfig::Readout::Sum;
  config.joint_dim = static_cast<int>(meta.get("gin.joint_dim", config.joint_dim));
  return config;
}

}  // namespace moltext::nn
