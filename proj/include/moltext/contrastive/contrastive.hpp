//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "moltext/augment/augment.hpp"
#include "moltext/nn/model.hpp"
#include "moltext/nn/optimizer.hpp"
#include "moltext/relevance/sampling.hpp"
#include "moltext/relevance/scoring.hpp"

namespace moltext::contrastive {

struct LossConfig {
  double tau = 0.1;
  double w_tg = 1.0;  // weight of the two text-graph terms
  double w_gg = 1.0;  // weight of the graph-graph term
  /// Restrict the denominator to j != i, reproducing the printed form of the
  /// loss. Off by default: the standard denominator includes the positive
  /// pair, which keeps the loss non-negative.
  bool exclude_positive = false;
  /// Average the a->b and b->a directions of each term.
  bool symmetric = false;
};

/// InfoNCE on already-normalized embedding batches:
/// mean_i -log( exp(s_ii) / sum_j exp(s_ij) ) with s = (z_a z_b^T) / tau,
/// computed via log-sum-exp. Both batches must have the same N >= 2.
nn::Tape::Id info_nce(nn::Tape& tape, nn::Tape::Id z_a, nn::Tape::Id z_b, double tau,
                      bool exclude_positive = false, bool symmetric = false);

/// Forward-only InfoNCE for oracles and reports.
double info_nce_value(const core::Matrix& z_a, const core::Matrix& z_b, double tau,
                      bool exclude_positive = false, bool symmetric = false);

/// w_tg * ( info_nce(zT1,zG1) + info_nce(zT2,zG2) ) / 2 + w_gg * info_nce(zG1,zG2).
nn::Tape::Id batch_loss(nn::Tape& tape, nn::Tape::Id z_t1, nn::Tape::Id z_t2,
                        nn::Tape::Id z_g1, nn::Tape::Id z_g2, const LossConfig& config);

enum class TextTreatment { None, Pruned, Naive };
const char* treatment_name(TextTreatment treatment);

struct PretrainConfig {
  int batch_size = 32;
  int epochs = 30;
  LossConfig loss;
  relevance::Schema schema = relevance::Schema::Uniform;
  relevance::SamplingParams sampling;
  augment::AugmentationPolicy policy;
  nn::GinConfig gin;
  nn::OptimizerConfig optimizer;
  std::uint64_t seed = 7;
  /// Restrict training to the first n corpus molecules (0 = all); used to
  /// hold out molecules for retrieval probes.
  std::size_t max_molecules = 0;
  /// Echoed into the loss log; the corpus treatment itself is applied by the
  /// caller before pretraining.
  TextTreatment treatment = TextTreatment::None;
};

struct PretrainResult {
  nn::ParameterStore params;
  nn::CheckpointMeta meta;
  std::vector<double> epoch_mean_losses;
};

/// The pretraining loop: per epoch, shuffle molecules; per batch, sample a
/// text pair and an augmented graph pair per molecule, embed all four
/// batches, take batch_loss, backpropagate, and step the optimizer.
/// Deterministic given the config (at any thread count). Writes the resolved
/// config header and one CSV row per batch to loss_log when provided.
PretrainResult pretrain(const relevance::Corpus& corpus, const PretrainConfig& config,
                        std::ostream* loss_log);

struct LabeledTaskDataset {
  std::vector<std::string> smiles;
  std::vector<std::string> task_names;
  core::Matrix labels;  // molecules x tasks, entries 0/1 where observed
  core::Matrix mask;    // 1 = label present

  std::size_t size() const { return smiles.size(); }
  std::size_t task_count() const { return task_names.size(); }
};

/// DeepChem-shaped CSV: a `smiles` column plus one column per task; empty
/// cells are missing labels.
LabeledTaskDataset load_labeled_csv(const std::string& path);

struct FinetuneConfig {
  int epochs = 200;
  bool frozen = true;  // train only the classifier head
  nn::OptimizerConfig optimizer{nn::OptimizerConfig::Kind::Adam, 1e-2, 0.9, 0.999, 1e-8};
  std::uint64_t seed = 7;
  double train_fraction = 0.8;
  double val_fraction = 0.1;  // remainder is the test split
};

struct FinetuneResult {
  nn::ParameterStore params;  // encoder + classifier head
  nn::CheckpointMeta meta;
  std::vector<std::string> task_names;
  /// Per-task AUROC on the test split; NaN when the split has one class.
  std::vector<double> test_auroc;
  /// Mean over the defined tasks.
  double mean_test_auroc = 0.0;
};

/// Attaches a classifier head to the checkpointed encoder and trains it with
/// masked binary cross-entropy on a seeded 80/10/10 split, keeping the epoch
/// with the best validation AUROC.
FinetuneResult finetune(const nn::ParameterStore& encoder_params,
                        const nn::CheckpointMeta& encoder_meta, const LabeledTaskDataset& data,
                        const FinetuneConfig& config);

/// Per-task probabilities for one molecule under a fine-tuned checkpoint.
std::vector<double> predict(const nn::ParameterStore& params, const nn::CheckpointMeta& meta,
                            const std::string& smiles);

/// Joint graph embeddings for a list of molecules (rows follow input order).
core::Matrix embed_graphs(const nn::ParameterStore& params, const nn::GinConfig& gin,
                          const std::vector<molgraph::MolecularGraph>& graphs);

/// Joint text embeddings for raw embedding-vector rows.
core::Matrix embed_texts(const nn::ParameterStore& params, const core::Matrix& raw_embeddings);

}  // namespace moltext::contrastive
