//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "moltext/core/error.hpp"

namespace moltext::relevance {

struct EmbeddingVector {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
  bool empty() const { return values.empty(); }
};

struct ParagraphRecord {
  std::string molecule_id;
  std::string paragraph_id;
  std::string text;
  EmbeddingVector embedding;
  /// Set by prune_paragraph: the stored embedding belongs to the untruncated
  /// text and must be recomputed offline before it is trusted again.
  bool needs_reembedding = false;
};

struct MoleculeTextEntry {
  std::string molecule_id;
  std::string name;
  std::string smiles;
  std::vector<std::string> synonyms;            // at most 20 are used
  std::vector<EmbeddingVector> name_embeddings; // [0] = name, then one per used synonym
  std::optional<EmbeddingVector> sentence_query_embedding;
  std::vector<ParagraphRecord> paragraphs;
};

enum class Schema { Uniform, Mean, Max, Sentence };

Schema schema_from_name(const std::string& name);
const char* schema_name(Schema schema);

/// A loaded pretraining corpus.
///
/// File bundle:
///  - entries.jsonl: one JSON object per line with molecule_id, name,
///    synonyms, smiles;
///  - corpus.jsonl: one JSON object per line with molecule_id, paragraph_id,
///    text (order defines the corpus order used by score tables);
///  - embeddings file (MEMB, little-endian): magic "MEMB", u32 record count,
///    u32 dim, then per record a u64 FNV-1a key hash followed by dim f32
///    values (widened to f64 on load).
///
/// Embedding keys: "para:<molecule_id>:<paragraph_id>" for paragraphs,
/// "name:<molecule_id>:<k>" for the name (k=0) and synonyms (k=1..), and
/// "sent:<molecule_id>" for the sentence query embedding.
struct Corpus {
  std::vector<MoleculeTextEntry> molecules;
  std::size_t embedding_dim = 0;
  /// (molecule index, paragraph index) pairs in corpus-file order.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> flat_order;

  std::size_t paragraph_count() const { return flat_order.size(); }
  const ParagraphRecord& flat(std::size_t i) const {
    const auto& [m, p] = flat_order[i];
    return molecules[m].paragraphs[p];
  }
};

std::string paragraph_embedding_key(const std::string& molecule_id,
                                    const std::string& paragraph_id);
std::string name_embedding_key(const std::string& molecule_id, std::size_t k);
std::string sentence_embedding_key(const std::string& molecule_id);

Corpus load_corpus(const std::string& entries_path, const std::string& corpus_path,
                   const std::string& embeddings_path);

/// Writes the embedding file; keyed_vectors pairs each key string with its
/// vector. All vectors must share one dimension.
void save_embeddings(const std::string& path,
                     const std::vector<std::pair<std::string, std::vector<double>>>& keyed_vectors);

/// Score-table file (MSCR): magic "MSCR", u32 record count, u32 dim (1),
/// then one f32 score per paragraph in corpus order.
void save_score_table(const std::string& path, const std::vector<double>& scores);
std::vector<double> load_score_table(const std::string& path);

}  // namespace moltext::relevance
