//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltext/relevance/scoring.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>

namespace moltext::relevance {

double cosine(const EmbeddingVector& u, const EmbeddingVector& v) {
  if (u.dim() != v.dim()) throw DataError("cosine: dimension mismatch");
  if (u.empty()) throw DataError("cosine: empty vectors");
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    dot += u.values[i] * v.values[i];
    uu += u.values[i] * u.values[i];
    vv += v.values[i] * v.values[i];
  }
  if (uu == 0.0 || vv == 0.0) throw DataError("cosine: zero-norm vector");
  return dot / (std::sqrt(uu) * std::sqrt(vv));
}

double score_mean(const MoleculeTextEntry& entry, const ParagraphRecord& paragraph) {
  if (entry.name_embeddings.empty()) {
    throw DataError("score_mean: molecule " + entry.molecule_id + " has no name embeddings");
  }
  EmbeddingVector mean;
  mean.values.assign(entry.name_embeddings.front().dim(), 0.0);
  for (const auto& name_embedding : entry.name_embeddings) {
    if (name_embedding.dim() != mean.dim()) throw DataError("score_mean: dimension mismatch");
    for (std::size_t i = 0; i < mean.values.size(); ++i) {
      mean.values[i] += name_embedding.values[i];
    }
  }
  const double scale = 1.0 / static_cast<double>(entry.name_embeddings.size());
  for (double& v : mean.values) v *= scale;
  return cosine(mean, paragraph.embedding);
}

double score_max(const MoleculeTextEntry& entry, const ParagraphRecord& paragraph) {
  if (entry.name_embeddings.empty()) {
    throw DataError("score_max: molecule " + entry.molecule_id + " has no name embeddings");
  }
  double best = -1.0;
  for (const auto& name_embedding : entry.name_embeddings) {
    best = std::max(best, cosine(name_embedding, paragraph.embedding));
  }
  return best;
}

double score_sentence(const MoleculeTextEntry& entry, const ParagraphRecord& paragraph) {
  if (!entry.sentence_query_embedding) {
    throw DataError("score_sentence: molecule " + entry.molecule_id +
                    " has no sentence query embedding");
  }
  return cosine(*entry.sentence_query_embedding, paragraph.embedding);
}

std::string build_sentence_query(const std::string& name,
                                 const std::vector<std::string>& synonyms) {
  std::string query =
      "Molecular, chemical, electrochemical, physical, quantum mechanical, "
      "biochemical, biological, medical and physiological properties, "
      "characteristics, and applications of " +
      name;
  if (!synonyms.empty()) {
    query += ", a compound also known as ";
    for (std::size_t i = 0; i < synonyms.size(); ++i) {
      if (i + 1 == synonyms.size()) {
        if (i > 0) query += ", or ";
        query += synonyms[i];
      } else {
        if (i > 0) query += ", ";
        query += synonyms[i];
      }
    }
  }
  query += ".";
  return query;
}

std::vector<double> score_paragraphs(const MoleculeTextEntry& entry, Schema schema) {
  if (schema == Schema::Uniform) {
    throw UsageError("the uniform schema has no relevance scores");
  }
  std::vector<double> scores(entry.paragraphs.size());
  for (std::size_t i = 0; i < entry.paragraphs.size(); ++i) {
    switch (schema) {
      case Schema::Mean: scores[i] = score_mean(entry, entry.paragraphs[i]); break;
      case Schema::Max: scores[i] = score_max(entry, entry.paragraphs[i]); break;
      case Schema::Sentence: scores[i] = score_sentence(entry, entry.paragraphs[i]); break;
      case Schema::Uniform: break;
    }
  }
  return scores;
}

std::vector<double> precompute_scores(const Corpus& corpus, Schema schema) {
  if (schema == Schema::Uniform) {
    throw UsageError("the uniform schema has no relevance scores");
  }
  std::vector<double> table(corpus.paragraph_count());
  const auto n = static_cast<std::int64_t>(corpus.paragraph_count());
  // Each slot is written by exactly one iteration, so the table does not
  // depend on the thread count.
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& [mol, para] = corpus.flat_order[static_cast<std::size_t>(i)];
    const auto& entry = corpus.molecules[mol];
    const auto& paragraph = entry.paragraphs[para];
    double score = 0.0;
    switch (schema) {
      case Schema::Mean: score = score_mean(entry, paragraph); break;
      case Schema::Max: score = score_max(entry, paragraph); break;
      case Schema::Sentence: score = score_sentence(entry, paragraph); break;
      case Schema::Uniform: break;
    }
    table[static_cast<std::size_t>(i)] = score;
  }
  return table;
}

namespace {

/// Byte offset just past the first `limit` Unicode scalar values.
std::size_t utf8_prefix_bytes(const std::string& text, std::size_t limit) {
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < text.size() && count < limit) {
    const auto byte = static_cast<unsigned char>(text[i]);
    std::size_t advance = 1;
    if ((byte & 0xF8) == 0xF0) {
      advance = 4;
    } else if ((byte & 0xF0) == 0xE0) {
      advance = 3;
    } else if ((byte & 0xE0) == 0xC0) {
      advance = 2;
    }
    i = std::min(text.size(), i + advance);
    ++count;
  }
  return i;
}

std::string normalize_for_match(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += static_cast<char>(std::tolower(c));
  }
  return out;
}

}  // namespace

ParagraphRecord prune_paragraph(const ParagraphRecord& paragraph) {
  constexpr std::size_t kMaxScalars = 256;
  ParagraphRecord pruned = paragraph;
  const std::size_t cut = utf8_prefix_bytes(paragraph.text, kMaxScalars);
  if (cut < paragraph.text.size()) {
    pruned.text = paragraph.text.substr(0, cut);
    pruned.needs_reembedding = true;
  }
  return pruned;
}

std::vector<std::size_t> naive_filter(const MoleculeTextEntry& entry) {
  std::vector<std::string> needles;
  needles.push_back(normalize_for_match(entry.name));
  for (const auto& synonym : entry.synonyms) {
    needles.push_back(normalize_for_match(synonym));
  }

  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < entry.paragraphs.size(); ++i) {
    const std::string haystack = normalize_for_match(entry.paragraphs[i].text);
    for (const auto& needle : needles) {
      if (!needle.empty() && haystack.find(needle) != std::string::npos) {
        kept.push_back(i);
        break;
      }
    }
  }
  return kept;
}

}  // namespace moltext::relevance
