//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>
#include <vector>

#include "moltext/relevance/corpus.hpp"

namespace moltext::relevance {

/// Cosine similarity u.v / (|u||v|). Throws DataError on dimension mismatch
/// or an all-zero input.
double cosine(const EmbeddingVector& u, const EmbeddingVector& v);

/// Cosine between the mean of the name/synonym embeddings and the paragraph.
double score_mean(const MoleculeTextEntry& entry, const ParagraphRecord& paragraph);

/// Maximum cosine over the name/synonym embeddings.
double score_max(const MoleculeTextEntry& entry, const ParagraphRecord& paragraph);

/// Cosine between the precomputed sentence-query embedding and the paragraph.
double score_sentence(const MoleculeTextEntry& entry, const ParagraphRecord& paragraph);

/// The natural-language query whose offline embedding score_sentence uses.
/// With no synonyms the "a compound also known as" clause is dropped.
std::string build_sentence_query(const std::string& name,
                                 const std::vector<std::string>& synonyms);

/// Paragraph scores for one molecule under a schema, aligned with
/// entry.paragraphs. Uniform has no scores (throws UsageError).
std::vector<double> score_paragraphs(const MoleculeTextEntry& entry, Schema schema);

/// Scores for every paragraph in corpus order. Parallelized across
/// paragraphs; the result is independent of the thread count.
std::vector<double> precompute_scores(const Corpus& corpus, Schema schema);

/// Truncates the text to 256 Unicode scalar values (never mid-character) and
/// marks the record as needing re-embedding when it shrank.
ParagraphRecord prune_paragraph(const ParagraphRecord& paragraph);

/// Indices of paragraphs whose whitespace-normalized text contains the
/// molecule name or any synonym, case-insensitively. May be empty.
std::vector<std::size_t> naive_filter(const MoleculeTextEntry& entry);

}  // namespace moltext::relevance
