//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltext/relevance/corpus.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "moltext/core/binio.hpp"

namespace moltext::relevance {

using nlohmann::json;

Schema schema_from_name(const std::string& name) {
  if (name == "uniform") return Schema::Uniform;
  if (name == "mean") return Schema::Mean;
  if (name == "max") return Schema::Max;
  if (name == "sentence") return Schema::Sentence;
  throw UsageError("unknown relevance schema: " + name);
}

const char* schema_name(Schema schema) {
  switch (schema) {
    case Schema::Uniform: return "uniform";
    case Schema::Mean: return "mean";
    case Schema::Max: return "max";
    case Schema::Sentence: return "sentence";
  }
  return "uniform";
}

std::string paragraph_embedding_key(const std::string& molecule_id,
                                    const std::string& paragraph_id) {
  return "para:" + molecule_id + ":" + paragraph_id;
}

std::string name_embedding_key(const std::string& molecule_id, std::size_t k) {
  return "name:" + molecule_id + ":" + std::to_string(k);
}

std::string sentence_embedding_key(const std::string& molecule_id) {
  return "sent:" + molecule_id;
}

namespace {

json parse_json_line(const std::string& line, const std::string& path, std::size_t line_number) {
  json parsed = json::parse(line, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object()) {
    throw DataError(path + ":" + std::to_string(line_number) + ": malformed JSON record");
  }
  return parsed;
}

std::string require_string(const json& record, const char* field, const std::string& path,
                           std::size_t line_number) {
  if (!record.contains(field) || !record[field].is_string()) {
    throw DataError(path + ":" + std::to_string(line_number) + ": missing string field '" +
                    field + "'");
  }
  return record[field].get<std::string>();
}

struct EmbeddingFile {
  std::size_t dim = 0;
  std::unordered_map<std::uint64_t, std::vector<double>> by_hash;

  const std::vector<double>* find(const std::string& key) const {
    const auto it = by_hash.find(core::fnv1a64(key));
    return it == by_hash.end() ? nullptr : &it->second;
  }
};

EmbeddingFile load_embedding_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open embedding file: " + path);
  core::expect_magic(in, "MEMB", "MEMB embedding");
  const std::uint32_t count = core::read_u32(in);
  const std::uint32_t dim = core::read_u32(in);
  if (dim == 0) throw DataError(path + ": zero embedding dimension");

  EmbeddingFile file;
  file.dim = dim;
  file.by_hash.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint64_t key = core::read_u64(in);
    std::vector<double> values(dim);
    for (std::uint32_t d = 0; d < dim; ++d) values[d] = core::read_f32(in);
    if (!file.by_hash.emplace(key, std::move(values)).second) {
      throw DataError(path + ": duplicate embedding key hash");
    }
  }
  return file;
}

}  // namespace

Corpus load_corpus(const std::string& entries_path, const std::string& corpus_path,
                   const std::string& embeddings_path) {
  const EmbeddingFile embeddings = load_embedding_file(embeddings_path);

  Corpus corpus;
  corpus.embedding_dim = embeddings.dim;

  std::ifstream entries_in(entries_path);
  if (!entries_in) throw DataError("cannot open entries file: " + entries_path);
  std::unordered_map<std::string, std::uint32_t> molecule_index;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(entries_in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const json record = parse_json_line(line, entries_path, line_number);
    MoleculeTextEntry entry;
    entry.molecule_id = require_string(record, "molecule_id", entries_path, line_number);
    entry.name = require_string(record, "name", entries_path, line_number);
    entry.smiles = require_string(record, "smiles", entries_path, line_number);
    if (record.contains("synonyms")) {
      for (const auto& synonym : record["synonyms"]) {
        entry.synonyms.push_back(synonym.get<std::string>());
      }
    }
    if (!molecule_index.emplace(entry.molecule_id, corpus.molecules.size()).second) {
      throw DataError(entries_path + ": duplicate molecule_id " + entry.molecule_id);
    }

    const std::size_t used_synonyms = std::min<std::size_t>(entry.synonyms.size(), 20);
    for (std::size_t k = 0; k <= used_synonyms; ++k) {
      const auto* values = embeddings.find(name_embedding_key(entry.molecule_id, k));
      if (!values) {
        throw DataError("missing name embedding " + name_embedding_key(entry.molecule_id, k));
      }
      entry.name_embeddings.push_back(EmbeddingVector{*values});
    }
    if (const auto* values = embeddings.find(sentence_embedding_key(entry.molecule_id))) {
      entry.sentence_query_embedding = EmbeddingVector{*values};
    }
    corpus.molecules.push_back(std::move(entry));
  }

  std::ifstream corpus_in(corpus_path);
  if (!corpus_in) throw DataError("cannot open corpus file: " + corpus_path);
  std::unordered_set<std::string> seen_paragraphs;
  line_number = 0;
  while (std::getline(corpus_in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const json record = parse_json_line(line, corpus_path, line_number);
    ParagraphRecord paragraph;
    paragraph.molecule_id = require_string(record, "molecule_id", corpus_path, line_number);
    paragraph.paragraph_id = require_string(record, "paragraph_id", corpus_path, line_number);
    paragraph.text = require_string(record, "text", corpus_path, line_number);

    const auto it = molecule_index.find(paragraph.molecule_id);
    if (it == molecule_index.end()) {
      throw DataError(corpus_path + ":" + std::to_string(line_number) +
                      ": paragraph for unknown molecule " + paragraph.molecule_id);
    }
    const std::string unique_key = paragraph.molecule_id + "\x1f" + paragraph.paragraph_id;
    if (!seen_paragraphs.insert(unique_key).second) {
      throw DataError(corpus_path + ": duplicate paragraph " + paragraph.paragraph_id +
                      " for molecule " + paragraph.molecule_id);
    }
    const auto* values =
        embeddings.find(paragraph_embedding_key(paragraph.molecule_id, paragraph.paragraph_id));
    if (!values) {
      throw DataError("missing paragraph embedding " +
                      paragraph_embedding_key(paragraph.molecule_id, paragraph.paragraph_id));
    }
    paragraph.embedding = EmbeddingVector{*values};

    auto& entry = corpus.molecules[it->second];
    corpus.flat_order.emplace_back(it->second,
                                   static_cast<std::uint32_t>(entry.paragraphs.size()));
    entry.paragraphs.push_back(std::move(paragraph));
  }

  for (const auto& entry : corpus.molecules) {
    if (entry.paragraphs.empty()) {
      throw DataError("molecule " + entry.molecule_id + " has no paragraphs");
    }
  }
  return corpus;
}

void save_embeddings(
    const std::string& path,
    const std::vector<std::pair<std::string, std::vector<double>>>& keyed_vectors) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write embedding file: " + path);
  if (keyed_vectors.empty()) throw DataError("refusing to write empty embedding file");
  const std::size_t dim = keyed_vectors.front().second.size();

  core::write_magic(out, "MEMB");
  core::write_u32(out, static_cast<std::uint32_t>(keyed_vectors.size()));
  core::write_u32(out, static_cast<std::uint32_t>(dim));
  std::unordered_set<std::uint64_t> seen;
  for (const auto& [key, values] : keyed_vectors) {
    if (values.size() != dim) throw DataError("inconsistent embedding dimension for key " + key);
    const std::uint64_t hash = core::fnv1a64(key);
    if (!seen.insert(hash).second) throw DataError("duplicate embedding key " + key);
    core::write_u64(out, hash);
    for (double v : values) core::write_f32(out, static_cast<float>(v));
  }
  if (!out) throw DataError("write failed: " + path);
}

void save_score_table(const std::string& path, const std::vector<double>& scores) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write score table: " + path);
  core::write_magic(out, "MSCR");
  core::write_u32(out, static_cast<std::uint32_t>(scores.size()));
  core::write_u32(out, 1);
  for (double s : scores) core::write_f32(out, static_cast<float>(s));
  if (!out) throw DataError("write failed: " + path);
}

std::vector<double> load_score_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open score table: " + path);
  core::expect_magic(in, "MSCR", "MSCR score table");
  const std::uint32_t count = core::read_u32(in);
  const std::uint32_t dim = core::read_u32(in);
  if (dim != 1) throw DataError(path + ": score table dim must be 1");
  std::vector<double> scores(count);
  for (std::uint32_t i = 0; i < count; ++i) scores[i] = core::read_f32(in);
  return scores;
}

}  // namespace moltext::relevance
