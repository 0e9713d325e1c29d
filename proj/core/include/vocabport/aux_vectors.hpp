#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vocabport/embedding_matrix.hpp"
#include "vocabport/vocabulary.hpp"

namespace vocabport {

enum class AuxKind {
  kAuxModel,     // embedding matrix of a target-language model sharing the target vocabulary
  kWordVectors,  // static word vectors trained on target text
};

/// Auxiliary representations aligned to a target vocabulary by token string.
struct AuxEmbeddings {
  AuxKind kind = AuxKind::kAuxModel;
  std::vector<std::optional<std::size_t>> alignment;  // target id -> matrix row
  EmbeddingMatrix matrix;
  std::vector<TokenId> missing;  // ascending target ids with no row
  std::vector<std::string> warnings;

  std::size_t target_size() const noexcept { return alignment.size(); }
};

/// Builds an AuxEmbeddings directly from a matrix whose rows already follow
/// `target` order. Every target id is aligned.
AuxEmbeddings aux_from_aligned_matrix(AuxKind kind, EmbeddingMatrix matrix);

/// Aligns an auxiliary vocabulary + matrix to `target` by token string.
/// Throws ValidationError when matrix rows != aux vocabulary size.
AuxEmbeddings align_aux_model(const Vocabulary& aux_vocab, EmbeddingMatrix matrix,
                              const Vocabulary& target);

AuxEmbeddings load_aux_model(const std::filesystem::path& vocab_path, VocabFormat vocab_format,
                             const std::filesystem::path& matrix_path,
                             const Vocabulary& target);

struct WordVectorOptions {
  /// When a token has no vector under its raw string, retry with a leading
  /// "Ġ" or "▁" removed.
  bool strip_marker_fallback = false;
};

/// Parses the "count dim" text format. Duplicate words keep their first
/// vector and add a warning; a line whose value count differs from the header
/// dimension is an error naming the line.
AuxEmbeddings parse_word_vectors(std::string_view contents, const Vocabulary& target,
                                 const WordVectorOptions& options = {},
                                 std::string_view origin = "<memory>");

AuxEmbeddings load_word_vectors(const std::filesystem::path& path, const Vocabulary& target,
                                const WordVectorOptions& options = {});

/// The aligned row for `target_id`, or nullopt when it is missing.
/// Throws std::out_of_range when target_id >= target size.
std::optional<std::span<const float>> aux_row(const AuxEmbeddings& a, TokenId target_id);

}  // namespace vocabport
