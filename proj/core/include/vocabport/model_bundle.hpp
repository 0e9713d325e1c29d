#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vocabport/embedding_matrix.hpp"
#include "vocabport/vocabulary.hpp"

namespace vocabport {

/// A vocabulary with its input embedding matrix and, for untied models, a
/// separate output matrix stored in the same |V| x H orientation.
struct ModelBundle {
  Vocabulary vocab;
  EmbeddingMatrix input_emb;
  std::optional<EmbeddingMatrix> output_emb;
  bool tied = true;

  const EmbeddingMatrix& output() const { return output_emb ? *output_emb : input_emb; }
};

/// Lists every violated bundle invariant; empty means valid.
std::vector<std::string> validate_bundle(const ModelBundle& b);

/// Throws ValidationError carrying the first violation.
void require_valid(const ModelBundle& b);

}  // namespace vocabport
