#include "vocabport/model_bundle.hpp"

#include "vocabport/error.hpp"

namespace vocabport {

std::vector<std::string> validate_bundle(const ModelBundle& b) {
  std::vector<std::string> issues;
  if (b.input_emb.rows() != b.vocab.size()) {
    issues.push_back("input_emb has " + std::to_string(b.input_emb.rows()) +
                     " rows but the vocabulary has " + std::to_string(b.vocab.size()) +
                     " tokens");
  }
  if (b.tied && b.output_emb) {
    issues.push_back("tied bundle carries a separate output matrix");
  }
  if (!b.tied && !b.output_emb) {
    issues.push_back("untied bundle is missing its output matrix");
  }
  if (b.output_emb) {
    if (b.output_emb->rows() != b.input_emb.rows()) {
      issues.push_back("output_emb has " + std::to_string(b.output_emb->rows()) +
                       " rows but input_emb has " + std::to_string(b.input_emb.rows()));
    }
    if (b.output_emb->cols() != b.input_emb.cols()) {
      issues.push_back("output_emb has " + std::to_string(b.output_emb->cols()) +
                       " cols but input_emb has " + std::to_string(b.input_emb.cols()));
    }
  }
  return issues;
}

void require_valid(const ModelBundle& b) {
  auto issues = validate_bundle(b);
  if (!issues.empty()) throw ValidationError("invalid model bundle: " + issues.front());
}

}  // namespace vocabport
