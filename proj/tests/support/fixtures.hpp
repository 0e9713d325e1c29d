#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "vocabport/aux_vectors.hpp"
#include "vocabport/model_bundle.hpp"
#include "vocabport/tokenizer.hpp"

namespace fixtures {

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

void write_file(const std::filesystem::path& p, const std::string& contents);
std::string read_file(const std::filesystem::path& p);

vocabport::EmbeddingMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed,
                                         double mean = 0.0, double stddev = 1.0);

/// Source/target pair with a controlled overlap. Tokens are marker-prefixed
/// Latin or Cyrillic words; the target adds Greek words that have no source
/// group. The aux matrix follows target order.
struct Synthetic {
  vocabport::ModelBundle source;
  vocabport::Vocabulary target;
  vocabport::EmbeddingMatrix aux;  // |target| x aux_dim
  std::size_t overlap = 0;
};

Synthetic make_synthetic(std::size_t source_size = 1000, std::size_t target_size = 800,
                         std::size_t overlap = 300, std::size_t hidden = 16,
                         bool untied = true, std::uint64_t seed = 7);

/// Writes the synthetic instance as CLI inputs: source.txt, source.vemb,
/// [source_out.vemb], target.txt, aux.txt, aux.vemb, vectors.txt.
void write_synthetic(const Synthetic& s, const std::filesystem::path& dir);

/// Random valid UTF-8 with ASCII, Latin-1, CJK, emoji and whitespace mixed in.
std::string random_utf8(std::mt19937_64& rng, std::size_t max_chars);

/// A byte-level BPE spec: all 256 byte symbols plus `merges.size()` merge
/// results. Merges are drawn from symbols over "abcde" and "Ġ".
struct ToyBpe {
  std::vector<vocabport::MergeRule> merges;
  vocabport::BpeSpec spec;
};
ToyBpe make_toy_bpe(std::size_t n_merges, std::uint64_t seed);

}  // namespace fixtures
