#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vocabport/tokenizer.hpp"

namespace vocabport {

struct CorpusSample {
  std::string id;
  std::string text;
};

enum class CorpusFormat {
  kTxt,    // one sample per non-empty line
  kJsonl,  // one JSON object per non-empty line with a "text" string and optional "id"
};

CorpusFormat parse_corpus_format(std::string_view name);  // txt|jsonl

/// Sample ids default to "line-<n>" (1-based). Text must be valid UTF-8.
std::vector<CorpusSample> parse_corpus(std::string_view contents, CorpusFormat format,
                                       std::string_view origin = "<memory>");
std::vector<CorpusSample> load_corpus(const std::filesystem::path& path, CorpusFormat format);

/// Token count of every sample, computed on `threads` workers.
std::vector<std::size_t> sample_token_counts(const TokenizerSpec& spec,
                                             std::span<const CorpusSample> corpus,
                                             std::size_t threads = 1);

/// Mean tokens per sample, every sample weighted equally. Throws
/// ValidationError on an empty corpus.
double avg_tokens(const TokenizerSpec& spec, std::span<const CorpusSample> corpus,
                  std::size_t threads = 1);

/// 100 * (avg_source - avg_target) / avg_target. Positive means the target
/// tokenizer needs fewer tokens; negative values are slowdowns. Throws
/// ValidationError when avg_target is not positive.
double speedup_ratio(double avg_source, double avg_target);

struct SampleCounts {
  std::string id;
  std::size_t source_tokens = 0;
  std::size_t target_tokens = 0;
};

struct EfficiencyReport {
  std::string corpus_id;
  std::size_t n_samples = 0;
  double avg_tokens_source = 0.0;
  double avg_tokens_target = 0.0;
  double speedup_pct = 0.0;
  std::optional<std::vector<SampleCounts>> per_sample;
};

struct AnalyzeOptions {
  std::string corpus_id;
  std::size_t threads = 1;
  bool keep_per_sample = false;
};

EfficiencyReport analyze_corpus(const TokenizerSpec& source, const TokenizerSpec& target,
                                std::span<const CorpusSample> corpus,
                                const AnalyzeOptions& options = {});

/// Kendall's tau-b, computed in O(n log n). Throws ValidationError when the
/// lengths differ, n < 2, an input is non-finite, or either sequence is
/// entirely tied (tau undefined).
double kendall_tau(std::span<const double> x, std::span<const double> y);

}  // namespace vocabport
