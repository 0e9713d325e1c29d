#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vocabport/aux_vectors.hpp"
#include "vocabport/model_bundle.hpp"
#include "vocabport/overlap.hpp"
#include "vocabport/script_groups.hpp"
#include "vocabport/simcore.hpp"

namespace vocabport {

enum class InitMethod { kRandom, kClp, kHeuristics, kFocus, kClpPlus };

InitMethod parse_init_method(std::string_view name);  // random|clp|heuristics|focus|clp-plus
std::string_view to_string(InitMethod m);

enum class MissingAuxPolicy { kRandomFallback, kError };

MissingAuxPolicy parse_missing_aux_policy(std::string_view name);  // random-fallback|error
std::string_view to_string(MissingAuxPolicy p);

struct InitConfig {
  InitMethod method = InitMethod::kRandom;
  std::uint64_t seed = 0;
  double sparsemax_temperature = 1.0;
  std::size_t min_group_size = 10;
  MissingAuxPolicy missing_aux_policy = MissingAuxPolicy::kRandomFallback;
  /// CLP only: normalise raw cosines by their sum instead of clamping
  /// negatives to zero. The resulting weights need not be convex.
  bool clp_raw_weights = false;
  /// Random only: copy overlapping rows like every other method. When false
  /// every target row is sampled.
  bool random_copy_overlap = true;
  Canonicalization canonicalization = Canonicalization::kExact;
  TokenConventions conventions;
  std::size_t threads = 1;
  /// Keep every similarity weight vector in InitResult::weights.
  bool record_weights = false;
};

/// Throws ValidationError on temperature <= 0, threads == 0 and the like.
void validate_config(const InitConfig& cfg);

/// How one target row was produced.
enum class RowSource : std::uint8_t { kCopied, kSimilarity, kGroupSampled, kRandomFallback };

struct InitReport {
  InitMethod method = InitMethod::kRandom;
  std::size_t copied = 0;
  std::size_t similarity_initialized = 0;
  std::size_t group_sampled = 0;
  std::size_t random_fallback = 0;
  OverlapStats overlap;
  /// Heuristics only: source member count per "Script/position" group.
  std::map<std::string, std::size_t> source_group_sizes;
  std::vector<std::string> warnings;

  std::size_t total() const {
    return copied + similarity_initialized + group_sampled + random_fallback;
  }
};

struct InitResult {
  ModelBundle bundle;
  InitReport report;
  std::vector<RowSource> row_sources;  // one per target id
  /// Filled when InitConfig::record_weights is set: the weights over source
  /// ids used for each similarity-initialized target id.
  std::vector<std::optional<WeightVector>> weights;
};

InitResult init_random(const ModelBundle& source, const Vocabulary& target_vocab,
                       const OverlapMap& overlap, const InitConfig& cfg);

InitResult init_clp(const ModelBundle& source, const Vocabulary& target_vocab,
                    const OverlapMap& overlap, const AuxEmbeddings& aux, const InitConfig& cfg);

InitResult init_heuristics(const ModelBundle& source, const Vocabulary& target_vocab,
                           const OverlapMap& overlap, const InitConfig& cfg);

InitResult init_focus(const ModelBundle& source, const Vocabulary& target_vocab,
                      const OverlapMap& overlap, const AuxEmbeddings& vectors,
                      const InitConfig& cfg);

InitResult init_clp_plus(const ModelBundle& source, const Vocabulary& target_vocab,
                         const OverlapMap& overlap, const AuxEmbeddings& aux,
                         const InitConfig& cfg);

/// Computes the overlap under cfg.canonicalization and dispatches on
/// cfg.method. CLP and CLP+ need an aux-model `aux`, FOCUS needs word vectors.
InitResult init_target_bundle(const ModelBundle& source, const Vocabulary& target_vocab,
                              const InitConfig& cfg, const AuxEmbeddings* aux = nullptr);

/// Seed for the sampling stream of one (target id, matrix) pair. Streams are
/// independent of iteration order and thread count.
std::uint64_t row_stream_seed(std::uint64_t seed, TokenId target_id, std::uint32_t matrix);

}  // namespace vocabport
