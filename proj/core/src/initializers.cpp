#include "vocabport/initializers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "vocabport/error.hpp"
#include "vocabport/parallel.hpp"

namespace vocabport {

namespace {

constexpr std::uint32_t kInputMatrix = 0;
constexpr std::uint32_t kOutputMatrix = 1;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void sample_scalar(std::span<float> dst, std::uint64_t stream, ElementStats s) {
  std::mt19937_64 rng(stream);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (auto& v : dst) v = static_cast<float>(s.mean + s.stddev * normal(rng));
}

void sample_coordinatewise(std::span<float> dst, std::uint64_t stream, const GroupStats& g) {
  std::mt19937_64 rng(stream);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t c = 0; c < dst.size(); ++c) {
    dst[c] = static_cast<float>(g.mean[c] + g.stddev[c] * normal(rng));
  }
}

void store(std::span<float> dst, const std::vector<double>& values) {
  for (std::size_t c = 0; c < dst.size(); ++c) dst[c] = static_cast<float>(values[c]);
}

std::string group_label(const ScriptGroup& g) {
  return std::string(to_string(g.script)) + "/" + std::string(to_string(g.position));
}

/// An overlap token usable as similarity support: its source row and its
/// auxiliary vector with precomputed norm.
struct SupportEntry {
  TokenId source_id;
  std::span<const float> aux;
  double norm;
};

double norm_of(std::span<const float> v) {
  double s = 0.0;
  for (float x : v) s += static_cast<double>(x) * x;
  return std::sqrt(s);
}

/// Shared state and plumbing for all five methods. Each method supplies a
/// per-token routine for non-overlapping target ids; copying, fallback
/// sampling, report assembly and parallel dispatch live here.
class InitEngine {
 public:
  InitEngine(const ModelBundle& source, const Vocabulary& target, const OverlapMap& overlap,
             const InitConfig& cfg)
      : source_(source), target_(target), overlap_(overlap), cfg_(cfg) {
    validate_config(cfg);
    require_valid(source);
    if (overlap.target_size != target.size() ||
        overlap.pairs.size() + overlap.non_overlap.size() != target.size()) {
      throw ValidationError("overlap map does not partition the target vocabulary");
    }
    for (const auto& p : overlap.pairs) {
      if (p.source >= source.vocab.size() || p.target >= target.size()) {
        throw ValidationError("overlap pair id out of range");
      }
    }
    const std::size_t h = source.input_emb.cols();
    result_.bundle.vocab = target;
    result_.bundle.tied = source.tied;
    result_.bundle.input_emb = EmbeddingMatrix(target.size(), h);
    if (!source.tied) result_.bundle.output_emb = EmbeddingMatrix(target.size(), h);
    result_.row_sources.assign(target.size(), RowSource::kRandomFallback);
    if (cfg.record_weights) result_.weights.resize(target.size());
    result_.report.method = cfg.method;
    result_.report.overlap = overlap_stats(overlap);
    global_in_ = element_stats(source.input_emb);
    if (!source.tied) global_out_ = element_stats(*source.output_emb);
    token_warnings_.resize(target.size());
  }

  const ModelBundle& source() const { return source_; }
  const Vocabulary& target() const { return target_; }
  const OverlapMap& overlap() const { return overlap_; }
  const InitConfig& cfg() const { return cfg_; }
  InitReport& report() { return result_.report; }

  void copy_overlap() {
    for (const auto& p : overlap_.pairs) {
      auto dst = result_.bundle.input_emb.row(p.target);
      auto src = source_.input_emb.row(p.source);
      std::copy(src.begin(), src.end(), dst.begin());
      if (!source_.tied) {
        auto odst = result_.bundle.output_emb->row(p.target);
        auto osrc = source_.output_emb->row(p.source);
        std::copy(osrc.begin(), osrc.end(), odst.begin());
      }
      result_.row_sources[p.target] = RowSource::kCopied;
    }
  }

  /// Runs fn(target_id) over `ids` on cfg.threads workers.
  void for_each(const std::vector<TokenId>& ids, const std::function<void(TokenId)>& fn) {
    parallel_for(ids.size(), cfg_.threads, [&](std::size_t i) { fn(ids[i]); });
  }

  void random_row(TokenId t) {
    sample_scalar(result_.bundle.input_emb.row(t),
                  row_stream_seed(cfg_.seed, t, kInputMatrix), global_in_);
    if (!source_.tied) {
      sample_scalar(result_.bundle.output_emb->row(t),
                    row_stream_seed(cfg_.seed, t, kOutputMatrix), global_out_);
    }
    result_.row_sources[t] = RowSource::kRandomFallback;
  }

  void group_row(TokenId t, const GroupStats& in, const GroupStats* out) {
    sample_coordinatewise(result_.bundle.input_emb.row(t),
                          row_stream_seed(cfg_.seed, t, kInputMatrix), in);
    if (!source_.tied) {
      sample_coordinatewise(result_.bundle.output_emb->row(t),
                            row_stream_seed(cfg_.seed, t, kOutputMatrix), *out);
    }
    result_.row_sources[t] = RowSource::kGroupSampled;
  }

  void combined_row(TokenId t, WeightVector w) {
    if (w.convex) {
      store(result_.bundle.input_emb.row(t), convex_combine(w, source_.input_emb));
      if (!source_.tied) {
        store(result_.bundle.output_emb->row(t), convex_combine(w, *source_.output_emb));
      }
    } else {
      store(result_.bundle.input_emb.row(t), weighted_sum(w, source_.input_emb));
      if (!source_.tied) {
        store(result_.bundle.output_emb->row(t), weighted_sum(w, *source_.output_emb));
      }
    }
    result_.row_sources[t] = RowSource::kSimilarity;
    if (cfg_.record_weights) result_.weights[t] = std::move(w);
  }

  /// Applies the missing-auxiliary policy to target id t.
  void missing_aux_row(TokenId t) {
    if (cfg_.missing_aux_policy == MissingAuxPolicy::kError) {
      throw ValidationError("target token '" + target_.token(t) +
                            "' has no auxiliary vector (missing-aux policy: error)");
    }
    random_row(t);
  }

  void warn(TokenId t, std::string message) { token_warnings_[t] = std::move(message); }

  InitResult finish() {
    auto& r = result_.report;
    for (auto s : result_.row_sources) {
      switch (s) {
        case RowSource::kCopied: ++r.copied; break;
        case RowSource::kSimilarity: ++r.similarity_initialized; break;
        case RowSource::kGroupSampled: ++r.group_sampled; break;
        case RowSource::kRandomFallback: ++r.random_fallback; break;
      }
    }
    for (auto& w : token_warnings_) {
      if (!w.empty()) r.warnings.push_back(std::move(w));
    }
    return std::move(result_);
  }

 private:
  const ModelBundle& source_;
  const Vocabulary& target_;
  const OverlapMap& overlap_;
  const InitConfig cfg_;
  InitResult result_;
  ElementStats global_in_;
  ElementStats global_out_;
  std::vector<std::string> token_warnings_;
};

void require_alignment(const AuxEmbeddings& aux, const Vocabulary& target, AuxKind kind,
                       std::string_view method) {
  if (aux.kind != kind) {
    throw ValidationError(std::string(method) +
                          (kind == AuxKind::kAuxModel
                               ? " needs auxiliary-model embeddings, got word vectors"
                               : " needs word vectors, got auxiliary-model embeddings"));
  }
  if (aux.target_size() != target.size()) {
    throw ValidationError(std::string(method) + ": auxiliary embeddings are aligned to " +
                          std::to_string(aux.target_size()) + " tokens, target has " +
                          std::to_string(target.size()));
  }
}

std::vector<SupportEntry> build_support(const OverlapMap& overlap, const AuxEmbeddings& aux) {
  std::vector<SupportEntry> support;
  support.reserve(overlap.pairs.size());
  for (const auto& p : overlap.pairs) {
    auto row = aux_row(aux, p.target);
    if (!row) continue;
    support.push_back({p.source, *row, norm_of(*row)});
  }
  return support;
}

/// Cosine of `query` against every support vector; same policy as
/// cosine_similarity (clamped, zero norm gives 0). Sets `degenerate` when any
/// zero-norm vector was involved.
std::vector<double> support_cosines(std::span<const float> query,
                                    const std::vector<SupportEntry>& support, bool& degenerate) {
  const double qn = norm_of(query);
  std::vector<double> cos(support.size(), 0.0);
  degenerate = qn == 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const auto& s = support[i];
    if (qn == 0.0 || s.norm == 0.0) {
      degenerate = true;
      continue;
    }
    double dot = 0.0;
    for (std::size_t c = 0; c < query.size(); ++c) {
      dot += static_cast<double>(query[c]) * s.aux[c];
    }
    cos[i] = std::clamp(dot / (qn * s.norm), -1.0, 1.0);
  }
  return cos;
}

WeightVector clp_weights(const std::vector<double>& cos, const std::vector<SupportEntry>& support,
                         bool raw) {
  WeightVector w;
  w.ids.reserve(support.size());
  for (const auto& s : support) w.ids.push_back(s.source_id);
  w.weights.resize(support.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < cos.size(); ++i) {
    w.weights[i] = raw ? cos[i] : std::max(cos[i], 0.0);
    sum += w.weights[i];
  }
  if (sum == 0.0) {
    std::fill(w.weights.begin(), w.weights.end(), 1.0 / static_cast<double>(support.size()));
    w.convex = true;
    return w;
  }
  for (auto& v : w.weights) v /= sum;
  w.convex = !raw;
  return w;
}

WeightVector sparsemax_weights(const std::vector<double>& cos,
                               const std::vector<SupportEntry>& support, double temperature) {
  std::vector<double> z(cos.size());
  for (std::size_t i = 0; i < cos.size(); ++i) z[i] = cos[i] / temperature;
  auto p = sparsemax(z);
  WeightVector w;
  w.convex = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      w.ids.push_back(support[i].source_id);
      w.weights.push_back(p[i]);
    }
  }
  return w;
}

enum class SimilarityKind { kClp, kSparsemax };

InitResult similarity_init(const ModelBundle& source, const Vocabulary& target_vocab,
                           const OverlapMap& overlap, const AuxEmbeddings& aux,
                           const InitConfig& cfg, SimilarityKind kind, std::string_view name) {
  InitEngine engine(source, target_vocab, overlap, cfg);
  require_alignment(aux, target_vocab,
                    cfg.method == InitMethod::kFocus ? AuxKind::kWordVectors : AuxKind::kAuxModel,
                    name);
  engine.copy_overlap();
  const auto support = build_support(overlap, aux);

  engine.for_each(overlap.non_overlap, [&](TokenId t) {
    auto query = aux_row(aux, t);
    if (!query) {
      engine.missing_aux_row(t);
      return;
    }
    if (support.empty()) {
      throw ValidationError(std::string(name) +
                            ": no overlapping token has an auxiliary vector, cannot initialize '" +
                            target_vocab.token(t) + "'");
    }
    bool degenerate = false;
    auto cos = support_cosines(*query, support, degenerate);
    if (degenerate) {
      engine.warn(t, "zero-norm vector involved in similarities for '" + target_vocab.token(t) +
                         "'; affected similarities set to 0");
    }
    engine.combined_row(t, kind == SimilarityKind::kClp
                               ? clp_weights(cos, support, cfg.clp_raw_weights)
                               : sparsemax_weights(cos, support, cfg.sparsemax_temperature));
  });
  return engine.finish();
}

InitConfig with_method(InitConfig cfg, InitMethod m) {
  cfg.method = m;
  return cfg;
}

}  // namespace

InitMethod parse_init_method(std::string_view name) {
  if (name == "random") return InitMethod::kRandom;
  if (name == "clp") return InitMethod::kClp;
  if (name == "heuristics") return InitMethod::kHeuristics;
  if (name == "focus") return InitMethod::kFocus;
  if (name == "clp-plus") return InitMethod::kClpPlus;
  throw ValidationError("unknown init method '" + std::string(name) + "'");
}

std::string_view to_string(InitMethod m) {
  switch (m) {
    case InitMethod::kRandom: return "random";
    case InitMethod::kClp: return "clp";
    case InitMethod::kHeuristics: return "heuristics";
    case InitMethod::kFocus: return "focus";
    case InitMethod::kClpPlus: return "clp-plus";
  }
  return "random";
}

MissingAuxPolicy parse_missing_aux_policy(std::string_view name) {
  if (name == "random-fallback") return MissingAuxPolicy::kRandomFallback;
  if (name == "error") return MissingAuxPolicy::kError;
  throw ValidationError("unknown missing-aux policy '" + std::string(name) + "'");
}

std::string_view to_string(MissingAuxPolicy p) {
  return p == MissingAuxPolicy::kError ? "error" : "random-fallback";
}

void validate_config(const InitConfig& cfg) {
  if (!(cfg.sparsemax_temperature > 0.0) || !std::isfinite(cfg.sparsemax_temperature)) {
    throw ValidationError("sparsemax temperature must be a positive finite number");
  }
  if (cfg.threads == 0) throw ValidationError("thread count must be at least 1");
}

std::uint64_t row_stream_seed(std::uint64_t seed, TokenId target_id, std::uint32_t matrix) {
  return splitmix64(splitmix64(seed ^ (static_cast<std::uint64_t>(matrix) << 62)) ^
                    static_cast<std::uint64_t>(target_id));
}

InitResult init_random(const ModelBundle& source, const Vocabulary& target_vocab,
                       const OverlapMap& overlap, const InitConfig& cfg) {
  InitEngine engine(source, target_vocab, overlap, with_method(cfg, InitMethod::kRandom));
  if (cfg.random_copy_overlap) {
    engine.copy_overlap();
    engine.for_each(overlap.non_overlap, [&](TokenId t) { engine.random_row(t); });
  } else {
    std::vector<TokenId> all(target_vocab.size());
    for (TokenId t = 0; t < all.size(); ++t) all[t] = t;
    engine.for_each(all, [&](TokenId t) { engine.random_row(t); });
  }
  return engine.finish();
}

InitResult init_clp(const ModelBundle& source, const Vocabulary& target_vocab,
                    const OverlapMap& overlap, const AuxEmbeddings& aux, const InitConfig& cfg) {
  return similarity_init(source, target_vocab, overlap, aux, with_method(cfg, InitMethod::kClp),
                         SimilarityKind::kClp, "clp");
}

InitResult init_focus(const ModelBundle& source, const Vocabulary& target_vocab,
                      const OverlapMap& overlap, const AuxEmbeddings& vectors,
                      const InitConfig& cfg) {
  return similarity_init(source, target_vocab, overlap, vectors,
                         with_method(cfg, InitMethod::kFocus), SimilarityKind::kSparsemax,
                         "focus");
}

InitResult init_clp_plus(const ModelBundle& source, const Vocabulary& target_vocab,
                         const OverlapMap& overlap, const AuxEmbeddings& aux,
                         const InitConfig& cfg) {
  return similarity_init(source, target_vocab, overlap, aux,
                         with_method(cfg, InitMethod::kClpPlus), SimilarityKind::kSparsemax,
                         "clp-plus");
}

InitResult init_heuristics(const ModelBundle& source, const Vocabulary& target_vocab,
                           const OverlapMap& overlap, const InitConfig& cfg) {
  InitEngine engine(source, target_vocab, overlap, with_method(cfg, InitMethod::kHeuristics));
  engine.copy_overlap();

  const auto in_stats = group_statistics(source.vocab, source.input_emb, cfg.conventions);
  std::map<ScriptGroup, GroupStats> out_stats;
  if (!source.tied) out_stats = group_statistics(source.vocab, *source.output_emb, cfg.conventions);
  for (const auto& [g, s] : in_stats) engine.report().source_group_sizes[group_label(g)] = s.count;

  engine.for_each(overlap.non_overlap, [&](TokenId t) {
    const auto g = classify_token(target_vocab.token(t), cfg.conventions);
    auto it = in_stats.find(g);
    if (g.script == Script::kUnknown || it == in_stats.end() ||
        it->second.count < cfg.min_group_size) {
      engine.random_row(t);
      return;
    }
    engine.group_row(t, it->second, source.tied ? nullptr : &out_stats.at(g));
  });
  return engine.finish();
}

InitResult init_target_bundle(const ModelBundle& source, const Vocabulary& target_vocab,
                              const InitConfig& cfg, const AuxEmbeddings* aux) {
  validate_config(cfg);
  auto need = [&](AuxKind kind, std::string_view what) -> const AuxEmbeddings& {
    if (aux == nullptr || aux->kind != kind) {
      throw ValidationError("method " + std::string(to_string(cfg.method)) + " requires " +
                            std::string(what));
    }
    return *aux;
  };
  const auto overlap = compute_overlap(source.vocab, target_vocab, cfg.canonicalization);

  InitResult result;
  switch (cfg.method) {
    case InitMethod::kRandom:
      result = init_random(source, target_vocab, overlap, cfg);
      break;
    case InitMethod::kHeuristics:
      result = init_heuristics(source, target_vocab, overlap, cfg);
      break;
    case InitMethod::kClp:
      result = init_clp(source, target_vocab, overlap,
                        need(AuxKind::kAuxModel, "auxiliary-model embeddings"), cfg);
      break;
    case InitMethod::kClpPlus:
      result = init_clp_plus(source, target_vocab, overlap,
                             need(AuxKind::kAuxModel, "auxiliary-model embeddings"), cfg);
      break;
    case InitMethod::kFocus:
      result = init_focus(source, target_vocab, overlap, need(AuxKind::kWordVectors, "word vectors"),
                          cfg);
      break;
  }
  result.report.warnings.insert(result.report.warnings.begin(), overlap.warnings.begin(),
                                overlap.warnings.end());
  return result;
}

}  // namespace vocabport
