#include "vocabport/efficiency.hpp"

#include <cmath>
#include <numeric>

#include <json.hpp>

#include "file_io.hpp"
#include "vocabport/error.hpp"
#include "vocabport/parallel.hpp"
#include "vocabport/utf8.hpp"

namespace vocabport {

namespace {

std::string at_line(std::string_view origin, std::size_t line) {
  return std::string(origin) + ":" + std::to_string(line);
}

std::string default_id(std::size_t line) { return "line-" + std::to_string(line); }

}  // namespace

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "txt") return CorpusFormat::kTxt;
  if (name == "jsonl") return CorpusFormat::kJsonl;
  throw ValidationError("unknown corpus format '" + std::string(name) + "'");
}

std::vector<CorpusSample> parse_corpus(std::string_view contents, CorpusFormat format,
                                       std::string_view origin) {
  std::vector<CorpusSample> out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < contents.size()) {
    auto nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    auto line = contents.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (auto bad = utf8::find_invalid(line)) {
      throw ValidationError(at_line(origin, line_no) + ": malformed UTF-8 at byte " +
                            std::to_string(*bad));
    }
    if (format == CorpusFormat::kTxt) {
      out.push_back({default_id(line_no), std::string(line)});
      continue;
    }
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError(at_line(origin, line_no) + ": malformed JSON: " + e.what());
    }
    if (!obj.is_object() || !obj.contains("text") || !obj["text"].is_string()) {
      throw ValidationError(at_line(origin, line_no) + ": expected an object with a \"text\" string");
    }
    CorpusSample s{default_id(line_no), obj["text"].get<std::string>()};
    if (auto it = obj.find("id"); it != obj.end()) {
      if (it->is_string()) {
        s.id = it->get<std::string>();
      } else if (it->is_number_integer()) {
        s.id = std::to_string(it->get<std::int64_t>());
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<CorpusSample> load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  return parse_corpus(detail::read_text_file(path), format, path.string());
}

std::vector<std::size_t> sample_token_counts(const TokenizerSpec& spec,
                                             std::span<const CorpusSample> corpus,
                                             std::size_t threads) {
  std::vector<std::size_t> counts(corpus.size());
  parallel_for(corpus.size(), threads,
               [&](std::size_t i) { counts[i] = count_tokens(spec, corpus[i].text); });
  return counts;
}

double avg_tokens(const TokenizerSpec& spec, std::span<const CorpusSample> corpus,
                  std::size_t threads) {
  if (corpus.empty()) throw ValidationError("cannot average over an empty corpus");
  const auto counts = sample_token_counts(spec, corpus, threads);
  const auto total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  return static_cast<double>(total) / static_cast<double>(corpus.size());
}

double speedup_ratio(double avg_source, double avg_target) {
  if (!(avg_target > 0.0) || !std::isfinite(avg_target) || !std::isfinite(avg_source)) {
    throw ValidationError("speedup ratio needs a positive target average, got " +
                          std::to_string(avg_target));
  }
  return 100.0 * (avg_source - avg_target) / avg_target;
}

EfficiencyReport analyze_corpus(const TokenizerSpec& source, const TokenizerSpec& target,
                                std::span<const CorpusSample> corpus,
                                const AnalyzeOptions& options) {
  if (corpus.empty()) throw ValidationError("cannot analyze an empty corpus");
  const auto src = sample_token_counts(source, corpus, options.threads);
  const auto tgt = sample_token_counts(target, corpus, options.threads);
  const auto src_total = std::accumulate(src.begin(), src.end(), std::uint64_t{0});
  const auto tgt_total = std::accumulate(tgt.begin(), tgt.end(), std::uint64_t{0});

  EfficiencyReport r;
  r.corpus_id = options.corpus_id;
  r.n_samples = corpus.size();
  r.avg_tokens_source = static_cast<double>(src_total) / static_cast<double>(corpus.size());
  r.avg_tokens_target = static_cast<double>(tgt_total) / static_cast<double>(corpus.size());
  r.speedup_pct = speedup_ratio(r.avg_tokens_source, r.avg_tokens_target);
  if (options.keep_per_sample) {
    r.per_sample.emplace();
    r.per_sample->reserve(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      r.per_sample->push_back({corpus[i].id, src[i], tgt[i]});
    }
  }
  return r;
}

}  // namespace vocabport
