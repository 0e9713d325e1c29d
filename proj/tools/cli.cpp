#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "vocabport/aux_vectors.hpp"
#include "vocabport/error.hpp"
#include "vocabport/overlap.hpp"
#include "vocabport/tokenizer.hpp"

namespace vocabport::cli {

namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
  std::size_t threads = 1;
  bool verbose = false;
};

void require_input(const std::string& flag, const std::string& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) throw IoError(flag + ": input file '" + path + "' does not exist");
  if (fs::is_directory(path, ec)) throw IoError(flag + ": '" + path + "' is a directory");
}

void require_output(const std::string& flag, const std::string& path) {
  std::error_code ec;
  const fs::path p(path);
  if (fs::is_directory(p, ec)) throw IoError(flag + ": output path '" + path + "' is a directory");
  const auto parent = p.parent_path();
  if (!parent.empty() && !fs::is_directory(parent, ec)) {
    throw IoError(flag + ": directory '" + parent.string() + "' does not exist");
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    throw IoError("cannot write '" + path.string() + "': is a directory");
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f << text;
  f.flush();
  if (!f) throw IoError("write failure on '" + path.string() + "'");
}

std::string read_text(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

VocabFormat resolve_format(const std::string& name, const std::string& path) {
  return name == "auto" ? vocab_format_for_path(path) : parse_vocab_format(name);
}

const std::vector<std::string> kVocabFormats = {"auto", "json-map", "line-per-token",
                                                "tsv-scored"};

// ---------------------------------------------------------------------------
// init
// ---------------------------------------------------------------------------

struct InitArgs {
  std::string method;
  std::string source_vocab;
  std::string source_emb;
  std::string source_out_emb;
  std::string target_vocab;
  std::string aux_vocab;
  std::string aux_emb;
  std::string word_vecs;
  std::optional<std::uint64_t> seed;
  double temperature = 1.0;
  std::string out_emb;
  std::string out_out_emb;
  std::string report;
  std::size_t min_group_size = 10;
  std::string missing_aux_policy = "random-fallback";
  bool clp_raw_weights = false;
  bool random_no_copy = false;
  bool byte_level_vocab = false;
  bool strip_marker_fallback = false;
  std::string canon = "exact";
  std::string vocab_format = "auto";
};

void add_init(CLI::App& app, InitArgs& a) {
  auto* cmd = app.add_subcommand("init", "Initialize target embedding matrices");
  cmd->add_option("--method", a.method, "random|clp|heuristics|focus|clp-plus")
      ->required()
      ->check(CLI::IsMember({"random", "clp", "heuristics", "focus", "clp-plus"}));
  cmd->add_option("--source-vocab", a.source_vocab, "Source vocabulary")->required();
  cmd->add_option("--source-emb", a.source_emb, "Source input embeddings (VEMB)")->required();
  cmd->add_option("--source-out-emb", a.source_out_emb,
                  "Source output embeddings (VEMB); makes the model untied");
  cmd->add_option("--target-vocab", a.target_vocab, "Target vocabulary")->required();
  cmd->add_option("--aux-vocab", a.aux_vocab, "Auxiliary model vocabulary (clp, clp-plus)");
  cmd->add_option("--aux-emb", a.aux_emb, "Auxiliary model embeddings (clp, clp-plus)");
  cmd->add_option("--word-vecs", a.word_vecs, "Target word vectors, text format (focus)");
  cmd->add_option("--seed", a.seed, "Sampling seed")->required();
  cmd->add_option("--temperature", a.temperature, "Sparsemax temperature")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out-emb", a.out_emb, "Output input embeddings (VEMB)")->required();
  cmd->add_option("--out-out-emb", a.out_out_emb, "Output output embeddings (VEMB)");
  cmd->add_option("--report", a.report, "Init report (JSON)")->required();
  cmd->add_option("--min-group-size", a.min_group_size, "Heuristics minimum source group size");
  cmd->add_option("--missing-aux-policy", a.missing_aux_policy, "random-fallback|error")
      ->check(CLI::IsMember({"random-fallback", "error"}));
  cmd->add_flag("--clp-raw-weights", a.clp_raw_weights,
                "CLP: normalise raw cosines instead of clamping negatives");
  cmd->add_flag("--random-no-copy", a.random_no_copy,
                "random: sample overlapping rows too instead of copying them");
  cmd->add_flag("--byte-level-vocab", a.byte_level_vocab,
                "Vocabulary strings are GPT-2 byte-mapped (heuristics)");
  cmd->add_flag("--strip-marker-fallback", a.strip_marker_fallback,
                "focus: retry word-vector lookup without the word-boundary marker");
  cmd->add_option("--canon", a.canon, "exact|marker-normalized")
      ->check(CLI::IsMember({"exact", "marker-normalized"}));
  cmd->add_option("--vocab-format", a.vocab_format, "auto|json-map|line-per-token|tsv-scored")
      ->check(CLI::IsMember(kVocabFormats));
}

int run_init(const InitArgs& a, const GlobalOptions& g, std::ostream& err) {
  InitConfig cfg;
  cfg.method = parse_init_method(a.method);
  cfg.seed = *a.seed;
  cfg.sparsemax_temperature = a.temperature;
  cfg.min_group_size = a.min_group_size;
  cfg.missing_aux_policy = parse_missing_aux_policy(a.missing_aux_policy);
  cfg.clp_raw_weights = a.clp_raw_weights;
  cfg.random_copy_overlap = !a.random_no_copy;
  cfg.canonicalization = parse_canonicalization(a.canon);
  cfg.conventions.encoding = a.byte_level_vocab ? TokenEncoding::kByteLevel : TokenEncoding::kText;
  cfg.threads = g.threads;

  const bool needs_aux_model = cfg.method == InitMethod::kClp || cfg.method == InitMethod::kClpPlus;
  if (needs_aux_model) {
    std::string missing;
    if (a.aux_vocab.empty()) missing += " --aux-vocab";
    if (a.aux_emb.empty()) missing += " --aux-emb";
    if (!missing.empty()) throw ValidationError("--method " + a.method + " requires" + missing);
  }
  if (cfg.method == InitMethod::kFocus && a.word_vecs.empty()) {
    throw ValidationError("--method focus requires --word-vecs");
  }
  const bool untied = !a.source_out_emb.empty();
  if (untied && a.out_out_emb.empty()) {
    throw ValidationError("--source-out-emb given (untied model) but --out-out-emb is missing");
  }
  if (!untied && !a.out_out_emb.empty()) {
    throw ValidationError("--out-out-emb given but the source model is tied (no --source-out-emb)");
  }

  require_input("--source-vocab", a.source_vocab);
  require_input("--source-emb", a.source_emb);
  require_input("--target-vocab", a.target_vocab);
  if (untied) require_input("--source-out-emb", a.source_out_emb);
  if (needs_aux_model) {
    require_input("--aux-vocab", a.aux_vocab);
    require_input("--aux-emb", a.aux_emb);
  }
  if (cfg.method == InitMethod::kFocus) require_input("--word-vecs", a.word_vecs);
  require_output("--out-emb", a.out_emb);
  require_output("--report", a.report);
  if (untied) require_output("--out-out-emb", a.out_out_emb);

  ModelBundle source;
  source.vocab = load_vocab(a.source_vocab, resolve_format(a.vocab_format, a.source_vocab));
  source.input_emb = load_matrix(a.source_emb);
  source.tied = !untied;
  if (untied) source.output_emb = load_matrix(a.source_out_emb);
  require_valid(source);
  const auto target = load_vocab(a.target_vocab, resolve_format(a.vocab_format, a.target_vocab));

  std::optional<AuxEmbeddings> aux;
  if (needs_aux_model) {
    aux = load_aux_model(a.aux_vocab, resolve_format(a.vocab_format, a.aux_vocab), a.aux_emb,
                         target);
  } else if (cfg.method == InitMethod::kFocus) {
    aux = load_word_vectors(a.word_vecs, target, {a.strip_marker_fallback});
  }

  auto result = init_target_bundle(source, target, cfg, aux ? &*aux : nullptr);
  if (aux) {
    result.report.warnings.insert(result.report.warnings.end(), aux->warnings.begin(),
                                  aux->warnings.end());
  }

  save_matrix(result.bundle.input_emb, a.out_emb);
  if (untied) save_matrix(*result.bundle.output_emb, a.out_out_emb);

  auto doc = to_json(result.report);
  doc["seed"] = cfg.seed;
  doc["temperature"] = cfg.sparsemax_temperature;
  doc["tied"] = source.tied;
  doc["hidden_size"] = source.input_emb.cols();
  doc["target_vocab_size"] = target.size();
  if (aux) doc["aux_missing"] = aux->missing.size();
  emit_report(doc, a.report);

  if (g.verbose) {
    const auto& r = result.report;
    err << "init " << a.method << ": copied=" << r.copied
        << " similarity=" << r.similarity_initialized << " group=" << r.group_sampled
        << " random=" << r.random_fallback << " warnings=" << r.warnings.size() << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// overlap
// ---------------------------------------------------------------------------

struct OverlapArgs {
  std::string source_vocab;
  std::string target_vocab;
  std::string canon = "exact";
  std::string vocab_format = "auto";
  std::string out;
  std::size_t samples = 10;
};

void add_overlap(CLI::App& app, OverlapArgs& a) {
  auto* cmd = app.add_subcommand("overlap", "Report the token overlap of two vocabularies");
  cmd->add_option("--source-vocab", a.source_vocab, "Source vocabulary")->required();
  cmd->add_option("--target-vocab", a.target_vocab, "Target vocabulary")->required();
  cmd->add_option("--canon", a.canon, "exact|marker-normalized")
      ->check(CLI::IsMember({"exact", "marker-normalized"}));
  cmd->add_option("--vocab-format", a.vocab_format, "auto|json-map|line-per-token|tsv-scored")
      ->check(CLI::IsMember(kVocabFormats));
  cmd->add_option("--out", a.out, "Report path (JSON); stdout when omitted");
  cmd->add_option("--samples", a.samples, "Number of sample pairs in the report");
}

int run_overlap(const OverlapArgs& a, std::ostream& out) {
  require_input("--source-vocab", a.source_vocab);
  require_input("--target-vocab", a.target_vocab);
  if (!a.out.empty()) require_output("--out", a.out);

  const auto source = load_vocab(a.source_vocab, resolve_format(a.vocab_format, a.source_vocab));
  const auto target = load_vocab(a.target_vocab, resolve_format(a.vocab_format, a.target_vocab));
  const auto m = compute_overlap(source, target, parse_canonicalization(a.canon));
  const auto s = overlap_stats(m);

  nlohmann::json doc;
  doc["overlap_count"] = s.overlap_count;
  doc["non_overlap_count"] = s.non_overlap_count;
  doc["overlap_fraction"] = s.overlap_fraction;
  doc["sample_pairs"] = nlohmann::json::array();
  for (std::size_t i = 0; i < m.pairs.size() && i < a.samples; ++i) {
    const auto& p = m.pairs[i];
    doc["sample_pairs"].push_back({{"target_id", p.target},
                                   {"target", target.token(p.target)},
                                   {"source_id", p.source},
                                   {"source", source.token(p.source)}});
  }
  doc["warnings"] = m.warnings;
  if (a.out.empty()) {
    out << doc.dump(2) << "\n";
  } else {
    emit_report(doc, a.out);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// tokenizer loading shared by tokenize and analyze
// ---------------------------------------------------------------------------

struct UnigramFlags {
  std::string unk_token = "<unk>";
  double unk_penalty = -10.0;
  bool add_dummy_prefix = false;
};

void add_unigram_flags(CLI::App* cmd, UnigramFlags& u) {
  cmd->add_option("--unk-token", u.unk_token, "Unigram unknown token");
  cmd->add_option("--unk-penalty", u.unk_penalty, "Unigram score of an unknown character");
  cmd->add_flag("--add-dummy-prefix", u.add_dummy_prefix,
                "Unigram: prefix text with the word-boundary marker");
}

UnigramLoadOptions unigram_options(const UnigramFlags& u) {
  return {u.unk_token, u.unk_penalty, u.add_dummy_prefix};
}

// ---------------------------------------------------------------------------
// tokenize
// ---------------------------------------------------------------------------

struct TokenizeArgs {
  std::string spec_kind;
  std::string vocab;
  std::string merges;
  std::string tokenizer_json;
  std::optional<std::string> text;
  std::string file;
  bool count_only = false;
  bool no_byte_level = false;
  UnigramFlags unigram;
};

void add_tokenize(CLI::App& app, TokenizeArgs& a) {
  auto* cmd = app.add_subcommand("tokenize", "Encode text with a BPE or Unigram spec");
  cmd->add_option("--spec-kind", a.spec_kind, "bpe|unigram")
      ->check(CLI::IsMember({"bpe", "unigram"}));
  cmd->add_option("--vocab", a.vocab, "BPE vocab JSON, or Unigram token<TAB>logprob TSV");
  cmd->add_option("--merges", a.merges, "BPE merges file");
  cmd->add_option("--tokenizer-json", a.tokenizer_json,
                  "Hugging Face tokenizer.json instead of --spec-kind/--vocab");
  auto* text = cmd->add_option("--text", a.text, "Text to encode");
  auto* file = cmd->add_option("--file", a.file, "File whose whole contents are encoded");
  text->excludes(file);
  cmd->add_flag("--count-only", a.count_only, "Print only the token count");
  cmd->add_flag("--no-byte-level", a.no_byte_level, "BPE: skip the byte-to-unicode mapping");
  add_unigram_flags(cmd, a.unigram);
}

TokenizerSpec load_spec(const std::string& kind, const std::string& vocab,
                        const std::string& merges, bool byte_level, const UnigramFlags& u,
                        const std::string& prefix) {
  if (kind == "bpe") {
    if (vocab.empty()) throw ValidationError(prefix + "vocab is required for a BPE spec");
    if (merges.empty()) throw ValidationError(prefix + "merges is required for a BPE spec");
    require_input(prefix + "vocab", vocab);
    require_input(prefix + "merges", merges);
    return load_bpe_spec(vocab, merges, byte_level);
  }
  if (vocab.empty()) throw ValidationError(prefix + "vocab is required for a Unigram spec");
  require_input(prefix + "vocab", vocab);
  return load_unigram_spec(vocab, unigram_options(u));
}

int run_tokenize(const TokenizeArgs& a, std::ostream& out) {
  if (!a.text && a.file.empty()) throw ValidationError("tokenize needs --text or --file");
  TokenizerSpec spec = [&]() -> TokenizerSpec {
    if (!a.tokenizer_json.empty()) {
      require_input("--tokenizer-json", a.tokenizer_json);
      return load_tokenizer_json(a.tokenizer_json);
    }
    if (a.spec_kind.empty()) throw ValidationError("tokenize needs --spec-kind or --tokenizer-json");
    return load_spec(a.spec_kind, a.vocab, a.merges, !a.no_byte_level, a.unigram, "--");
  }();
  std::string text;
  if (a.text) {
    text = *a.text;
  } else {
    require_input("--file", a.file);
    text = read_text(a.file);
  }
  const auto ids = encode(spec, text);
  if (a.count_only) {
    out << ids.size() << "\n";
    return kExitOk;
  }
  for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? " " : "") << ids[i];
  out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

struct AnalyzeArgs {
  std::string source_vocab;
  std::string source_merges;
  std::string source_scores;
  std::string target_vocab;
  std::string target_merges;
  std::string target_scores;
  std::string corpus;
  std::string format = "txt";
  std::string out;
  std::string corpus_id;
  bool per_sample = false;
  bool no_byte_level = false;
  UnigramFlags unigram;
};

void add_analyze(CLI::App& app, AnalyzeArgs& a) {
  auto* cmd = app.add_subcommand("analyze", "Average prompt tokens and speedup of two tokenizers");
  cmd->add_option("--source-vocab", a.source_vocab, "Source BPE vocab JSON");
  cmd->add_option("--source-merges", a.source_merges, "Source BPE merges");
  cmd->add_option("--source-scores", a.source_scores, "Source Unigram token<TAB>logprob TSV");
  cmd->add_option("--target-vocab", a.target_vocab, "Target BPE vocab JSON");
  cmd->add_option("--target-merges", a.target_merges, "Target BPE merges");
  cmd->add_option("--target-scores", a.target_scores, "Target Unigram token<TAB>logprob TSV");
  cmd->add_option("--corpus", a.corpus, "Corpus file")->required();
  cmd->add_option("--format", a.format, "txt|jsonl")->check(CLI::IsMember({"txt", "jsonl"}));
  cmd->add_option("--out", a.out, "Report path (JSON)")->required();
  cmd->add_option("--corpus-id", a.corpus_id, "Corpus name in the report (default: file stem)");
  cmd->add_flag("--per-sample", a.per_sample, "Include per-sample token counts");
  cmd->add_flag("--no-byte-level", a.no_byte_level, "BPE: skip the byte-to-unicode mapping");
  add_unigram_flags(cmd, a.unigram);
}

TokenizerSpec analyze_spec(const std::string& side, const std::string& vocab,
                           const std::string& merges, const std::string& scores,
                           const AnalyzeArgs& a) {
  const std::string prefix = "--" + side + "-";
  if (!scores.empty()) {
    if (!vocab.empty() || !merges.empty()) {
      throw ValidationError(prefix + "scores cannot be combined with " + prefix + "vocab/" +
                            prefix + "merges");
    }
    require_input(prefix + "scores", scores);
    return load_unigram_spec(scores, unigram_options(a.unigram));
  }
  if (vocab.empty() && merges.empty()) {
    throw ValidationError("the " + side + " tokenizer needs " + prefix + "vocab and " + prefix +
                          "merges, or " + prefix + "scores");
  }
  return load_spec("bpe", vocab, merges, !a.no_byte_level, a.unigram, prefix);
}

int run_analyze(const AnalyzeArgs& a, const GlobalOptions& g, std::ostream& err) {
  require_input("--corpus", a.corpus);
  require_output("--out", a.out);
  const auto source = analyze_spec("source", a.source_vocab, a.source_merges, a.source_scores, a);
  const auto target = analyze_spec("target", a.target_vocab, a.target_merges, a.target_scores, a);
  const auto corpus = load_corpus(a.corpus, parse_corpus_format(a.format));

  AnalyzeOptions opts;
  opts.corpus_id = a.corpus_id.empty() ? fs::path(a.corpus).stem().string() : a.corpus_id;
  opts.threads = g.threads;
  opts.keep_per_sample = a.per_sample;
  const auto report = analyze_corpus(source, target, corpus, opts);
  emit_report(report, a.out);
  if (g.verbose) {
    err << "analyze " << report.corpus_id << ": n=" << report.n_samples
        << " source=" << report.avg_tokens_source << " target=" << report.avg_tokens_target
        << " speedup=" << report.speedup_pct << "%\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// stats kendall
// ---------------------------------------------------------------------------

struct KendallArgs {
  std::string x;
  std::string y;
};

void add_stats(CLI::App& app, KendallArgs& a) {
  auto* stats = app.add_subcommand("stats", "Analysis utilities");
  stats->require_subcommand(1);
  auto* kendall = stats->add_subcommand("kendall", "Kendall's tau-b of two numeric series");
  kendall->add_option("--x", a.x, "File of numbers (whitespace separated)")->required();
  kendall->add_option("--y", a.y, "File of numbers (whitespace separated)")->required();
}

std::vector<double> read_series(const std::string& flag, const std::string& path) {
  require_input(flag, path);
  std::istringstream in(read_text(path));
  std::vector<double> v;
  std::string field;
  while (in >> field) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(field, &used));
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw ValidationError(flag + ": '" + field + "' is not a number");
    }
  }
  return v;
}

int run_kendall(const KendallArgs& a, std::ostream& out) {
  const auto x = read_series("--x", a.x);
  const auto y = read_series("--y", a.y);
  const double tau = kendall_tau(x, y);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", tau);
  out << buf << "\n";
  return kExitOk;
}

}  // namespace

nlohmann::json to_json(const InitReport& r) {
  nlohmann::json doc;
  doc["method"] = std::string(to_string(r.method));
  doc["counts"] = {{"copied", r.copied},
                   {"similarity_initialized", r.similarity_initialized},
                   {"group_sampled", r.group_sampled},
                   {"random_fallback", r.random_fallback},
                   {"total", r.total()}};
  doc["overlap"] = {{"overlap_count", r.overlap.overlap_count},
                    {"non_overlap_count", r.overlap.non_overlap_count},
                    {"overlap_fraction", r.overlap.overlap_fraction}};
  if (!r.source_group_sizes.empty()) doc["source_group_sizes"] = r.source_group_sizes;
  doc["warnings"] = r.warnings;
  return doc;
}

nlohmann::json to_json(const EfficiencyReport& r) {
  nlohmann::json doc;
  doc["corpus_id"] = r.corpus_id;
  doc["n_samples"] = r.n_samples;
  doc["avg_tokens_source"] = r.avg_tokens_source;
  doc["avg_tokens_target"] = r.avg_tokens_target;
  doc["speedup_pct"] = r.speedup_pct;
  if (r.per_sample) {
    auto& arr = doc["per_sample"] = nlohmann::json::array();
    for (const auto& s : *r.per_sample) {
      arr.push_back(
          {{"id", s.id}, {"source_tokens", s.source_tokens}, {"target_tokens", s.target_tokens}});
    }
  }
  return doc;
}

EfficiencyReport efficiency_report_from_json(const nlohmann::json& j) {
  try {
    EfficiencyReport r;
    r.corpus_id = j.at("corpus_id").get<std::string>();
    r.n_samples = j.at("n_samples").get<std::size_t>();
    r.avg_tokens_source = j.at("avg_tokens_source").get<double>();
    r.avg_tokens_target = j.at("avg_tokens_target").get<double>();
    r.speedup_pct = j.at("speedup_pct").get<double>();
    if (auto it = j.find("per_sample"); it != j.end()) {
      r.per_sample.emplace();
      for (const auto& s : *it) {
        r.per_sample->push_back({s.at("id").get<std::string>(),
                                 s.at("source_tokens").get<std::size_t>(),
                                 s.at("target_tokens").get<std::size_t>()});
      }
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed efficiency report: ") + e.what());
  }
}

void emit_report(const nlohmann::json& doc, const std::filesystem::path& path) {
  write_text(path, doc.dump(2) + "\n");
}

void emit_report(const InitReport& report, const std::filesystem::path& path) {
  emit_report(to_json(report), path);
}

void emit_report(const EfficiencyReport& report, const std::filesystem::path& path) {
  emit_report(to_json(report), path);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"vocabport: vocabulary transplant and tokenizer efficiency toolkit", "vocabport"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--threads", global.threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--verbose", global.verbose, "Print a summary to stderr");

  InitArgs init_args;
  OverlapArgs overlap_args;
  TokenizeArgs tokenize_args;
  AnalyzeArgs analyze_args;
  KendallArgs kendall_args;
  add_init(app, init_args);
  add_overlap(app, overlap_args);
  add_tokenize(app, tokenize_args);
  add_analyze(app, analyze_args);
  add_stats(app, kendall_args);

  std::vector<const char*> argv{"vocabport"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (app.got_subcommand("init")) return run_init(init_args, global, err);
    if (app.got_subcommand("overlap")) return run_overlap(overlap_args, out);
    if (app.got_subcommand("tokenize")) return run_tokenize(tokenize_args, out);
    if (app.got_subcommand("analyze")) return run_analyze(analyze_args, global, err);
    if (app.got_subcommand("stats")) return run_kendall(kendall_args, out);
  } catch (const Error& e) {
    err << "vocabport: " << e.what() << "\n";
    return e.kind() == ErrorKind::kIo ? kExitIo : kExitValidation;
  } catch (const std::exception& e) {
    err << "vocabport: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace vocabport::cli
