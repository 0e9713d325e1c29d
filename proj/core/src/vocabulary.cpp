#include "vocabport/vocabulary.hpp"

#include <charconv>
#include <cmath>
#include <unordered_set>

#include <json.hpp>

#include "file_io.hpp"
#include "vocabport/error.hpp"
#include "vocabport/utf8.hpp"

namespace vocabport {

namespace {

std::string at_line(std::string_view origin, std::size_t line) {
  return std::string(origin) + ":" + std::to_string(line);
}

/// Calls fn(line_number, line) for every line; a trailing newline does not
/// produce an extra empty line.
template <typename Fn>
void for_each_line(std::string_view contents, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < contents.size()) {
    auto nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    fn(++line_no, contents.substr(pos, nl - pos));
    pos = nl + 1;
  }
}

void check_line_utf8(std::string_view line, std::string_view origin, std::size_t line_no) {
  if (auto bad = utf8::find_invalid(line)) {
    throw ValidationError(at_line(origin, line_no) + ": malformed UTF-8 at byte " +
                          std::to_string(*bad));
  }
}

struct TsvEntry {
  std::string_view token;
  double score = 0.0;
};

TsvEntry split_tsv(std::string_view line, std::string_view origin, std::size_t line_no) {
  auto tab = line.rfind('\t');
  if (tab == std::string_view::npos) {
    throw ValidationError(at_line(origin, line_no) + ": expected token<TAB>score");
  }
  TsvEntry e{line.substr(0, tab), 0.0};
  auto score = line.substr(tab + 1);
  if (!score.empty() && score.back() == '\r') score.remove_suffix(1);
  auto [ptr, ec] = std::from_chars(score.data(), score.data() + score.size(), e.score);
  if (ec != std::errc{} || ptr != score.data() + score.size() || !std::isfinite(e.score)) {
    throw ValidationError(at_line(origin, line_no) + ": bad score '" + std::string(score) + "'");
  }
  return e;
}

Vocabulary parse_json_map(std::string_view contents, std::string_view origin) {
  using nlohmann::json;
  std::unordered_set<std::string> seen;
  json::parser_callback_t on_event = [&](int depth, json::parse_event_t event, json& parsed) {
    if (event == json::parse_event_t::key && depth == 1) {
      auto key = parsed.get<std::string>();
      if (!seen.insert(key).second) {
        throw ValidationError(std::string(origin) + ": duplicate token '" + key + "'");
      }
    }
    return true;
  };

  json doc;
  try {
    doc = json::parse(contents, on_event);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string(origin) + ": malformed JSON at byte " +
                          std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) {
    throw ValidationError(std::string(origin) + ": expected a JSON object token -> id");
  }

  const std::size_t n = doc.size();
  std::vector<std::string> tokens(n);
  std::vector<bool> filled(n, false);
  for (const auto& [token, id_value] : doc.items()) {
    if (!id_value.is_number_integer()) {
      throw ValidationError(std::string(origin) + ": id of '" + token + "' is not an integer");
    }
    if (!utf8::is_valid(token)) {
      throw ValidationError(std::string(origin) + ": malformed UTF-8 in a token key");
    }
    const auto id = id_value.get<std::int64_t>();
    if (id < 0 || static_cast<std::uint64_t>(id) >= n) {
      throw ValidationError(std::string(origin) + ": non-dense ids: '" + token + "' has id " +
                            std::to_string(id) + " outside 0.." + std::to_string(n - 1));
    }
    if (filled[id]) {
      throw ValidationError(std::string(origin) + ": non-dense ids: id " + std::to_string(id) +
                            " assigned twice");
    }
    filled[id] = true;
    tokens[id] = token;
  }
  return Vocabulary::from_tokens(std::move(tokens));
}

}  // namespace

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens) {
  Vocabulary v;
  v.index_.reserve(tokens.size());
  for (TokenId id = 0; id < tokens.size(); ++id) {
    auto [it, inserted] = v.index_.emplace(tokens[id], id);
    if (!inserted) {
      throw ValidationError("duplicate token '" + tokens[id] + "' at ids " +
                            std::to_string(it->second) + " and " + std::to_string(id));
    }
  }
  v.tokens_ = std::move(tokens);
  return v;
}

const std::string& Vocabulary::token(TokenId id) const {
  if (id >= tokens_.size()) {
    throw std::out_of_range("token id " + std::to_string(id) + " >= vocabulary size " +
                            std::to_string(tokens_.size()));
  }
  return tokens_[id];
}

std::optional<TokenId> Vocabulary::find(std::string_view token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VocabFormat parse_vocab_format(std::string_view name) {
  if (name == "json-map") return VocabFormat::kJsonMap;
  if (name == "line-per-token") return VocabFormat::kLinePerToken;
  if (name == "tsv-scored") return VocabFormat::kTsvScored;
  throw ValidationError("unknown vocabulary format '" + std::string(name) + "'");
}

VocabFormat vocab_format_for_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".json") return VocabFormat::kJsonMap;
  if (ext == ".tsv") return VocabFormat::kTsvScored;
  return VocabFormat::kLinePerToken;
}

Vocabulary parse_vocab(std::string_view contents, VocabFormat format, std::string_view origin) {
  switch (format) {
    case VocabFormat::kJsonMap:
      return parse_json_map(contents, origin);
    case VocabFormat::kTsvScored:
      return parse_scored_vocab(contents, origin).vocab;
    case VocabFormat::kLinePerToken:
      break;
  }

  std::vector<std::string> tokens;
  std::unordered_map<std::string_view, std::size_t> first_line;
  for_each_line(contents, [&](std::size_t line_no, std::string_view line) {
    check_line_utf8(line, origin, line_no);
    if (line.empty()) {
      throw ValidationError(at_line(origin, line_no) + ": empty token");
    }
    auto [it, inserted] = first_line.emplace(line, line_no);
    if (!inserted) {
      throw ValidationError(at_line(origin, line_no) + ": duplicate token '" + std::string(line) +
                            "' (first at line " + std::to_string(it->second) + ")");
    }
    tokens.emplace_back(line);
  });
  return Vocabulary::from_tokens(std::move(tokens));
}

Vocabulary load_vocab(const std::filesystem::path& path, VocabFormat format) {
  return parse_vocab(detail::read_text_file(path), format, path.string());
}

ScoredVocabulary parse_scored_vocab(std::string_view contents, std::string_view origin) {
  std::vector<std::string> tokens;
  std::vector<double> scores;
  std::unordered_map<std::string_view, std::size_t> first_line;
  for_each_line(contents, [&](std::size_t line_no, std::string_view line) {
    check_line_utf8(line, origin, line_no);
    auto entry = split_tsv(line, origin, line_no);
    if (entry.token.empty()) {
      throw ValidationError(at_line(origin, line_no) + ": empty token");
    }
    auto [it, inserted] = first_line.emplace(entry.token, line_no);
    if (!inserted) {
      throw ValidationError(at_line(origin, line_no) + ": duplicate token '" +
                            std::string(entry.token) + "' (first at line " +
                            std::to_string(it->second) + ")");
    }
    tokens.emplace_back(entry.token);
    scores.push_back(entry.score);
  });
  return {Vocabulary::from_tokens(std::move(tokens)), std::move(scores)};
}

ScoredVocabulary load_scored_vocab(const std::filesystem::path& path) {
  return parse_scored_vocab(detail::read_text_file(path), path.string());
}

void save_vocab_lines(const Vocabulary& vocab, const std::filesystem::path& path) {
  std::string out;
  for (const auto& t : vocab.tokens()) {
    if (t.find('\n') != std::string::npos) {
      throw ValidationError("token containing a newline cannot be saved line-per-token");
    }
    out += t;
    out += '\n';
  }
  detail::write_text_file(path, out);
}

void save_vocab_json(const Vocabulary& vocab, const std::filesystem::path& path) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (TokenId id = 0; id < vocab.size(); ++id) doc[vocab.token(id)] = id;
  detail::write_text_file(path, doc.dump() + "\n");
}

}  // namespace vocabport
