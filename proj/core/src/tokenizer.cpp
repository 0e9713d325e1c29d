#include "vocabport/tokenizer.hpp"

#include <json.hpp>

#include "file_io.hpp"
#include "vocabport/error.hpp"

namespace vocabport {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool mentions_byte_level(const nlohmann::json& node) {
  if (node.is_object()) {
    if (auto it = node.find("type"); it != node.end() && *it == "ByteLevel") return true;
    for (const auto& [k, v] : node.items()) {
      if (mentions_byte_level(v)) return true;
    }
  } else if (node.is_array()) {
    for (const auto& v : node) {
      if (mentions_byte_level(v)) return true;
    }
  }
  return false;
}

BpeSpec bpe_from_json(const nlohmann::json& doc, const std::string& origin) {
  const auto& model = doc.at("model");
  const auto& vocab_obj = model.at("vocab");
  std::vector<std::string> tokens(vocab_obj.size());
  std::vector<bool> filled(tokens.size(), false);
  for (const auto& [tok, id_value] : vocab_obj.items()) {
    const auto id = id_value.get<std::int64_t>();
    if (id < 0 || static_cast<std::size_t>(id) >= tokens.size() || filled[id]) {
      throw ValidationError(origin + ": non-dense ids in model.vocab");
    }
    tokens[id] = tok;
    filled[id] = true;
  }
  std::vector<MergeRule> merges;
  for (const auto& m : model.at("merges")) {
    if (m.is_string()) {
      const auto s = m.get<std::string>();
      const auto sp = s.find(' ');
      if (sp == std::string::npos) throw ValidationError(origin + ": bad merge '" + s + "'");
      merges.emplace_back(s.substr(0, sp), s.substr(sp + 1));
    } else {
      merges.emplace_back(m.at(0).get<std::string>(), m.at(1).get<std::string>());
    }
  }
  const bool byte_level = mentions_byte_level(doc.value("pre_tokenizer", nlohmann::json{})) ||
                          mentions_byte_level(doc.value("decoder", nlohmann::json{}));
  return BpeSpec::create(Vocabulary::from_tokens(std::move(tokens)), std::move(merges),
                         byte_level);
}

UnigramSpec unigram_from_json(const nlohmann::json& doc) {
  const auto& model = doc.at("model");
  std::vector<std::string> tokens;
  std::vector<double> scores;
  for (const auto& entry : model.at("vocab")) {
    tokens.push_back(entry.at(0).get<std::string>());
    scores.push_back(entry.at(1).get<double>());
  }
  std::string unk = "<unk>";
  if (auto it = model.find("unk_id"); it != model.end() && it->is_number_integer()) {
    unk = tokens.at(it->get<std::size_t>());
  }
  auto vocab = Vocabulary::from_tokens(std::move(tokens));
  return UnigramSpec::create(std::move(vocab), std::move(scores), unk);
}

}  // namespace

std::vector<TokenId> encode(const TokenizerSpec& spec, std::string_view text) {
  return std::visit(Overloaded{
                        [&](const BpeSpec& s) { return bpe_encode(s, text); },
                        [&](const UnigramSpec& s) { return unigram_encode(s, text); },
                    },
                    spec);
}

std::size_t count_tokens(const TokenizerSpec& spec, std::string_view text) {
  return encode(spec, text).size();
}

const Vocabulary& spec_vocab(const TokenizerSpec& spec) {
  return std::visit([](const auto& s) -> const Vocabulary& { return s.vocab(); }, spec);
}

TokenizerSpec load_tokenizer_json(const std::filesystem::path& path) {
  const auto origin = path.string();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(detail::read_text_file(path));
    const auto type = doc.at("model").value("type", std::string("BPE"));
    if (type == "BPE") return bpe_from_json(doc, origin);
    if (type == "Unigram") return unigram_from_json(doc);
    throw ValidationError(origin + ": unsupported tokenizer model type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(origin + ": " + e.what());
  }
}

}  // namespace vocabport
