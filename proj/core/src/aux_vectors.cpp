#include "vocabport/aux_vectors.hpp"

#include <charconv>
#include <cmath>
#include <unordered_map>

#include "file_io.hpp"
#include "vocabport/error.hpp"
#include "vocabport/utf8.hpp"

namespace vocabport {

namespace {

constexpr std::string_view kMarkers[] = {"\xC4\xA0", "\xE2\x96\x81"};

std::optional<std::string_view> strip_marker(std::string_view token) {
  for (auto m : kMarkers) {
    if (token.starts_with(m) && token.size() > m.size()) return token.substr(m.size());
  }
  return std::nullopt;
}

std::string at_line(std::string_view origin, std::size_t line) {
  return std::string(origin) + ":" + std::to_string(line);
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos >= line.size()) break;
    auto end = line.find(' ', pos);
    if (end == std::string_view::npos) end = line.size();
    out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

std::size_t parse_count(std::string_view field, std::string_view what, std::string_view origin) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ValidationError(at_line(origin, 1) + ": bad " + std::string(what) + " '" +
                          std::string(field) + "' in header");
  }
  return v;
}

}  // namespace

AuxEmbeddings aux_from_aligned_matrix(AuxKind kind, EmbeddingMatrix matrix) {
  AuxEmbeddings a;
  a.kind = kind;
  a.alignment.resize(matrix.rows());
  for (std::size_t r = 0; r < matrix.rows(); ++r) a.alignment[r] = r;
  a.matrix = std::move(matrix);
  return a;
}

AuxEmbeddings align_aux_model(const Vocabulary& aux_vocab, EmbeddingMatrix matrix,
                              const Vocabulary& target) {
  if (matrix.rows() != aux_vocab.size()) {
    throw ValidationError("auxiliary matrix has " + std::to_string(matrix.rows()) +
                          " rows but its vocabulary has " + std::to_string(aux_vocab.size()) +
                          " tokens");
  }
  AuxEmbeddings a;
  a.kind = AuxKind::kAuxModel;
  a.alignment.resize(target.size());
  for (TokenId t = 0; t < target.size(); ++t) {
    a.alignment[t] = aux_vocab.find(target.token(t));
    if (!a.alignment[t]) a.missing.push_back(t);
  }
  a.matrix = std::move(matrix);
  return a;
}

AuxEmbeddings load_aux_model(const std::filesystem::path& vocab_path, VocabFormat vocab_format,
                             const std::filesystem::path& matrix_path,
                             const Vocabulary& target) {
  auto aux_vocab = load_vocab(vocab_path, vocab_format);
  auto matrix = load_matrix(matrix_path);
  return align_aux_model(aux_vocab, std::move(matrix), target);
}

AuxEmbeddings parse_word_vectors(std::string_view contents, const Vocabulary& target,
                                 const WordVectorOptions& options, std::string_view origin) {
  AuxEmbeddings a;
  a.kind = AuxKind::kWordVectors;

  std::size_t pos = 0;
  std::size_t line_no = 0;
  auto next_line = [&]() -> std::optional<std::string_view> {
    if (pos >= contents.size()) return std::nullopt;
    auto nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    auto line = contents.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
  };

  auto header = next_line();
  if (!header) throw ValidationError(std::string(origin) + ": empty word-vector file");
  auto header_fields = split_spaces(*header);
  if (header_fields.size() != 2) {
    throw ValidationError(at_line(origin, 1) + ": header must be 'count dim'");
  }
  const std::size_t declared_count = parse_count(header_fields[0], "count", origin);
  const std::size_t dim = parse_count(header_fields[1], "dim", origin);
  if (dim == 0) throw ValidationError(at_line(origin, 1) + ": dimension must be positive");

  std::unordered_map<std::string, std::vector<float>> vectors;
  std::size_t seen = 0;
  while (auto line = next_line()) {
    if (line->empty()) continue;
    if (auto bad = utf8::find_invalid(*line)) {
      throw ValidationError(at_line(origin, line_no) + ": malformed UTF-8 at byte " +
                            std::to_string(*bad));
    }
    auto fields = split_spaces(*line);
    if (fields.size() != dim + 1) {
      throw ValidationError(at_line(origin, line_no) + ": expected " + std::to_string(dim) +
                            " values, found " +
                            std::to_string(fields.empty() ? 0 : fields.size() - 1));
    }
    ++seen;
    std::vector<float> values(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      auto f = fields[i + 1];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), values[i]);
      if (ec != std::errc{} || ptr != f.data() + f.size() || !std::isfinite(values[i])) {
        throw ValidationError(at_line(origin, line_no) + ": bad value '" + std::string(f) + "'");
      }
    }
    std::string word(fields[0]);
    if (vectors.contains(word)) {
      a.warnings.push_back(at_line(origin, line_no) + ": duplicate word '" + word +
                           "', keeping the first vector");
      continue;
    }
    vectors.emplace(std::move(word), std::move(values));
  }
  if (seen != declared_count) {
    a.warnings.push_back(std::string(origin) + ": header declares " +
                         std::to_string(declared_count) + " vectors, found " +
                         std::to_string(seen));
  }

  a.alignment.resize(target.size());
  std::vector<float> data;
  std::size_t rows = 0;
  for (TokenId t = 0; t < target.size(); ++t) {
    const auto& tok = target.token(t);
    auto it = vectors.find(tok);
    if (it == vectors.end() && options.strip_marker_fallback) {
      if (auto stripped = strip_marker(tok)) it = vectors.find(std::string(*stripped));
    }
    if (it == vectors.end()) {
      a.missing.push_back(t);
      continue;
    }
    a.alignment[t] = rows++;
    data.insert(data.end(), it->second.begin(), it->second.end());
  }
  a.matrix = EmbeddingMatrix(rows, dim, std::move(data));
  return a;
}

AuxEmbeddings load_word_vectors(const std::filesystem::path& path, const Vocabulary& target,
                                const WordVectorOptions& options) {
  return parse_word_vectors(detail::read_text_file(path), target, options, path.string());
}

std::optional<std::span<const float>> aux_row(const AuxEmbeddings& a, TokenId target_id) {
  if (target_id >= a.alignment.size()) {
    throw std::out_of_range("target id " + std::to_string(target_id) + " >= " +
                            std::to_string(a.alignment.size()));
  }
  const auto& r = a.alignment[target_id];
  if (!r) return std::nullopt;
  return a.matrix.row(*r);
}

}  // namespace vocabport
