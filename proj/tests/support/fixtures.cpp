#include "fixtures.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "vocabport/byte_level.hpp"
#include "vocabport/utf8.hpp"

namespace fixtures {

namespace fs = std::filesystem;

TempDir::TempDir() {
  static std::uint64_t counter = 0;
  std::random_device rd;
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto p = fs::temp_directory_path() /
             ("vocabport-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    if (fs::create_directory(p)) {
      path_ = p;
      return;
    }
  }
  throw std::runtime_error("cannot create a temporary directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void write_file(const fs::path& p, const std::string& contents) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << contents;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

vocabport::EmbeddingMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed,
                                         double mean, double stddev) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(mean, stddev);
  std::vector<float> data(rows * cols);
  for (auto& v : data) v = static_cast<float>(normal(rng));
  return vocabport::EmbeddingMatrix(rows, cols, std::move(data));
}

namespace {

enum class Alphabet { kLatin, kCyrillic, kGreek };

// Three letters, base-k digits of n. Injective for n < k^3.
std::string word(Alphabet a, std::size_t n) {
  char32_t first = U'a';
  std::size_t k = 26;
  if (a == Alphabet::kCyrillic) {
    first = U'а';
    k = 32;
  } else if (a == Alphabet::kGreek) {
    first = U'α';
    k = 25;
  }
  if (n >= k * k * k) throw std::invalid_argument("word index too large");
  std::string out;
  for (int d = 0; d < 3; ++d) {
    vocabport::utf8::append(out, first + static_cast<char32_t>(n % k));
    n /= k;
  }
  return out;
}

std::string marked(bool initial, const std::string& w) { return initial ? "▁" + w : w; }

}  // namespace

Synthetic make_synthetic(std::size_t source_size, std::size_t target_size, std::size_t overlap,
                         std::size_t hidden, bool untied, std::uint64_t seed) {
  if (overlap > source_size || overlap > target_size) {
    throw std::invalid_argument("overlap larger than a vocabulary");
  }
  std::vector<std::string> src;
  src.reserve(source_size);
  for (std::size_t i = 0; i < source_size; ++i) {
    const auto a = i % 5 == 0 ? Alphabet::kCyrillic : Alphabet::kLatin;
    src.push_back(marked(i % 2 == 0, word(a, i)));
  }

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> ids(source_size);
  for (std::size_t i = 0; i < source_size; ++i) ids[i] = i;
  std::shuffle(ids.begin(), ids.end(), rng);
  ids.resize(overlap);

  std::vector<std::string> tgt;
  tgt.reserve(target_size);
  for (auto id : ids) tgt.push_back(src[id]);
  for (std::size_t j = 0; tgt.size() < target_size; ++j) {
    const std::size_t r = j % 10;
    const auto a = r < 6 ? Alphabet::kLatin : (r < 9 ? Alphabet::kCyrillic : Alphabet::kGreek);
    tgt.push_back(marked(j % 2 == 1, word(a, source_size + 1000 + j)));
  }
  std::shuffle(tgt.begin(), tgt.end(), rng);

  Synthetic s;
  s.source.vocab = vocabport::Vocabulary::from_tokens(std::move(src));
  s.source.input_emb = random_matrix(source_size, hidden, seed + 1, 0.1, 0.5);
  s.source.tied = !untied;
  if (untied) s.source.output_emb = random_matrix(source_size, hidden, seed + 2, -0.2, 0.8);
  s.target = vocabport::Vocabulary::from_tokens(std::move(tgt));
  s.aux = random_matrix(target_size, 8, seed + 3);
  s.overlap = overlap;
  return s;
}

void write_synthetic(const Synthetic& s, const fs::path& dir) {
  auto lines = [](const vocabport::Vocabulary& v) {
    std::string out;
    for (const auto& t : v.tokens()) out += t + "\n";
    return out;
  };
  write_file(dir / "source.txt", lines(s.source.vocab));
  write_file(dir / "target.txt", lines(s.target));
  write_file(dir / "aux.txt", lines(s.target));
  vocabport::save_matrix(s.source.input_emb, dir / "source.vemb");
  if (s.source.output_emb) vocabport::save_matrix(*s.source.output_emb, dir / "source_out.vemb");
  vocabport::save_matrix(s.aux, dir / "aux.vemb");

  std::string vec = std::to_string(s.aux.rows()) + " " + std::to_string(s.aux.cols()) + "\n";
  char buf[32];
  for (std::size_t r = 0; r < s.aux.rows(); ++r) {
    vec += s.target.token(r);
    for (float v : s.aux.row(r)) {
      std::snprintf(buf, sizeof buf, " %.9g", static_cast<double>(v));
      vec += buf;
    }
    vec += "\n";
  }
  write_file(dir / "vectors.txt", vec);
}

std::string random_utf8(std::mt19937_64& rng, std::size_t max_chars) {
  std::uniform_int_distribution<std::size_t> len(0, max_chars);
  std::uniform_int_distribution<int> kind(0, 9);
  const std::size_t n = len(rng);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    char32_t cp = 0;
    switch (kind(rng)) {
      case 0:
        cp = U' ';
        break;
      case 1:
        cp = std::uniform_int_distribution<char32_t>(0x01, 0x1F)(rng);
        break;
      case 2:
      case 3:
      case 4:
        cp = std::uniform_int_distribution<char32_t>(0x21, 0x7E)(rng);
        break;
      case 5:
        cp = std::uniform_int_distribution<char32_t>(0x80, 0x7FF)(rng);
        break;
      case 6:
        cp = std::uniform_int_distribution<char32_t>(0x0600, 0x06FF)(rng);
        break;
      case 7:
        cp = std::uniform_int_distribution<char32_t>(0x4E00, 0x9FFF)(rng);
        break;
      case 8:
        cp = std::uniform_int_distribution<char32_t>(0x1F300, 0x1FAFF)(rng);
        break;
      default:
        do {
          cp = std::uniform_int_distribution<char32_t>(0x800, 0x10FFFF)(rng);
        } while (cp >= 0xD800 && cp <= 0xDFFF);
    }
    vocabport::utf8::append(out, cp);
  }
  return out;
}

ToyBpe make_toy_bpe(std::size_t n_merges, std::uint64_t seed) {
  std::vector<std::string> tokens;
  for (int b = 0; b < 256; ++b) {
    tokens.push_back(vocabport::utf8::encode(vocabport::byte_level::byte_to_char(static_cast<std::uint8_t>(b))));
  }
  std::vector<std::string> pool = {"a", "b", "c", "d", "e", "Ġ"};
  std::set<std::string> known(tokens.begin(), tokens.end());
  std::set<std::pair<std::string, std::string>> used;
  std::vector<vocabport::MergeRule> merges;
  std::mt19937_64 rng(seed);
  while (merges.size() < n_merges) {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    auto l = pool[pick(rng)];
    auto r = pool[pick(rng)];
    if (!used.insert({l, r}).second) continue;
    merges.emplace_back(l, r);
    const auto joined = l + r;
    if (known.insert(joined).second) {
      tokens.push_back(joined);
      pool.push_back(joined);
    }
  }
  auto spec = vocabport::BpeSpec::create(vocabport::Vocabulary::from_tokens(tokens), merges, true);
  return {merges, std::move(spec)};
}

}  // namespace fixtures
