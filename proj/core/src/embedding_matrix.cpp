#include "vocabport/embedding_matrix.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string_view>

#include "file_io.hpp"
#include "vocabport/error.hpp"

namespace vocabport {

namespace {

void check_finite(std::span<const float> data, std::size_t cols) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!std::isfinite(data[i])) {
      const std::size_t r = cols == 0 ? 0 : i / cols;
      const std::size_t c = cols == 0 ? 0 : i % cols;
      throw ValidationError("non-finite value at (row " + std::to_string(r) + ", col " +
                            std::to_string(c) + ")");
    }
  }
}

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
  }
}

template <typename T>
T get_le(std::span<const std::uint8_t> bytes, std::size_t offset) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    v |= static_cast<T>(bytes[offset + i]) << (8 * i);
  }
  return v;
}

}  // namespace

EmbeddingMatrix::EmbeddingMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0f) {}

EmbeddingMatrix::EmbeddingMatrix(std::size_t rows, std::size_t cols, std::vector<float> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw ValidationError("matrix data length " + std::to_string(data_.size()) + " != " +
                          std::to_string(rows_) + " x " + std::to_string(cols_));
  }
  check_finite(data_, cols_);
}

bool operator==(const EmbeddingMatrix& a, const EmbeddingMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
         (a.data_.empty() ||
          std::memcmp(a.data_.data(), b.data_.data(), a.data_.size() * sizeof(float)) == 0);
}

bool rows_bit_equal(std::span<const float> a, std::span<const float> b) {
  return a.size() == b.size() &&
         (a.empty() || std::memcmp(a.data(), b.data(), a.size_bytes()) == 0);
}

ElementStats element_stats(const EmbeddingMatrix& m) {
  const auto& d = m.data();
  if (d.empty()) return {};
  double sum = 0.0;
  for (float v : d) sum += v;
  const double mean = sum / static_cast<double>(d.size());
  double sq = 0.0;
  for (float v : d) {
    const double dv = v - mean;
    sq += dv * dv;
  }
  return {mean, std::sqrt(sq / static_cast<double>(d.size()))};
}

std::vector<std::uint8_t> encode_vemb(const EmbeddingMatrix& m) {
  std::vector<std::uint8_t> out;
  out.reserve(kVembHeaderSize + m.data().size() * 4);
  for (char c : std::string_view("VEMB")) out.push_back(static_cast<std::uint8_t>(c));
  put_le<std::uint32_t>(out, kVembVersion);
  put_le<std::uint64_t>(out, m.rows());
  put_le<std::uint64_t>(out, m.cols());
  put_le<std::uint32_t>(out, kVembDtypeF32);
  for (float v : m.data()) put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

EmbeddingMatrix decode_vemb(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "VEMB", 4) != 0) {
    throw ValidationError("bad magic: not a VEMB file");
  }
  if (bytes.size() < kVembHeaderSize) throw ValidationError("truncated VEMB header");
  const auto version = get_le<std::uint32_t>(bytes, 4);
  if (version != kVembVersion) {
    throw ValidationError("unsupported VEMB version " + std::to_string(version));
  }
  const auto rows = get_le<std::uint64_t>(bytes, 8);
  const auto cols = get_le<std::uint64_t>(bytes, 16);
  const auto dtype = get_le<std::uint32_t>(bytes, 24);
  if (dtype != kVembDtypeF32) {
    throw ValidationError("unsupported VEMB dtype " + std::to_string(dtype));
  }
  const std::size_t payload = bytes.size() - kVembHeaderSize;
  if (cols != 0 && rows > payload / 4 / cols) {
    throw ValidationError("truncated VEMB payload: expected " + std::to_string(rows) + " x " +
                          std::to_string(cols) + " f32 values, found " +
                          std::to_string(payload) + " bytes");
  }
  const std::size_t count = rows * cols;
  if (payload != count * 4) {
    throw ValidationError("VEMB payload has " + std::to_string(payload - count * 4) +
                          " trailing bytes");
  }
  std::vector<float> data(count);
  for (std::size_t i = 0; i < count; ++i) {
    data[i] = std::bit_cast<float>(get_le<std::uint32_t>(bytes, kVembHeaderSize + 4 * i));
  }
  return EmbeddingMatrix(rows, cols, std::move(data));
}

EmbeddingMatrix load_matrix(const std::filesystem::path& path) {
  const std::string raw = detail::read_text_file(path);
  try {
    return decode_vemb({reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()});
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void save_matrix(const EmbeddingMatrix& m, const std::filesystem::path& path) {
  detail::write_file(path, encode_vemb(m));
}

}  // namespace vocabport
