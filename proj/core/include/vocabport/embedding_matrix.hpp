#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace vocabport {

/// Dense row-major |V| x H matrix of f32 values; one row per token.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;

  /// Zero-filled.
  EmbeddingMatrix(std::size_t rows, std::size_t cols);

  /// Throws ValidationError if data.size() != rows * cols or any value is
  /// non-finite.
  EmbeddingMatrix(std::size_t rows, std::size_t cols, std::vector<float> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::span<const float> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<float> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  float at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<float>& data() const noexcept { return data_; }

  friend bool operator==(const EmbeddingMatrix& a, const EmbeddingMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<float> data_;
};

/// Bitwise equality of two rows (distinguishes -0.0 from 0.0).
bool rows_bit_equal(std::span<const float> a, std::span<const float> b);

/// Scalar mean and population standard deviation over every element,
/// accumulated in f64.
struct ElementStats {
  double mean = 0.0;
  double stddev = 0.0;
};

ElementStats element_stats(const EmbeddingMatrix& m);

// VEMB container, little-endian:
//   "VEMB" | u32 version=1 | u64 rows | u64 cols | u32 dtype (0=f32) | f32[rows*cols]
inline constexpr std::uint32_t kVembVersion = 1;
inline constexpr std::uint32_t kVembDtypeF32 = 0;
inline constexpr std::size_t kVembHeaderSize = 4 + 4 + 8 + 8 + 4;

EmbeddingMatrix load_matrix(const std::filesystem::path& path);
void save_matrix(const EmbeddingMatrix& m, const std::filesystem::path& path);

/// In-memory codec behind load_matrix/save_matrix.
std::vector<std::uint8_t> encode_vemb(const EmbeddingMatrix& m);
EmbeddingMatrix decode_vemb(std::span<const std::uint8_t> bytes);

}  // namespace vocabport
