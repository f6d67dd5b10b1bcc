#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsp {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

/// Error categories map one-to-one onto CLI exit codes (usage=1, data=2, internal=3).
enum class ErrorKind { kUsage, kData, kInternal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string category, const std::string& detail)
      : std::runtime_error(category + ": " + detail), kind_(kind), category_(std::move(category)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& category() const noexcept { return category_; }

 private:
  ErrorKind kind_;
  std::string category_;
};

inline Error data_error(std::string category, const std::string& detail) {
  return Error(ErrorKind::kData, std::move(category), detail);
}

inline Error usage_error(std::string category, const std::string& detail) {
  return Error(ErrorKind::kUsage, std::move(category), detail);
}

/// Dense row-major matrix of doubles. A 0-column matrix with any row count
/// means "attribute absent".
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return cols_ == 0 || rows_ == 0; }

  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  void append_row(std::span<const double> values);

  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// SplitMix64 finalizer (Steele, Lea & Flood 2014). All derived seeds in the
/// library go through this function so runs are reproducible from one seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Stable mix of a base seed with a stream index.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0xD1B54A32D192ED03ULL));
}

constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
  return mix_seed(mix_seed(seed, a), b);
}

}  // namespace lsp
