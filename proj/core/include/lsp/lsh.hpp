#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "lsp/common.hpp"

namespace lsp {

/// lsp-t: thresholded binary signature, MD5-digested into m buckets.
/// lsp-p: quantized random projection with bin width l.
enum class LshVariant { kThreshold, kProjection };

std::string_view to_string(LshVariant v) noexcept;
LshVariant parse_lsh_variant(std::string_view text);

struct LshFamilyConfig {
  LshVariant variant = LshVariant::kProjection;
  std::size_t k = 4;
  std::size_t d = 1;
  std::uint64_t m = 65536;  // lsp-t only; power of two
  double l = 1.0;           // lsp-p only
  std::uint64_t master_seed = 0;

  /// Throws a usage error naming the first violated constraint.
  void validate() const;
};

/// A seeded set of k hash functions R^d -> integer bucket.
///
/// Function i's parameters come from a generator seeded with
/// mix_seed(master_seed, i), so a family with more functions extends one
/// with fewer, and parameters never need to be stored to be reproduced.
/// Parameters can also be supplied directly (fixtures, sidecar files).
class LshFamily {
 public:
  explicit LshFamily(const LshFamilyConfig& config);

  /// Explicit parameters: `weights` is k x d, `offsets` has k entries (lsp-p)
  /// or is empty (lsp-t).
  LshFamily(const LshFamilyConfig& config, Matrix weights, std::vector<double> offsets);

  const LshFamilyConfig& config() const noexcept { return config_; }
  std::size_t size() const noexcept { return config_.k; }
  std::size_t dim() const noexcept { return config_.d; }
  LshVariant variant() const noexcept { return config_.variant; }

  std::span<const double> weights(std::size_t i) const noexcept { return weights_.row(i); }
  double offset(std::size_t i) const noexcept { return offsets_.empty() ? 0.0 : offsets_[i]; }
  const Matrix& weight_matrix() const noexcept { return weights_; }
  const std::vector<double>& offsets() const noexcept { return offsets_; }

  /// Bucket of x under function i, for either variant. Checked.
  std::int64_t hash(std::size_t i, std::span<const double> x) const;

  /// Unchecked variant used by the pruning loop after validating once.
  std::int64_t hash_unchecked(std::size_t i, std::span<const double> x) const;

  /// Binary-signature bucket in [0, m).
  std::uint64_t hash_t(std::size_t i, std::span<const double> x) const;
  /// Projection bucket floor((<x, w_i> + b_i) / l).
  std::int64_t hash_p(std::size_t i, std::span<const double> x) const;

  /// Signature bits packed MSB-first into ceil(d/8) bytes, zero padded.
  std::vector<std::uint8_t> signature(std::size_t i, std::span<const double> x) const;

 private:
  void check(std::size_t i, std::span<const double> x) const;
  std::uint64_t hash_t_unchecked(std::size_t i, std::span<const double> x) const;
  std::int64_t hash_p_unchecked(std::size_t i, std::span<const double> x) const;

  LshFamilyConfig config_;
  Matrix weights_;
  std::vector<double> offsets_;
};

/// Fraction of `trials` freshly seeded functions (config.master_seed,
/// indices 0..trials-1) under which each pair collides.
std::vector<double> collision_rate(const LshFamilyConfig& config,
                                   std::span<const std::pair<std::vector<double>, std::vector<double>>> pairs,
                                   std::size_t trials);

}  // namespace lsp
