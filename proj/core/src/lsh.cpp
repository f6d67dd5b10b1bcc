#include "lsp/lsh.hpp"

#include <cmath>
#include <random>
#include <string>

#include "lsp/md5.hpp"

namespace lsp {

std::string_view to_string(LshVariant v) noexcept {
  return v == LshVariant::kThreshold ? "lsp-t" : "lsp-p";
}

LshVariant parse_lsh_variant(std::string_view text) {
  if (text == "lsp-t") return LshVariant::kThreshold;
  if (text == "lsp-p") return LshVariant::kProjection;
  throw usage_error("bad-method", std::string(text));
}

void LshFamilyConfig::validate() const {
  if (k < 1) throw usage_error("bad-config", "k must be >= 1");
  if (d < 1) throw usage_error("bad-config", "d must be >= 1");
  if (variant == LshVariant::kThreshold) {
    if (m < 2 || (m & (m - 1)) != 0) {
      throw usage_error("bad-config", "m must be a power of two >= 2, got " + std::to_string(m));
    }
  } else if (!(l > 0.0) || !std::isfinite(l)) {
    throw usage_error("bad-config", "l must be a positive finite number");
  }
}

LshFamily::LshFamily(const LshFamilyConfig& config) : config_(config) {
  config_.validate();
  weights_ = Matrix(config_.k, config_.d);
  if (config_.variant == LshVariant::kProjection) offsets_.resize(config_.k);
  for (std::size_t i = 0; i < config_.k; ++i) {
    std::mt19937_64 rng(mix_seed(config_.master_seed, i));
    std::normal_distribution<double> normal(0.0, 1.0);
    for (double& w : weights_.row(i)) w = normal(rng);
    if (config_.variant == LshVariant::kProjection) {
      offsets_[i] = std::uniform_real_distribution<double>(0.0, config_.l)(rng);
    }
  }
}

LshFamily::LshFamily(const LshFamilyConfig& config, Matrix weights, std::vector<double> offsets)
    : config_(config), weights_(std::move(weights)), offsets_(std::move(offsets)) {
  config_.validate();
  if (weights_.rows() != config_.k || weights_.cols() != config_.d) {
    throw data_error("dimension-mismatch", "family weights must be k x d");
  }
  const std::size_t want = config_.variant == LshVariant::kProjection ? config_.k : 0;
  if (offsets_.size() != want) throw data_error("dimension-mismatch", "family offsets must have k entries for lsp-p");
}

void LshFamily::check(std::size_t i, std::span<const double> x) const {
  if (i >= config_.k) {
    throw usage_error("out-of-range-index", "hash function " + std::to_string(i) + " of " + std::to_string(config_.k));
  }
  if (x.size() != config_.d) {
    throw data_error("dimension-mismatch",
                     "input of dimension " + std::to_string(x.size()) + ", family expects " + std::to_string(config_.d));
  }
}

std::vector<std::uint8_t> LshFamily::signature(std::size_t i, std::span<const double> x) const {
  check(i, x);
  const auto w = weights_.row(i);
  std::vector<std::uint8_t> bytes((x.size() + 7) / 8, 0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] > w[j]) bytes[j / 8] |= static_cast<std::uint8_t>(0x80u >> (j % 8));
  }
  return bytes;
}

std::uint64_t LshFamily::hash_t_unchecked(std::size_t i, std::span<const double> x) const {
  const auto w = weights_.row(i);
  // Signatures up to 512 bits stay on the stack.
  constexpr std::size_t kInline = 64;
  std::uint8_t small[kInline] = {};
  std::vector<std::uint8_t> large;
  const std::size_t nbytes = (x.size() + 7) / 8;
  std::uint8_t* bytes = small;
  if (nbytes > kInline) {
    large.assign(nbytes, 0);
    bytes = large.data();
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] > w[j]) bytes[j / 8] |= static_cast<std::uint8_t>(0x80u >> (j % 8));
  }
  return md5_prefix64({bytes, nbytes}) % config_.m;
}

std::int64_t LshFamily::hash_p_unchecked(std::size_t i, std::span<const double> x) const {
  const auto w = weights_.row(i);
  double dot = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) dot += x[j] * w[j];
  const double q = std::floor((dot + offsets_[i]) / config_.l);
  if (!std::isfinite(q) || std::fabs(q) >= 9.2e18) {
    throw data_error("non-finite-input", "projection bucket is not a finite 64-bit integer");
  }
  return static_cast<std::int64_t>(q);
}

std::uint64_t LshFamily::hash_t(std::size_t i, std::span<const double> x) const {
  check(i, x);
  if (config_.variant != LshVariant::kThreshold) throw usage_error("wrong-variant", "hash_t on an lsp-p family");
  return hash_t_unchecked(i, x);
}

std::int64_t LshFamily::hash_p(std::size_t i, std::span<const double> x) const {
  check(i, x);
  if (config_.variant != LshVariant::kProjection) throw usage_error("wrong-variant", "hash_p on an lsp-t family");
  return hash_p_unchecked(i, x);
}

std::int64_t LshFamily::hash(std::size_t i, std::span<const double> x) const {
  check(i, x);
  return hash_unchecked(i, x);
}

std::int64_t LshFamily::hash_unchecked(std::size_t i, std::span<const double> x) const {
  if (config_.variant == LshVariant::kThreshold) return static_cast<std::int64_t>(hash_t_unchecked(i, x));
  return hash_p_unchecked(i, x);
}

std::vector<double> collision_rate(const LshFamilyConfig& config,
                                   std::span<const std::pair<std::vector<double>, std::vector<double>>> pairs,
                                   std::size_t trials) {
  if (trials < 1) throw usage_error("bad-config", "trials must be >= 1");
  LshFamilyConfig cfg = config;
  cfg.k = trials;
  const LshFamily family(cfg);
  std::vector<double> rates;
  rates.reserve(pairs.size());
  for (const auto& [x, y] : pairs) {
    std::size_t hits = 0;
    for (std::size_t t = 0; t < trials; ++t) hits += family.hash(t, x) == family.hash(t, y) ? 1 : 0;
    rates.push_back(static_cast<double>(hits) / static_cast<double>(trials));
  }
  return rates;
}

}  // namespace lsp
