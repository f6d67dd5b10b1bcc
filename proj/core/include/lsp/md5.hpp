#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace lsp {

using Md5Digest = std::array<std::uint8_t, 16>;

/// RFC 1321 digest (backed by OpenSSL's EVP interface).
Md5Digest md5(std::span<const std::uint8_t> bytes);

/// First 8 digest bytes read as a big-endian unsigned integer.
std::uint64_t md5_prefix64(std::span<const std::uint8_t> bytes);

}  // namespace lsp
