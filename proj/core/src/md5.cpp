#include "lsp/md5.hpp"

#include <openssl/evp.h>

#include <memory>

#include "lsp/common.hpp"

namespace lsp {
namespace {

struct CtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const noexcept { EVP_MD_CTX_free(ctx); }
};

struct MdDeleter {
  void operator()(EVP_MD* md) const noexcept { EVP_MD_free(md); }
};

// EVP_MD_fetch is expensive; fetch once per thread and reuse the context.
struct Md5State {
  std::unique_ptr<EVP_MD, MdDeleter> md{EVP_MD_fetch(nullptr, "MD5", nullptr)};
  std::unique_ptr<EVP_MD_CTX, CtxDeleter> ctx{EVP_MD_CTX_new()};
};

Md5State& state() {
  thread_local Md5State s;
  if (!s.md || !s.ctx) throw Error(ErrorKind::kInternal, "md5-unavailable", "OpenSSL MD5 fetch failed");
  return s;
}

}  // namespace

Md5Digest md5(std::span<const std::uint8_t> bytes) {
  Md5State& s = state();
  Md5Digest out{};
  unsigned int len = 0;
  if (EVP_DigestInit_ex2(s.ctx.get(), s.md.get(), nullptr) != 1 ||
      EVP_DigestUpdate(s.ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(s.ctx.get(), out.data(), &len) != 1 || len != out.size()) {
    throw Error(ErrorKind::kInternal, "md5-failed", "OpenSSL digest error");
  }
  return out;
}

std::uint64_t md5_prefix64(std::span<const std::uint8_t> bytes) {
  const Md5Digest d = md5(bytes);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | d[i];
  return v;
}

}  // namespace lsp
