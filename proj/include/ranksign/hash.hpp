#pragma once

#include <openssl/evp.h>

#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace ranksign {

/// Incremental SHAKE256 with a single squeeze (the output length is always
/// known up front here, so the one-shot XOF finalization suffices).
class Shake256 {
 public:
  Shake256() : ctx_(EVP_MD_CTX_new()) {
    if (ctx_ == nullptr ||
        EVP_DigestInit_ex(ctx_, EVP_shake256(), nullptr) != 1) {
      throw Error("SHAKE256 init failed");
    }
  }
  ~Shake256() { EVP_MD_CTX_free(ctx_); }
  Shake256(const Shake256&) = delete;
  Shake256& operator=(const Shake256&) = delete;

  Shake256& update(const void* data, std::size_t len) {
    if (EVP_DigestUpdate(ctx_, data, len) != 1) {
      throw Error("SHAKE256 update failed");
    }
    return *this;
  }

  Shake256& update(const std::vector<std::uint8_t>& data) {
    return update(data.data(), data.size());
  }

  Shake256& update_str(const char* s) {
    const char* p = s;
    std::size_t n = 0;
    while (p[n] != '\0') ++n;
    return update(p, n);
  }

  Shake256& update_u8(std::uint8_t v) { return update(&v, 1); }

  Shake256& update_u32le(std::uint32_t v) {
    std::uint8_t b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
    return update(b, 4);
  }

  Shake256& update_u64le(std::uint64_t v) {
    std::uint8_t b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
    return update(b, 8);
  }

  /// Squeeze out_len bytes; the context is consumed.
  std::vector<std::uint8_t> squeeze(std::size_t out_len) {
    std::vector<std::uint8_t> out(out_len);
    if (out_len == 0) return out;
    if (EVP_DigestFinalXOF(ctx_, out.data(), out_len) != 1) {
      throw Error("SHAKE256 squeeze failed");
    }
    return out;
  }

 private:
  EVP_MD_CTX* ctx_;
};

inline std::vector<std::uint8_t> shake256(const std::vector<std::uint8_t>& in,
                                          std::size_t out_len) {
  Shake256 h;
  h.update(in);
  return h.squeeze(out_len);
}

}  // namespace ranksign
