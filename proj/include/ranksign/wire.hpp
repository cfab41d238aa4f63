#pragma once

#include <cstdint>
#include <cstring>
#include <vector>

#include "ranksign/errors.hpp"
#include "ranksign/lrpc.hpp"
#include "ranksign/params.hpp"
#include "ranksign/ranksign.hpp"

namespace ranksign::wire {

inline constexpr std::uint8_t kVersion = 0x01;

enum class Kind : std::uint8_t {
  Params = 0x01,
  Public = 0x02,
  Secret = 0x03,
  Signature = 0x04,
};

namespace detail {

inline constexpr char kMagic[4] = {'R', 'K', 'S', 'N'};

/// Bytes per base-field digit: little-endian ceil(a/8) in characteristic 2,
/// one byte for an odd prime (p < 256 enforced by CodeParams::validate).
inline std::size_t digit_bytes(const CodeParams& P) {
  return P.p == 2 ? (P.a + 7) / 8 : 1;
}

class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u16le(std::uint16_t v) {
    buf_.push_back(static_cast<std::uint8_t>(v));
    buf_.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  void bytes(const std::uint8_t* p, std::size_t n) {
    buf_.insert(buf_.end(), p, p + n);
  }
  void digit(const CodeParams& P, std::uint64_t v) {
    for (std::size_t b = 0; b < digit_bytes(P); ++b) {
      buf_.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
    }
  }
  void elem(const CodeParams& P, const ExtElem& e) {
    for (unsigned row = 0; row < P.m; ++row) digit(P, e[row]);
  }
  std::vector<std::uint8_t> take() { return std::move(buf_); }

 private:
  std::vector<std::uint8_t> buf_;
};

class Reader {
 public:
  Reader(const std::uint8_t* data, std::size_t size)
      : data_(data), size_(size) {}

  std::uint8_t u8() {
    need(1);
    return data_[pos_++];
  }
  std::uint16_t u16le() {
    need(2);
    const std::uint16_t v = static_cast<std::uint16_t>(data_[pos_]) |
                            static_cast<std::uint16_t>(data_[pos_ + 1]) << 8;
    pos_ += 2;
    return v;
  }
  void bytes(std::uint8_t* out, std::size_t n) {
    need(n);
    std::memcpy(out, data_ + pos_, n);
    pos_ += n;
  }
  /// One base-field digit, range-checked against the field order.
  std::uint64_t digit(const CodeParams& P) {
    const std::size_t db = digit_bytes(P);
    need(db);
    std::uint64_t v = 0;
    for (std::size_t b = 0; b < db; ++b) {
      v |= static_cast<std::uint64_t>(data_[pos_ + b]) << (8 * b);
    }
    pos_ += db;
    if (P.p == 2) {
      if (P.a < 64 && (v >> P.a) != 0) {
        throw MalformedBody("digit has bits above the field degree");
      }
    } else if (v >= P.p) {
      throw MalformedBody("digit exceeds the field characteristic");
    }
    return v;
  }
  ExtElem elem(const CodeParams& P) {
    ExtElem e(P.m, 0);
    for (unsigned row = 0; row < P.m; ++row) e[row] = digit(P);
    return e;
  }
  void finish() const {
    if (pos_ != size_) throw TrailingBytes("unconsumed bytes after body");
  }

 private:
  void need(std::size_t n) const {
    if (size_ - pos_ < n) throw Truncated("input ends inside a field");
  }

  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

inline void put_header(Writer& w, Kind kind) {
  w.bytes(reinterpret_cast<const std::uint8_t*>(kMagic), 4);
  w.u8(kVersion);
  w.u8(static_cast<std::uint8_t>(kind));
}

inline void take_header(Reader& r, Kind expected) {
  std::uint8_t magic[4];
  r.bytes(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) throw BadMagic("not a RKSN blob");
  const std::uint8_t ver = r.u8();
  if (ver != kVersion) throw BadVersion("unsupported format version");
  const std::uint8_t kind = r.u8();
  if (kind != static_cast<std::uint8_t>(expected)) {
    throw WrongKind("envelope kind does not match this decoder");
  }
}

/// Parse and fully validate a parameter block; every structural failure
/// (including unsupported fields) surfaces as MalformedBody so fuzzed input
/// can only ever raise WireError subtypes.
inline CodeParams take_params(Reader& r) {
  std::uint16_t w[8];
  for (auto& word : w) word = r.u16le();
  CodeParams P;
  if (w[0] & 0x8000) {
    P.p = w[0] & 0x7fff;
    P.a = 1;
  } else {
    P.p = 2;
    P.a = w[0];
  }
  P.m = w[1];
  P.n = w[2];
  P.k = w[3];
  P.d = w[4];
  P.t = w[5];
  P.tprime = w[6];
  P.rprime = w[7];
  try {
    P.validate();
  } catch (const WireError&) {
    throw;
  } catch (const Error& e) {
    throw MalformedBody(e.what());
  }
  return P;
}

}  // namespace detail

// ---- params ----------------------------------------------------------------

inline std::vector<std::uint8_t> encode_params(const CodeParams& P) {
  P.validate();
  detail::Writer w;
  detail::put_header(w, Kind::Params);
  const auto block = params_block_bytes(P);
  w.bytes(block.data(), block.size());
  return w.take();
}

inline CodeParams decode_params(const std::vector<std::uint8_t>& bytes) {
  detail::Reader r(bytes.data(), bytes.size());
  detail::take_header(r, Kind::Params);
  const CodeParams P = detail::take_params(r);
  r.finish();
  return P;
}

// ---- public key --------------------------------------------------------------

inline std::vector<std::uint8_t> encode_public(const PublicKey& pk) {
  const CodeParams& P = pk.params;
  P.validate();
  if (pk.H_pub.rows != P.nk() || pk.H_pub.cols != P.npub()) {
    throw BadParams("encode_public: matrix shape mismatch");
  }
  detail::Writer w;
  detail::put_header(w, Kind::Public);
  const auto block = params_block_bytes(P);
  w.bytes(block.data(), block.size());
  w.u16le(static_cast<std::uint16_t>(pk.seed_len_bits));
  for (unsigned i = 0; i < P.nk(); ++i) {
    for (unsigned j = 0; j < P.npub(); ++j) w.elem(P, pk.H_pub.at(i, j));
  }
  return w.take();
}

inline PublicKey decode_public(const std::vector<std::uint8_t>& bytes) {
  detail::Reader r(bytes.data(), bytes.size());
  detail::take_header(r, Kind::Public);
  const CodeParams P = detail::take_params(r);
  const std::uint16_t seed_bits = r.u16le();
  if (seed_bits != 8 * kSeedBytes) {
    throw MalformedBody("unsupported seed length");  // version 1 fixes 80
  }
  PublicKey pk{field_for(P)};
  pk.params = P;
  pk.seed_len_bits = seed_bits;
  pk.H_pub = MatExt(P.nk(), P.npub(), ExtElem(P.m, 0));
  for (unsigned i = 0; i < P.nk(); ++i) {
    for (unsigned j = 0; j < P.npub(); ++j) pk.H_pub.at(i, j) = r.elem(P);
  }
  r.finish();
  return pk;
}

// ---- secret key --------------------------------------------------------------

inline std::vector<std::uint8_t> encode_secret(const SecretKey& sk) {
  const CodeParams& P = sk.params;
  P.validate();
  detail::Writer w;
  detail::put_header(w, Kind::Secret);
  const auto block = params_block_bytes(P);
  w.bytes(block.data(), block.size());
  for (const ExtElem& f : sk.code.Fbasis) w.elem(P, f);
  for (unsigned i = 0; i < P.nk(); ++i) {
    for (unsigned j = 0; j < P.n; ++j) w.elem(P, sk.code.H.at(i, j));
  }
  for (unsigned i = 0; i < P.nk(); ++i) {
    for (unsigned j = 0; j < P.nk(); ++j) w.elem(P, sk.A.at(i, j));
  }
  for (unsigned i = 0; i < P.npub(); ++i) {
    for (unsigned j = 0; j < P.npub(); ++j) w.digit(P, sk.P.at(i, j));
  }
  for (unsigned i = 0; i < P.nk(); ++i) {
    for (unsigned j = 0; j < P.tprime; ++j) w.elem(P, sk.R.at(i, j));
  }
  return w.take();
}

/// Rebuild every derived cache from the serialized fields: the decoder matrix
/// Hhat (the F-coordinates of H's entries), its inverse, and the A/P inverses.
/// Any reconstruction failure means the bytes do not describe a valid key.
inline SecretKey decode_secret(const std::vector<std::uint8_t>& bytes) {
  detail::Reader r(bytes.data(), bytes.size());
  detail::take_header(r, Kind::Secret);
  const CodeParams P = detail::take_params(r);
  if (!P.square_decoder() || P.d < 2) {
    throw MalformedBody("secret key requires the square decoder shape");
  }
  const FieldContext& ctx = field_for(P);

  SecretKey sk{ctx};
  sk.params = P;
  sk.code.params = P;
  sk.code.Fbasis.clear();
  for (unsigned l = 0; l < P.d; ++l) sk.code.Fbasis.push_back(r.elem(P));
  sk.code.H = MatExt(P.nk(), P.n, ctx.zero());
  for (unsigned i = 0; i < P.nk(); ++i) {
    for (unsigned j = 0; j < P.n; ++j) sk.code.H.at(i, j) = r.elem(P);
  }
  sk.A = MatExt(P.nk(), P.nk(), ctx.zero());
  for (unsigned i = 0; i < P.nk(); ++i) {
    for (unsigned j = 0; j < P.nk(); ++j) sk.A.at(i, j) = r.elem(P);
  }
  sk.P = MatGFq(P.npub(), P.npub(), 0);
  for (unsigned i = 0; i < P.npub(); ++i) {
    for (unsigned j = 0; j < P.npub(); ++j) sk.P.at(i, j) = r.digit(P);
  }
  sk.R = MatExt(P.nk(), P.tprime, ctx.zero());
  for (unsigned i = 0; i < P.nk(); ++i) {
    for (unsigned j = 0; j < P.tprime; ++j) sk.R.at(i, j) = r.elem(P);
  }
  r.finish();

  // Structural invariants of the trapdoor.
  const Subspace F = Subspace::from_elements(ctx, sk.code.Fbasis);
  if (F.dim() != P.d) throw MalformedBody("F basis is dependent");
  if (F.scale_inv(sk.code.Fbasis[0])
          .sum(F.scale_inv(sk.code.Fbasis[1]))
          .dim() != 2 * P.d - 1) {
    throw MalformedBody("F violates the decodability side-condition");
  }

  // Hhat: solve each H entry over the F basis; failure = entry outside F.
  QOps qops{&ctx.base()};
  MatGFq fmat(P.m, P.d, 0);
  for (unsigned l = 0; l < P.d; ++l) {
    const auto coords = ctx.to_coords(sk.code.Fbasis[l]);
    for (unsigned row = 0; row < P.m; ++row) fmat.at(row, l) = coords[row];
  }
  sk.code.Hhat = MatGFq(P.n, P.n, 0);
  for (unsigned kk = 0; kk < P.nk(); ++kk) {
    for (unsigned i = 0; i < P.n; ++i) {
      const auto sol = solve(qops, fmat, ctx.to_coords(sk.code.H.at(kk, i)));
      if (!sol) throw MalformedBody("H entry outside the subspace F");
      for (unsigned l = 0; l < P.d; ++l) {
        sk.code.Hhat.at(kk * P.d + l, i) = (*sol)[l];
      }
    }
  }
  try {
    sk.code.Hhat_inv = invert(qops, sk.code.Hhat);
    EOps eops{&ctx};
    sk.A_inv = invert(eops, sk.A);
    sk.P_inv = invert(qops, sk.P);
  } catch (const Singular& e) {
    throw MalformedBody(e.what());
  }
  return sk;
}

// ---- signature ---------------------------------------------------------------

inline std::vector<std::uint8_t> encode_signature(const CodeParams& P,
                                                  const Signature& sig) {
  P.validate();
  if (sig.e.size() != P.npub()) {
    throw BadParams("encode_signature: wrong signature length for params");
  }
  detail::Writer w;
  detail::put_header(w, Kind::Signature);
  w.bytes(sig.seed.data(), sig.seed.size());
  for (const ExtElem& c : sig.e) w.elem(P, c);
  return w.take();
}

/// Signatures do not embed a parameter block; the caller supplies the public
/// key's params, and any disagreement in the digit layout is reported as
/// RankFieldMismatch.
inline Signature decode_signature(const CodeParams& P,
                                  const std::vector<std::uint8_t>& bytes) {
  P.validate();
  detail::Reader r(bytes.data(), bytes.size());
  detail::take_header(r, Kind::Signature);
  Signature sig;
  r.bytes(sig.seed.data(), sig.seed.size());
  sig.e.reserve(P.npub());
  try {
    for (unsigned j = 0; j < P.npub(); ++j) sig.e.push_back(r.elem(P));
  } catch (const MalformedBody& e) {
    throw RankFieldMismatch(e.what());
  }
  r.finish();
  return sig;
}

}  // namespace ranksign::wire
