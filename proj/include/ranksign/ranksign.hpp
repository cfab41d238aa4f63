#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "hash.hpp"
#include "lrpc.hpp"
#include "matrix.hpp"
#include "params.hpp"
#include "rank_metric.hpp"
#include "rng.hpp"
#include "subspace.hpp"

namespace ranksign {

inline constexpr std::size_t kSeedBytes = 10;  ///< 80-bit salt per signature
inline constexpr unsigned kSignRetryCap = 256;

struct PublicKey {
  CodeParams params;
  MatExt H_pub;  ///< (n-k) x (n+t') masked parity check A (R|H) P
  unsigned seed_len_bits = 8 * kSeedBytes;

  explicit PublicKey(const FieldContext& ctx) : H_pub(0, 0, ctx.zero()) {}
};

struct SecretKey {
  CodeParams params;
  LrpcCode code;   ///< the LRPC trapdoor
  MatExt A;        ///< invertible (n-k) x (n-k) over GF(q^m)
  MatExt A_inv;    ///< cached (Remark: formally inverted at key time)
  MatExt R;        ///< (n-k) x t' mixing block
  MatGFq P;        ///< invertible (n+t') x (n+t') over GF(q)
  MatGFq P_inv;    ///< cached

  explicit SecretKey(const FieldContext& ctx)
      : code(ctx),
        A(0, 0, ctx.zero()),
        A_inv(0, 0, ctx.zero()),
        R(0, 0, ctx.zero()) {}
};

struct KeyPair {
  SecretKey sk;
  PublicKey pk;
};

struct Signature {
  std::array<std::uint8_t, kSeedBytes> seed{};
  std::vector<ExtElem> e;  ///< length n+t', rank weight r
};

struct SignStats {
  unsigned attempts = 0;  ///< total decode attempts (1 = no retry)
};

/// Recompute the public key of a secret key: H' = A (R|H) P.
inline PublicKey derive_public(const SecretKey& sk) {
  const FieldContext& ctx = sk.code.ctx();
  EOps eops{&ctx};
  const unsigned nk = sk.params.nk();
  MatExt RH(nk, sk.params.npub(), ctx.zero());
  for (unsigned i = 0; i < nk; ++i) {
    for (unsigned j = 0; j < sk.params.tprime; ++j) RH.at(i, j) = sk.R.at(i, j);
    for (unsigned j = 0; j < sk.params.n; ++j) {
      RH.at(i, sk.params.tprime + j) = sk.code.H.at(i, j);
    }
  }
  PublicKey pk(ctx);
  pk.params = sk.params;
  pk.H_pub = mul_ext_by_q(ctx, mat_mul(eops, sk.A, RH), sk.P);
  return pk;
}

inline KeyPair keygen(const CodeParams& P, Prng& rng) {
  P.validate();
  if (P.tprime < 1) throw BadParams("keygen: masking requires t' >= 1");
  const FieldContext& ctx = field_for(P);
  EOps eops{&ctx};
  QOps qops{&ctx.base()};

  KeyPair kp{SecretKey(ctx), PublicKey(ctx)};
  kp.sk.params = P;
  kp.sk.code = gen_code(P, rng);
  kp.sk.A = sample_invertible(eops, P.nk(), rng);
  kp.sk.A_inv = invert(eops, kp.sk.A);
  kp.sk.R = sample_uniform(eops, P.nk(), P.tprime, rng);
  kp.sk.P = sample_invertible(qops, P.npub(), rng);
  kp.sk.P_inv = invert(qops, kp.sk.P);
  kp.pk = derive_public(kp.sk);
  return kp;
}

/// Hash a message and per-signature seed to a syndrome s in GF(q^m)^{n-k}.
/// Domain separation covers the parameter block; the digit stream is one
/// SHAKE256 squeeze, each GF(q) digit read little-endian (masked to a bits in
/// characteristic 2, reduced mod p from 4 bytes otherwise).
inline std::vector<ExtElem> hash_to_syndrome(
    const CodeParams& P, const std::vector<std::uint8_t>& message,
    const std::uint8_t* seed, std::size_t seed_len, std::uint32_t counter = 0) {
  const auto block = params_block_bytes(P);

  Shake256 params_hash;
  params_hash.update_str("RankSign-params-v1");
  params_hash.update(block.data(), block.size());
  const std::vector<std::uint8_t> params_digest = params_hash.squeeze(16);

  Shake256 h;
  h.update_str("RankSign-hash-v1");
  h.update(params_digest);
  h.update_u64le(message.size());
  h.update(message);
  h.update_u8(static_cast<std::uint8_t>(seed_len));
  h.update(seed, seed_len);
  h.update_u32le(counter);

  const unsigned digits = P.m * P.nk();
  const std::size_t digit_bytes = P.p == 2 ? (P.a + 7) / 8 : 4;
  const std::vector<std::uint8_t> stream = h.squeeze(digits * digit_bytes);

  std::vector<ExtElem> s;
  s.reserve(P.nk());
  std::size_t pos = 0;
  for (unsigned kk = 0; kk < P.nk(); ++kk) {
    ExtElem coord(P.m, 0);
    for (unsigned row = 0; row < P.m; ++row) {
      std::uint64_t v = 0;
      for (std::size_t b = 0; b < digit_bytes; ++b) {
        v |= static_cast<std::uint64_t>(stream[pos + b]) << (8 * b);
      }
      pos += digit_bytes;
      if (P.p == 2) {
        coord[row] = P.a == 64 ? v : (v & ((std::uint64_t(1) << P.a) - 1));
      } else {
        coord[row] = v % P.p;
      }
    }
    s.push_back(std::move(coord));
  }
  return s;
}

inline std::vector<ExtElem> hash_to_syndrome(
    const CodeParams& P, const std::vector<std::uint8_t>& message,
    const std::array<std::uint8_t, kSeedBytes>& seed,
    std::uint32_t counter = 0) {
  return hash_to_syndrome(P, message, seed.data(), seed.size(), counter);
}

inline bool verify(const PublicKey& pk, const std::vector<std::uint8_t>& message,
                   const Signature& sig);

/// Sign: draw a per-signature seed and an erasure vector tau, decode the
/// unmasked syndrome with the erasure space T, and undo the isometry. When
/// t' = t the erasure vector is tau itself (t iid uniform elements, redrawn
/// until its support has dimension t); for the clipped t' < t variant a
/// fresh dim-t space is drawn and tau takes t' iid elements of it. A failed
/// decode or a final word of rank below r redraws everything, seed included,
/// so every attempt queries the hash afresh.
inline Signature sign(const SecretKey& sk, const PublicKey& pk,
                      const std::vector<std::uint8_t>& message, Prng& rng,
                      SignStats* stats = nullptr) {
  const CodeParams& P = sk.params;
  const FieldContext& ctx = sk.code.ctx();
  EOps eops{&ctx};

  for (unsigned attempt = 1; attempt <= kSignRetryCap; ++attempt) {
    Signature sig;
    const std::vector<std::uint8_t> seed_bytes = rng.bytes(kSeedBytes);
    for (std::size_t i = 0; i < kSeedBytes; ++i) sig.seed[i] = seed_bytes[i];
    const std::vector<ExtElem> s = hash_to_syndrome(P, message, sig.seed);

    std::vector<ExtElem> tau;
    Subspace T = Subspace::zero(ctx);
    if (P.tprime == P.t) {
      for (unsigned guard = 0;; ++guard) {
        tau.clear();
        for (unsigned i = 0; i < P.tprime; ++i) tau.push_back(ctx.sample(rng));
        T = Subspace::from_elements(ctx, tau);
        if (T.dim() == P.t) break;
        if (guard > 4096) {
          throw ResourceExhausted("sign: erasure vector rank cap");
        }
      }
    } else {
      T = Subspace::sample(ctx, P.t, rng);
      tau = T.sample_vector_in(P.tprime, rng);
    }

    // s' = A^{-1} s^T - R tau^T.
    std::vector<ExtElem> sprime = mat_vec(eops, sk.A_inv, s);
    const std::vector<ExtElem> rtau = mat_vec(eops, sk.R, tau);
    for (unsigned i = 0; i < P.nk(); ++i) {
      sprime[i] = ctx.sub(sprime[i], rtau[i]);
    }

    const DecodeResult dec = decode(sk.code, sprime, T);
    if (!dec.ok) continue;

    RankVector x;
    x.ctx = &ctx;
    x.coords = tau;
    x.coords.insert(x.coords.end(), dec.error.begin(), dec.error.end());
    if (rank_weight(x) != P.r()) continue;

    // e = x (P^T)^{-1} so that P e^T = x^T.
    sig.e = row_times_q(ctx, x.coords, transpose(sk.P_inv));
    if (!verify(pk, message, sig)) continue;  // self-check before release
    if (stats != nullptr) stats->attempts = attempt;
    return sig;
  }
  throw ResourceExhausted("sign: retry cap exceeded");
}

/// Accept iff rank(e) = r and H' e^T matches the message hash. Structural
/// violations (wrong length, out-of-range digits) are encoding bugs rather
/// than forgeries and throw instead of rejecting.
inline bool verify(const PublicKey& pk, const std::vector<std::uint8_t>& message,
                   const Signature& sig) {
  const CodeParams& P = pk.params;
  const FieldContext& ctx = field_for(P);
  if (sig.e.size() != P.npub()) {
    throw MalformedSignature("verify: signature length mismatch");
  }
  for (const auto& c : sig.e) {
    if (!ctx.valid(c)) throw MalformedSignature("verify: invalid coordinate");
  }

  RankVector e;
  e.ctx = &ctx;
  e.coords = sig.e;
  if (rank_weight(e) != P.r()) return false;

  EOps eops{&ctx};
  const std::vector<ExtElem> lhs = mat_vec(eops, pk.H_pub, sig.e);
  const std::vector<ExtElem> s = hash_to_syndrome(P, message, sig.seed);
  return lhs == s;
}

struct SimulatedSignature {
  RankVector e;                ///< length n+t', rank r
  std::vector<ExtElem> y;     ///< H' e^T
};

/// Key-independent signature simulation: a uniform dim-r support and
/// coordinates drawn iid from it, conditioned on full rank exactly like the
/// signer's output. The couple (e'', y'' = H' e''^T) is how the security
/// argument replays transcripts without the trapdoor.
inline SimulatedSignature simulate_signature(const PublicKey& pk, Prng& rng,
                                             unsigned max_tries = 64) {
  const CodeParams& P = pk.params;
  const FieldContext& ctx = field_for(P);
  EOps eops{&ctx};
  for (unsigned tr = 0; tr < max_tries; ++tr) {
    const Subspace E = Subspace::sample(ctx, P.r(), rng);
    SimulatedSignature sim;
    sim.e.ctx = &ctx;
    sim.e.coords = E.sample_vector_in(P.npub(), rng);
    if (rank_weight(sim.e) != P.r()) continue;
    sim.y = mat_vec(eops, pk.H_pub, sim.e.coords);
    return sim;
  }
  throw ResourceExhausted("simulate_signature: rank conditioning cap");
}

}  // namespace ranksign
