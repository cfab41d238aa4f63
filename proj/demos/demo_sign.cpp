// Walkthrough of one full signature lifecycle at the q = 2^8 production
// parameters: key generation, signing, verification, serialization, and what
// happens when a byte gets flipped.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "ranksign/params.hpp"
#include "ranksign/ranksign.hpp"
#include "ranksign/wire.hpp"

using namespace ranksign;

int main() {
  const CodeParams P = preset("table1-row2");
  std::cout << "parameters: q=2^" << P.a << " m=" << P.m << " n=" << P.n
            << " k=" << P.k << " d=" << P.d << " t=" << P.t << " t'=" << P.tprime
            << " r'=" << P.rprime << "  (signatures have rank weight r="
            << P.r() << ")\n\n";

  Prng rng(0x1decade);
  const KeyPair kp = keygen(P, rng);
  const std::vector<std::uint8_t> pk_bytes = wire::encode_public(kp.pk);
  const std::vector<std::uint8_t> sk_bytes = wire::encode_secret(kp.sk);
  std::cout << "keygen: public key " << pk_bytes.size() << " bytes, secret key "
            << sk_bytes.size() << " bytes\n";
  std::cout << "  the public matrix H' = A(R|H)P hides an LRPC parity check H\n"
            << "  whose entries all live in a dim-" << P.d
            << " subspace F of GF(q^m)\n\n";

  const std::string text = "attack at dawn";
  const std::vector<std::uint8_t> msg(text.begin(), text.end());
  SignStats st;
  const Signature sig = sign(kp.sk, kp.pk, msg, rng, &st);
  const std::vector<std::uint8_t> sig_bytes = wire::encode_signature(P, sig);
  std::cout << "sign(\"" << text << "\"): " << sig_bytes.size()
            << " bytes after " << st.attempts << " decode attempt(s)\n";
  std::cout << "  the signer decodes the hashed syndrome through the trapdoor,\n"
            << "  using t=" << P.t << " erasure dimensions as head-room\n\n";

  std::cout << "verify(original message):  "
            << (verify(kp.pk, msg, sig) ? "accept" : "reject") << "\n";

  std::vector<std::uint8_t> tampered = msg;
  tampered[0] ^= 0x01;
  std::cout << "verify(one flipped bit):   "
            << (verify(kp.pk, tampered, sig) ? "accept" : "reject") << "\n";

  std::vector<std::uint8_t> corrupt = sig_bytes;
  corrupt[corrupt.size() / 2] ^= 0x10;
  try {
    const Signature bad = wire::decode_signature(P, corrupt);
    std::cout << "verify(corrupt signature): "
              << (verify(kp.pk, msg, bad) ? "accept" : "reject") << "\n";
  } catch (const WireError& e) {
    std::cout << "verify(corrupt signature): rejected at the wire layer ("
              << e.what() << ")\n";
  }

  const Signature back = wire::decode_signature(P, sig_bytes);
  std::cout << "\nserialization round-trip: "
            << (verify(kp.pk, msg, back) ? "intact" : "BROKEN") << "\n";
  return 0;
}
