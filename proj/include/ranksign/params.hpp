#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace ranksign {

/// Parameter block of an (augmented) LRPC code instance.
///
///   q = p^a   base field (p = 2 for all production rows; small odd primes
///             are accepted for the toy oracles)
///   m         extension degree
///   [n, k]    LRPC code length / dimension, with n = (n-k) d in production
///   d         dimension of the low-rank support F
///   t         generalized-erasure dimension
///   t'        number of appended random columns (usually t)
///   r'        decoded error rank; overall signature rank r = t + r'
struct CodeParams {
  std::uint64_t p = 2;
  unsigned a = 1;
  unsigned m = 0;
  unsigned n = 0;
  unsigned k = 0;
  unsigned d = 0;
  unsigned t = 0;
  unsigned tprime = 0;
  unsigned rprime = 0;

  unsigned r() const { return t + rprime; }
  unsigned nk() const { return n - k; }
  unsigned npub() const { return n + tprime; }   ///< public code length
  unsigned kpub() const { return k + tprime; }   ///< public code dimension
  double log2_q() const;
  bool square_decoder() const { return n == nk() * d; }

  bool operator==(const CodeParams& o) const {
    return p == o.p && a == o.a && m == o.m && n == o.n && k == o.k &&
           d == o.d && t == o.t && tprime == o.tprime && rprime == o.rprime;
  }

  /// Structural invariants shared by every consumer; wire decoding funnels
  /// untrusted blocks through here, so the ranges double as fuzz guards.
  void validate() const {
    if (p == 2) {
      BaseField::binary_modulus(a);  // throws for unsupported exponents
    } else {
      if (a != 1 || p % 2 == 0 || p < 3 || p >= 256 ||
          !detail::is_small_prime(p)) {
        throw BadParams("unsupported base field");
      }
    }
    if (m == 0 || m > 64) throw BadParams("extension degree out of range");
    if (n == 0 || n > 256) throw BadParams("code length out of range");
    if (k > n) throw BadParams("k exceeds n");
    if (k == n) throw BadParams("degenerate code with n = k");
    if (d == 0) throw BadParams("d must be positive");
    if (tprime > 64 || t > 64) throw BadParams("erasure dimension out of range");
    if (rprime > nk() / d) throw BadParams("r' exceeds (n-k)/d");
    if (r() > m) throw BadParams("r exceeds m");
    if (t > m) throw BadParams("t exceeds m");
  }
};

inline double CodeParams::log2_q() const {
  if (p == 2) return static_cast<double>(a);
  return std::log2(static_cast<double>(p)) * a;
}

/// Field context backing a parameter block (shared process-wide).
inline const FieldContext& field_for(const CodeParams& P) {
  return get_field(P.p, P.a, P.m);
}

/// Canonical 16-byte serialization of a parameter block: eight u16
/// little-endian words (field_code, m, n, k, d, t, t', r'), where field_code
/// is the exponent a for characteristic 2 and 0x8000|p for odd primes. Used
/// both on the wire and as the domain separator of the message hash.
inline std::array<std::uint8_t, 16> params_block_bytes(const CodeParams& P) {
  const std::uint16_t field_code =
      P.p == 2 ? static_cast<std::uint16_t>(P.a)
               : static_cast<std::uint16_t>(0x8000u | P.p);
  const std::uint16_t words[8] = {
      field_code,
      static_cast<std::uint16_t>(P.m),
      static_cast<std::uint16_t>(P.n),
      static_cast<std::uint16_t>(P.k),
      static_cast<std::uint16_t>(P.d),
      static_cast<std::uint16_t>(P.t),
      static_cast<std::uint16_t>(P.tprime),
      static_cast<std::uint16_t>(P.rprime)};
  std::array<std::uint8_t, 16> out{};
  for (int i = 0; i < 8; ++i) {
    out[2 * i] = static_cast<std::uint8_t>(words[i] & 0xFF);
    out[2 * i + 1] = static_cast<std::uint8_t>(words[i] >> 8);
  }
  return out;
}

/// Named presets: the seven published parameter rows plus the toy instances
/// used by the oracle layer and the acceptance suite.
inline const std::map<std::string, CodeParams>& presets() {
  static const std::map<std::string, CodeParams> table = {
      // p         a   m   n   k   d  t  t' r'
      {"table1-row1", {2, 40, 18, 16, 8, 2, 2, 2, 4}},
      {"table1-row2", {2, 8, 18, 16, 8, 2, 2, 2, 4}},
      {"table1-row3", {2, 16, 18, 16, 8, 2, 2, 2, 4}},
      {"table1-row4", {2, 8, 24, 20, 10, 2, 3, 3, 5}},
      {"table1-row5", {2, 6, 20, 27, 18, 3, 2, 2, 3}},
      {"table1-row6", {2, 4, 40, 48, 36, 4, 5, 5, 3}},
      {"table1-row7", {2, 4, 42, 50, 40, 5, 5, 2, 2}},
      {"toy-q2", {2, 1, 6, 4, 2, 2, 1, 1, 1}},
      {"toy-q3", {3, 1, 6, 4, 2, 2, 1, 1, 1}},
      {"toy-q16", {2, 4, 9, 8, 4, 2, 1, 1, 2}},
  };
  return table;
}

inline CodeParams preset(const std::string& name) {
  const auto& t = presets();
  auto it = t.find(name);
  if (it == t.end()) throw BadParams("unknown preset: " + name);
  return it->second;
}

/// The seven table rows in publication order.
inline std::vector<CodeParams> table1_rows() {
  return {preset("table1-row1"), preset("table1-row2"), preset("table1-row3"),
          preset("table1-row4"), preset("table1-row5"), preset("table1-row6"),
          preset("table1-row7")};
}

}  // namespace ranksign
