#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace ranksign {

/// An element of the extension field GF(q^m): exactly m base-field digits in
/// the polynomial basis (coefficient of 1 first, of x^{m-1} last).
using ExtElem = std::vector<std::uint64_t>;

namespace detail {

/// Carry-less 64x64 -> 128 bit multiplication (GF(2)[x] product).
inline unsigned __int128 clmul64(std::uint64_t x, std::uint64_t y) {
  unsigned __int128 acc = 0;
  const unsigned __int128 xx = x;
  while (y != 0) {
    const unsigned tz = static_cast<unsigned>(__builtin_ctzll(y));
    acc ^= xx << tz;
    y &= y - 1;
  }
  return acc;
}

/// Reduce a GF(2)[x] product of degree < 2a modulo a degree-a polynomial
/// (encoded with its leading bit set).
inline std::uint64_t gf2_reduce(unsigned __int128 v, std::uint64_t poly,
                                unsigned a) {
  for (int i = 2 * static_cast<int>(a) - 2; i >= static_cast<int>(a); --i) {
    if ((v >> i) & 1) v ^= static_cast<unsigned __int128>(poly) << (i - a);
  }
  return static_cast<std::uint64_t>(v) & ((a == 64) ? ~0ULL : ((1ULL << a) - 1));
}

inline std::uint64_t gf2_mul(std::uint64_t x, std::uint64_t y,
                             std::uint64_t poly, unsigned a) {
  return gf2_reduce(clmul64(x, y), poly, a);
}

inline bool is_small_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace detail

/// The base field GF(q). Either q = 2^a with a fixed irreducible modulus over
/// GF(2) (the table below), or a small odd prime field GF(p). Elements are
/// plain uint64 digits < q. Multiplication uses log/antilog tables for a <= 16
/// and carry-less reduction for a = 40 (table memory is infeasible there).
class BaseField {
 public:
  /// Fixed modulus table: the irreducible degree-a polynomial over GF(2) with
  /// the smallest integer encoding. a = 8 is the AES polynomial
  /// x^8 + x^4 + x^3 + x + 1.
  static std::uint64_t binary_modulus(unsigned a) {
    switch (a) {
      case 1:  return 0x2ULL;
      case 2:  return 0x7ULL;
      case 4:  return 0x13ULL;
      case 6:  return 0x43ULL;
      case 8:  return 0x11BULL;
      case 16: return 0x1002BULL;
      case 40: return 0x10000000039ULL;
      default:
        throw UnsupportedField("no binary modulus frozen for a=" +
                               std::to_string(a));
    }
  }

  static BaseField binary(unsigned a) { return BaseField(2, a); }

  static BaseField prime(std::uint64_t p) {
    if (p == 2) return binary(1);
    return BaseField(p, 1);
  }

  static BaseField make(std::uint64_t p, unsigned a) {
    return (p == 2) ? binary(a) : prime(p);
  }

  std::uint64_t p() const { return p_; }
  unsigned a() const { return a_; }
  std::uint64_t q() const { return q_; }
  std::uint64_t poly() const { return poly_; }
  bool is_binary() const { return p_ == 2; }

  bool valid(std::uint64_t x) const { return x < q_; }

  std::uint64_t add(std::uint64_t x, std::uint64_t y) const {
    if (p_ == 2) return x ^ y;
    const std::uint64_t s = x + y;
    return s >= p_ ? s - p_ : s;
  }

  std::uint64_t neg(std::uint64_t x) const {
    if (p_ == 2) return x;
    return x == 0 ? 0 : p_ - x;
  }

  std::uint64_t sub(std::uint64_t x, std::uint64_t y) const {
    return add(x, neg(y));
  }

  std::uint64_t mul(std::uint64_t x, std::uint64_t y) const {
    if (p_ != 2) return (x * y) % p_;
    if (a_ == 1) return x & y;
    if (!exp_.empty()) {
      if (x == 0 || y == 0) return 0;
      std::uint64_t s = log_[x] + log_[y];
      const std::uint64_t ord = q_ - 1;
      if (s >= ord) s -= ord;
      return exp_[s];
    }
    return detail::gf2_mul(x, y, poly_, a_);
  }

  std::uint64_t inv(std::uint64_t x) const {
    if (x == 0) throw ZeroInverse("base-field inverse of zero");
    if (p_ != 2) return pow(x, p_ - 2);
    if (a_ == 1) return 1;
    if (!exp_.empty()) {
      const std::uint64_t ord = q_ - 1;
      const std::uint64_t l = log_[x];
      return exp_[l == 0 ? 0 : ord - l];
    }
    return pow(x, q_ - 2);
  }

  std::uint64_t pow(std::uint64_t x, std::uint64_t e) const {
    std::uint64_t acc = 1;
    while (e != 0) {
      if (e & 1) acc = mul(acc, x);
      x = mul(x, x);
      e >>= 1;
    }
    return acc;
  }

  std::uint64_t uniform(Prng& rng) const { return rng.below(q_); }

 private:
  BaseField(std::uint64_t p, unsigned a) : p_(p), a_(a) {
    if (p == 2) {
      poly_ = binary_modulus(a);
      q_ = 1ULL << a;
      if (a > 1 && a <= 16) build_tables();
    } else {
      if (p % 2 == 0 || !detail::is_small_prime(p) || p >= 256) {
        throw UnsupportedField("base field must be GF(2^a) or a small odd prime");
      }
      if (a != 1) throw UnsupportedField("odd-prime base fields support a=1 only");
      poly_ = 0;
      q_ = p;
    }
  }

  void build_tables() {
    const std::uint64_t ord = q_ - 1;
    // Find a generator by filling the antilog table and checking coverage.
    for (std::uint64_t g = 2; g < q_; ++g) {
      std::vector<std::uint32_t> exp(ord, 0);
      std::vector<std::uint32_t> log(q_, 0);
      std::vector<bool> seen(q_, false);
      std::uint64_t v = 1;
      bool ok = true;
      for (std::uint64_t i = 0; i < ord; ++i) {
        if (seen[v]) {
          ok = false;
          break;
        }
        seen[v] = true;
        exp[i] = static_cast<std::uint32_t>(v);
        log[v] = static_cast<std::uint32_t>(i);
        v = detail::gf2_mul(v, g, poly_, a_);
      }
      if (ok && v == 1) {
        exp_ = std::move(exp);
        log_ = std::move(log);
        return;
      }
    }
    throw Error("no generator found (unreachable for irreducible modulus)");
  }

  std::uint64_t p_;
  unsigned a_;
  std::uint64_t q_ = 0;
  std::uint64_t poly_ = 0;
  std::vector<std::uint32_t> exp_;  // exp_[i] = g^i, i < q-1  (a <= 16)
  std::vector<std::uint32_t> log_;  // log_[x] with exp_[log_[x]] = x, x != 0
};

namespace detail {

/// Dense polynomial over a BaseField, coefficients low degree first.
using Poly = std::vector<std::uint64_t>;

inline void ptrim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int pdeg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

/// x mod g, general monic-or-not divisor (g != 0).
inline Poly pmod(const BaseField& F, Poly x, const Poly& g) {
  ptrim(x);
  const int dg = pdeg(g);
  const std::uint64_t lead_inv = F.inv(g[dg]);
  while (pdeg(x) >= dg) {
    const int dx = pdeg(x);
    const std::uint64_t c = F.mul(x[dx], lead_inv);
    const int shift = dx - dg;
    for (int i = 0; i <= dg; ++i) {
      x[shift + i] = F.sub(x[shift + i], F.mul(c, g[i]));
    }
    ptrim(x);
  }
  return x;
}

inline Poly pmulmod(const BaseField& F, const Poly& x, const Poly& y,
                    const Poly& mod) {
  if (x.empty() || y.empty()) return {};
  Poly acc(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] == 0) continue;
      acc[i + j] = F.add(acc[i + j], F.mul(x[i], y[j]));
    }
  }
  return pmod(F, std::move(acc), mod);
}

inline Poly pgcd(const BaseField& F, Poly x, Poly y) {
  ptrim(x);
  ptrim(y);
  while (!y.empty()) {
    Poly r = pmod(F, x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

/// h -> h^q mod f where q = p^a (repeated p-th powers).
inline Poly ppow_q_mod(const BaseField& F, Poly h, const Poly& f) {
  for (unsigned step = 0; step < F.a(); ++step) {
    Poly acc{1};
    Poly base = h;
    std::uint64_t e = F.p();
    while (e != 0) {
      if (e & 1) acc = pmulmod(F, acc, base, f);
      e >>= 1;
      if (e != 0) base = pmulmod(F, base, base, f);
    }
    h = std::move(acc);
  }
  return h;
}

/// Exact irreducibility over GF(q) by the distinct-degree sieve: f (monic,
/// degree m) is irreducible iff it has no irreducible factor of degree
/// <= m/2, i.e. gcd(x^{q^i} - x, f) = 1 for i = 1..floor(m/2).
inline bool poly_is_irreducible(const BaseField& F, const Poly& f) {
  const int m = pdeg(f);
  if (m <= 0) return false;
  if (m == 1) return true;
  Poly h{0, 1};  // x
  for (int i = 1; i <= m / 2; ++i) {
    h = ppow_q_mod(F, std::move(h), f);
    Poly diff = h;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = F.sub(diff[1], 1);  // h - x
    Poly g = pgcd(F, std::move(diff), f);
    if (pdeg(g) != 0) return false;
  }
  return true;
}

/// Extended Euclid: inverse of x modulo the irreducible modulus f.
inline Poly pinvmod(const BaseField& F, Poly x, const Poly& f) {
  ptrim(x);
  if (x.empty()) throw ZeroInverse("extension-field inverse of zero");
  Poly r0 = f, r1 = x;
  Poly t0{}, t1{1};
  while (!r1.empty()) {
    // r0 = qq*r1 + r2
    Poly r2 = r0;
    Poly qq;
    const int d1 = pdeg(r1);
    const std::uint64_t lead_inv = F.inv(r1[d1]);
    while (pdeg(r2) >= d1) {
      const int dr = pdeg(r2);
      const std::uint64_t c = F.mul(r2[dr], lead_inv);
      const int shift = dr - d1;
      if (static_cast<int>(qq.size()) <= shift) qq.resize(shift + 1, 0);
      qq[shift] = F.add(qq[shift], c);
      for (int i = 0; i <= d1; ++i) {
        r2[shift + i] = F.sub(r2[shift + i], F.mul(c, r1[i]));
      }
      ptrim(r2);
    }
    // t2 = t0 - qq*t1  (computed without reduction; degrees stay < deg f)
    Poly qt(qq.size() + (t1.empty() ? 1 : t1.size()), 0);
    for (std::size_t i = 0; i < qq.size(); ++i) {
      if (qq[i] == 0) continue;
      for (std::size_t j = 0; j < t1.size(); ++j) {
        qt[i + j] = F.add(qt[i + j], F.mul(qq[i], t1[j]));
      }
    }
    Poly t2 = t0;
    if (t2.size() < qt.size()) t2.resize(qt.size(), 0);
    for (std::size_t i = 0; i < qt.size(); ++i) t2[i] = F.sub(t2[i], qt[i]);
    ptrim(t2);
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // r0 = gcd (a nonzero constant for irreducible f, x != 0 mod f)
  if (pdeg(r0) != 0) throw ZeroInverse("element not invertible modulo f");
  const std::uint64_t scale = F.inv(r0[0]);
  for (auto& c : t0) c = F.mul(c, scale);
  ptrim(t0);
  return t0;
}

}  // namespace detail

/// Result of the deterministic extension-modulus search.
struct ExtModulus {
  unsigned index;                       ///< candidate index j that succeeded
  std::vector<std::uint64_t> coeffs;    ///< c_0..c_{m-1}; f = x^m + sum c_i x^i
};

/// Deterministic convention for the degree-m extension modulus over GF(q):
/// candidate j draws its m coefficients from a splitmix64 stream seeded by
/// (p, a, m, j); the modulus is the lowest-j candidate that is irreducible.
/// This replaces a lexicographic scan, which is empty or astronomically deep
/// for several production field shapes.
inline ExtModulus find_ext_modulus(const BaseField& F, unsigned m,
                                   unsigned max_candidates = 10000) {
  for (unsigned j = 0; j < max_candidates; ++j) {
    std::uint64_t seed = F.p() * 0x9E3779B97F4A7C15ULL;
    seed ^= static_cast<std::uint64_t>(F.a()) * 0xBF58476D1CE4E5B9ULL;
    seed ^= static_cast<std::uint64_t>(m) * 0x94D049BB133111EBULL;
    seed ^= static_cast<std::uint64_t>(j) * 0xD6E8FEB86659FD93ULL;
    SplitMix64 sm(seed);
    std::vector<std::uint64_t> coeffs(m);
    for (unsigned i = 0; i < m; ++i) {
      coeffs[i] = F.is_binary() ? (sm.next() & (F.q() - 1)) : (sm.next() % F.p());
    }
    detail::Poly f = coeffs;
    f.push_back(1);  // monic x^m
    if (detail::poly_is_irreducible(F, f)) return {j, std::move(coeffs)};
  }
  throw ResourceExhausted("no irreducible modulus found within candidate cap");
}

/// Immutable description of the tower GF(q) < GF(q^m) with the polynomial
/// basis beta = (1, x, ..., x^{m-1}). All extension arithmetic lives here;
/// elements are plain digit vectors and carry no back-pointer.
class FieldContext {
 public:
  FieldContext(BaseField base, unsigned m)
      : base_(std::move(base)), m_(m) {
    if (m == 0) throw BadParams("extension degree must be positive");
    ExtModulus mod = find_ext_modulus(base_, m);
    mod_index_ = mod.index;
    ext_poly_ = std::move(mod.coeffs);
    finish_init();
  }

  /// Explicit modulus (degree-m coefficients c_0..c_{m-1}); validated.
  FieldContext(BaseField base, unsigned m, std::vector<std::uint64_t> ext_poly)
      : base_(std::move(base)), m_(m), ext_poly_(std::move(ext_poly)),
        mod_index_(kExplicitModulus) {
    if (m == 0 || ext_poly_.size() != m) {
      throw BadParams("ext_poly must have exactly m coefficients");
    }
    detail::Poly f = ext_poly_;
    f.push_back(1);
    if (!detail::poly_is_irreducible(base_, f)) {
      throw BadParams("supplied extension modulus is reducible");
    }
    finish_init();
  }

  static constexpr unsigned kExplicitModulus = ~0u;

  const BaseField& base() const { return base_; }
  unsigned m() const { return m_; }
  std::uint64_t p() const { return base_.p(); }
  unsigned a() const { return base_.a(); }
  std::uint64_t q() const { return base_.q(); }
  unsigned modulus_index() const { return mod_index_; }
  const std::vector<std::uint64_t>& ext_poly() const { return ext_poly_; }

  ExtElem zero() const { return ExtElem(m_, 0); }

  ExtElem one() const {
    ExtElem e(m_, 0);
    e[0] = 1;
    return e;
  }

  /// j-th basis element beta_j = x^j (0-based).
  ExtElem beta(unsigned j) const {
    ExtElem e(m_, 0);
    e.at(j) = 1;
    return e;
  }

  bool is_zero(const ExtElem& x) const {
    return std::all_of(x.begin(), x.end(), [](std::uint64_t c) { return c == 0; });
  }

  bool valid(const ExtElem& x) const {
    if (x.size() != m_) return false;
    return std::all_of(x.begin(), x.end(),
                       [this](std::uint64_t c) { return base_.valid(c); });
  }

  ExtElem add(const ExtElem& x, const ExtElem& y) const {
    ExtElem r(m_);
    for (unsigned i = 0; i < m_; ++i) r[i] = base_.add(x[i], y[i]);
    return r;
  }

  ExtElem sub(const ExtElem& x, const ExtElem& y) const {
    ExtElem r(m_);
    for (unsigned i = 0; i < m_; ++i) r[i] = base_.sub(x[i], y[i]);
    return r;
  }

  ExtElem neg(const ExtElem& x) const {
    ExtElem r(m_);
    for (unsigned i = 0; i < m_; ++i) r[i] = base_.neg(x[i]);
    return r;
  }

  /// GF(q)-scalar action on an extension element (digitwise).
  ExtElem scalar_mul(std::uint64_t c, const ExtElem& x) const {
    ExtElem r(m_);
    for (unsigned i = 0; i < m_; ++i) r[i] = base_.mul(c, x[i]);
    return r;
  }

  ExtElem mul(const ExtElem& x, const ExtElem& y) const {
    std::vector<std::uint64_t> acc(2 * m_ - 1, 0);
    for (unsigned i = 0; i < m_; ++i) {
      const std::uint64_t xi = x[i];
      if (xi == 0) continue;
      for (unsigned j = 0; j < m_; ++j) {
        if (y[j] == 0) continue;
        acc[i + j] = base_.add(acc[i + j], base_.mul(xi, y[j]));
      }
    }
    // Fold x^idx = x^{idx-m} * x^m = -sum_l c_l x^{idx-m+l}, top down.
    for (unsigned idx = 2 * m_ - 2; idx >= m_; --idx) {
      const std::uint64_t c = acc[idx];
      if (c != 0) {
        for (const auto& [l, fl] : nonzero_mod_) {
          acc[idx - m_ + l] = base_.sub(acc[idx - m_ + l], base_.mul(c, fl));
        }
      }
      if (idx == m_) break;
    }
    acc.resize(m_);
    return acc;
  }

  ExtElem inv(const ExtElem& x) const {
    detail::Poly f = ext_poly_;
    f.push_back(1);
    detail::Poly r = detail::pinvmod(base_, x, f);
    r.resize(m_, 0);
    return r;
  }

  ExtElem pow(ExtElem x, std::uint64_t e) const {
    ExtElem acc = one();
    while (e != 0) {
      if (e & 1) acc = mul(acc, x);
      e >>= 1;
      if (e != 0) x = mul(x, x);
    }
    return acc;
  }

  /// Coordinates of x in the basis beta (the polynomial basis makes this the
  /// identity, but the map is part of the public contract).
  std::vector<std::uint64_t> to_coords(const ExtElem& x) const { return x; }

  ExtElem from_coords(const std::vector<std::uint64_t>& c) const {
    if (c.size() != m_) throw BadParams("coordinate vector has wrong length");
    return c;
  }

  ExtElem sample(Prng& rng) const {
    ExtElem e(m_);
    for (unsigned i = 0; i < m_; ++i) e[i] = base_.uniform(rng);
    return e;
  }

  bool same_field(const FieldContext& other) const {
    return p() == other.p() && a() == other.a() && m_ == other.m_ &&
           ext_poly_ == other.ext_poly_;
  }

 private:
  void finish_init() {
    nonzero_mod_.clear();
    for (unsigned l = 0; l < m_; ++l) {
      if (ext_poly_[l] != 0) nonzero_mod_.emplace_back(l, ext_poly_[l]);
    }
  }

  BaseField base_;
  unsigned m_;
  std::vector<std::uint64_t> ext_poly_;
  unsigned mod_index_;
  std::vector<std::pair<unsigned, std::uint64_t>> nonzero_mod_;
};

/// Process-wide cache of field contexts keyed by (p, a, m): contexts are
/// immutable and relatively expensive to build (modulus search), so decoders
/// and tests share them.
inline const FieldContext& get_field(std::uint64_t p, unsigned a, unsigned m) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint64_t, unsigned, unsigned>,
                  std::unique_ptr<FieldContext>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_tuple(p, a, m);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_unique<FieldContext>(BaseField::make(p, a), m))
             .first;
  }
  return *it->second;
}

}  // namespace ranksign
