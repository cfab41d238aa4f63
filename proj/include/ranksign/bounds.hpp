#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "params.hpp"
#include "rng.hpp"
#include "subspace.hpp"

namespace ranksign {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt big_pow(const BigInt& base, unsigned e) {
  BigInt acc = 1, b = base;
  while (e != 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

inline BigInt q_of(const CodeParams& P) {
  return big_pow(BigInt(P.p), P.a);
}

/// log2 of a positive big integer, accurate to double precision.
inline double log2_big(const BigInt& x) {
  if (x <= 0) throw BadParams("log2_big: non-positive argument");
  const std::size_t bits = boost::multiprecision::msb(x);  // floor(log2 x)
  if (bits <= 52) return std::log2(x.convert_to<double>());
  const BigInt top = x >> (bits - 52);
  return static_cast<double>(bits - 52) +
         std::log2(top.convert_to<double>());
}

inline double log2_big(const BigRat& x) {
  return log2_big(boost::multiprecision::numerator(x)) -
         log2_big(boost::multiprecision::denominator(x));
}

// ---- sphere / ball / bounds ---------------------------------------------------

/// Number of m x n matrices over GF(q) of rank exactly t:
/// S(n,m,q,t) = prod_{j<t} (q^n - q^j)(q^m - q^j) / (q^t - q^j).
inline BigInt sphere_size(unsigned n, unsigned m, const BigInt& q, unsigned t) {
  if (t > n || t > m) return 0;
  BigInt num = 1, den = 1;
  const BigInt qn = big_pow(q, n), qm = big_pow(q, m), qt = big_pow(q, t);
  BigInt qj = 1;
  for (unsigned j = 0; j < t; ++j) {
    num *= (qn - qj) * (qm - qj);
    den *= (qt - qj);
    qj *= q;
  }
  BigInt r = num / den;
  if (r * den != num) throw Error("sphere_size: inexact division (bug)");
  return r;
}

/// Ball size B(n,m,q,t) = sum_{i<=t} S(n,m,q,i).
inline BigInt ball_size(unsigned n, unsigned m, const BigInt& q, unsigned t) {
  BigInt acc = 0;
  for (unsigned i = 0; i <= t; ++i) acc += sphere_size(n, m, q, i);
  return acc;
}

/// Rank-metric Gilbert-Varshamov radius: smallest t with
/// B(n,m,q,t) >= q^{m(n-k)}.
inline unsigned gvr(unsigned n, unsigned k, unsigned m, const BigInt& q) {
  if (k > n) throw BadParams("gvr: k > n");
  const BigInt target = big_pow(q, m * (n - k));
  BigInt ball = 0;
  for (unsigned t = 0; t <= std::min(n, m); ++t) {
    ball += sphere_size(n, m, q, t);
    if (ball >= target) return t;
  }
  throw Error("gvr: unreachable (ball covers the space at t = min(n,m))");
}

/// Rank-metric Singleton bound on the minimum distance.
inline unsigned singleton(unsigned n, unsigned k, unsigned m) {
  if (k > n) throw BadParams("singleton: k > n");
  if (n <= m) return 1 + (n - k);
  return 1 + ((n - k) * m) / n;
}

/// Number of dim-(t+r') superspaces of a fixed dim-t subspace of GF(q^m):
/// E(T) = prod_{i<r'} (q^{m-t-i} - 1)/(q^{i+1} - 1), the Gaussian binomial
/// [m-t choose r']_q. Computed as one exact division.
inline BigInt count_superspaces(unsigned m, const BigInt& q, unsigned t,
                                unsigned rp) {
  if (t + rp > m) throw BadParams("count_superspaces: t + r' > m");
  BigInt num = 1, den = 1;
  for (unsigned i = 0; i < rp; ++i) {
    num *= big_pow(q, m - t - i) - 1;
    den *= big_pow(q, i + 1) - 1;
  }
  BigInt r = num / den;
  if (r * den != num) throw Error("count_superspaces: inexact division (bug)");
  return r;
}

/// Signed density exponent (r-t)(m-r) + (n-k)(rd - m); zero characterizes the
/// density-1 parameter family.
inline long long density_exponent(const CodeParams& P) {
  const long long r = P.r();
  return (r - static_cast<long long>(P.t)) *
             (static_cast<long long>(P.m) - r) +
         static_cast<long long>(P.nk()) *
             (r * static_cast<long long>(P.d) - static_cast<long long>(P.m));
}

/// q^{density_exponent} as an exact rational.
inline BigRat density_estimate(const CodeParams& P) {
  const long long e = density_exponent(P);
  const BigInt q = q_of(P);
  if (e >= 0) return BigRat(big_pow(q, static_cast<unsigned>(e)));
  return BigRat(1, big_pow(q, static_cast<unsigned>(-e)));
}

struct TDecodableBounds {
  BigRat lower;  ///< (1 - 1/(q-1))^2 E(T) q^{rd(n-k)}
  BigInt upper;  ///< E(T) q^{rd(n-k)}
};

/// Two-sided count bounds on the number of T-decodable syndromes; requires
/// the hypothesis r(2d-1) <= m.
inline TDecodableBounds tdecodable_bounds(const CodeParams& P) {
  const unsigned r = P.r();
  if (r * (2 * P.d - 1) > P.m) {
    throw HypothesisViolated("tdecodable_bounds: r(2d-1) > m");
  }
  const BigInt q = q_of(P);
  const BigInt upper =
      count_superspaces(P.m, q, P.t, P.rprime) * big_pow(q, r * P.d * P.nk());
  const BigRat shrink = BigRat(q - 2, q - 1) * BigRat(q - 2, q - 1);
  return {shrink * BigRat(upper), upper};
}

/// Number of l-tuples of vectors spanning GF(q)^delta (inclusion-exclusion
/// over the subspace the tuple lies in; Moebius function of the lattice).
inline BigInt spanning_tuples(unsigned l, unsigned delta, const BigInt& q) {
  BigInt acc = 0;
  for (unsigned s = 0; s <= delta; ++s) {
    // [delta choose s]_q
    BigInt gb_num = 1, gb_den = 1;
    for (unsigned i = 0; i < delta - s; ++i) {
      gb_num *= big_pow(q, delta - i) - 1;
      gb_den *= big_pow(q, i + 1) - 1;
    }
    BigInt gb = gb_num / gb_den;
    if (gb * gb_den != gb_num) throw Error("spanning_tuples: inexact (bug)");
    const unsigned codim = delta - s;
    BigInt term = gb * big_pow(q, (codim * (codim - 1)) / 2) *
                  big_pow(big_pow(q, s), l);
    if (codim % 2 == 1) acc -= term; else acc += term;
  }
  return acc;
}

// ---- Definition 3 checks (shared with the decoder-facing oracle) -------------

/// Does E satisfy conditions (i) and (ii) of T-decodability for this support
/// basis? (i): dim <F.E> = dim F * dim E; (ii): the two-element intersection
/// recovers E exactly.
inline bool support_conditions_hold(const std::vector<ExtElem>& Fbasis,
                                    const Subspace& E) {
  const FieldContext& ctx = E.ctx();
  const Subspace F = Subspace::from_elements(ctx, Fbasis);
  const Subspace PE = Subspace::product_space(F, E);
  if (PE.dim() != F.dim() * E.dim()) return false;
  const Subspace cut =
      PE.scale_inv(Fbasis.at(0)).intersect(PE.scale_inv(Fbasis.at(1)));
  return cut.dim() == E.dim();
}

/// Exhaustive count of T-decodable syndromes for a fixed (F, T) pair at toy
/// scale: iterate every E >= T of dimension r, keep those passing (i)/(ii),
/// and count the (n-k)-tuples of <F.E> that, together with <F.T>, generate
/// <F.E> (closed-form per E; Definition 3(iii)). Distinct valid E yield
/// disjoint syndrome sets because E is recovered from the syndrome by the
/// two-element intersection, so the per-E counts add up exactly.
inline BigInt brute_force_tdecodable(const CodeParams& P,
                                     const std::vector<ExtElem>& Fbasis,
                                     const Subspace& T,
                                     bool require_preconditions = true) {
  const FieldContext& ctx = T.ctx();
  const BigInt q = q_of(P);
  if (big_pow(q, P.m * P.nk()) > (BigInt(1) << 24)) {
    throw TooLarge("brute_force_tdecodable: syndrome space exceeds 2^24");
  }
  if (Fbasis.size() != P.d) throw BadParams("F basis size != d");
  const Subspace F = Subspace::from_elements(ctx, Fbasis);
  const Subspace FT = Subspace::product_space(F, T);
  if (require_preconditions) {
    if (F.dim() != P.d || T.dim() != P.t || FT.dim() != P.t * P.d) {
      throw HypothesisViolated("brute_force_tdecodable: (F,T) violates Eq. (1)");
    }
    const Subspace two = F.scale_inv(Fbasis.at(0)).sum(F.scale_inv(Fbasis.at(1)));
    if (two.dim() != 2 * P.d - 1) {
      throw HypothesisViolated("brute_force_tdecodable: F violates Eq. (2)");
    }
  }
  const unsigned r = P.r();
  const unsigned l = P.nk();
  BigInt total = 0;
  for (const Subspace& E : Subspace::enumerate_superspaces(T, r)) {
    if (!support_conditions_hold(Fbasis, E)) continue;
    const unsigned u = FT.dim();
    const unsigned delta = r * P.d - u;
    total += big_pow(big_pow(q, u), l) * spanning_tuples(l, delta, q);
  }
  return total;
}

/// Independent slow path for the same count: iterate the actual (n-k)-tuples
/// of <F.E> elements and test condition (iii) by the rank of the tuple
/// together with a basis of <F.T>. Quadratically slower; used to cross-check
/// the closed-form path.
inline BigInt brute_force_tdecodable_slow(const CodeParams& P,
                                          const std::vector<ExtElem>& Fbasis,
                                          const Subspace& T) {
  const FieldContext& ctx = T.ctx();
  const BigInt q = q_of(P);
  const Subspace F = Subspace::from_elements(ctx, Fbasis);
  const Subspace FT = Subspace::product_space(F, T);
  const unsigned r = P.r();
  const unsigned l = P.nk();
  BigInt total = 0;
  for (const Subspace& E : Subspace::enumerate_superspaces(T, r)) {
    if (!support_conditions_hold(Fbasis, E)) continue;
    const Subspace PE =
        Subspace::product_space(F, E);
    const std::vector<ExtElem> elems = PE.enumerate_elements();
    BigInt tuples = 1;
    for (unsigned i = 0; i < l; ++i) {
      tuples *= static_cast<std::uint64_t>(elems.size());
      if (tuples > (BigInt(1) << 24)) {
        throw TooLarge("brute_force_tdecodable_slow: tuple space exceeds 2^24");
      }
    }
    std::vector<std::size_t> idx(l, 0);
    const std::uint64_t count = tuples.convert_to<std::uint64_t>();
    for (std::uint64_t c = 0; c < count; ++c) {
      std::vector<ExtElem> gens = FT.basis();
      for (unsigned i = 0; i < l; ++i) gens.push_back(elems[idx[i]]);
      if (Subspace::from_elements(ctx, gens).dim() == PE.dim()) total += 1;
      for (unsigned i = 0; i < l; ++i) {
        if (++idx[i] < elems.size()) break;
        idx[i] = 0;
      }
    }
  }
  return total;
}

// ---- Lemma 2 Monte Carlo -----------------------------------------------------

/// Empirical tail probability of a rank-deficient product space: A a uniform
/// dim-alpha subspace and T a uniform dim-t subspace with dim<A.T> = alpha*t
/// (the lemma's precondition, enforced by joint resampling); B extends T by
/// beta iid uniform vectors (no independence rejection — degenerate draws
/// count as failures, matching the statement). Returns the fraction of
/// trials with dim<A.B> < alpha(t+beta). Closed-form bound:
/// q^{alpha(t+beta)} / ((q-1) q^m).
inline double lemma2_monte_carlo(const FieldContext& ctx, unsigned alpha,
                                 unsigned t, unsigned beta,
                                 std::uint64_t trials, Prng& rng) {
  if (alpha * (t + beta) > ctx.m()) {
    throw HypothesisViolated("lemma2_monte_carlo: alpha(t+beta) > m");
  }
  std::uint64_t failures = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Prng trial_rng = rng.derive(i);
    Subspace A = Subspace::zero(ctx), T = Subspace::zero(ctx);
    for (unsigned tries = 0;; ++tries) {
      A = Subspace::sample(ctx, alpha, trial_rng);
      T = Subspace::sample(ctx, t, trial_rng);
      if (Subspace::product_space(A, T).dim() == alpha * t) break;
      if (tries > 4096) {
        throw ResourceExhausted("lemma2_monte_carlo: precondition resampling");
      }
    }
    std::vector<ExtElem> extra;
    for (unsigned b = 0; b < beta; ++b) extra.push_back(ctx.sample(trial_rng));
    const Subspace B = T.extended(extra);
    if (Subspace::product_space(A, B).dim() < alpha * (t + beta)) ++failures;
  }
  return static_cast<double>(failures) / static_cast<double>(trials);
}

}  // namespace ranksign
