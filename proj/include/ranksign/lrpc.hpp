#pragma once

#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "matrix.hpp"
#include "params.hpp"
#include "rank_metric.hpp"
#include "rng.hpp"
#include "subspace.hpp"

namespace ranksign {

/// Low Rank Parity Check code with a designated support basis F_1 = 1,
/// F_2, ..., F_d. The parity-check matrix H is (n-k) x n with every entry in
/// F; its GF(q)-coordinate tensor is kept both as the extension matrix and as
/// the square n x n base-field matrix Hhat that drives unique erasure
/// decoding (n = (n-k) d).
class LrpcCode {
 public:
  CodeParams params;
  std::vector<ExtElem> Fbasis;  ///< designated basis, Fbasis[0] = 1
  MatExt H;                     ///< (n-k) x n over GF(q^m)
  MatGFq Hhat;                  ///< n x n over GF(q); row kk*d+l, column i
  MatGFq Hhat_inv;

  const FieldContext& ctx() const { return *ctx_; }

  Subspace support() const {
    return Subspace::from_elements(*ctx_, Fbasis);
  }

  /// Syndrome H e^T of a length-n word.
  std::vector<ExtElem> syndrome(const std::vector<ExtElem>& e) const {
    EOps ops{ctx_};
    return mat_vec(ops, H, e);
  }

  explicit LrpcCode(const FieldContext& ctx) : ctx_(&ctx) {}

 private:
  const FieldContext* ctx_;
};

/// Sample an LRPC code: F = <1, F_2, ..., F_d> uniform with the decoding
/// precondition dim(F_1^{-1}F + F_2^{-1}F) = 2d-1, and H with uniform
/// GF(q)-coordinates over F, redrawn until Hhat is invertible (each condition
/// holds with constant probability, so the caps are generous).
inline LrpcCode gen_code(const CodeParams& P, Prng& rng,
                         unsigned max_tries = 64) {
  P.validate();
  if (!P.square_decoder()) {
    throw BadParams("gen_code: decoder requires n = (n-k) d");
  }
  if (P.d < 2) throw BadParams("gen_code: d >= 2 required");
  const FieldContext& ctx = field_for(P);
  LrpcCode code(ctx);
  code.params = P;

  for (unsigned tr = 0;; ++tr) {
    if (tr >= max_tries) {
      throw ResourceExhausted("gen_code: support sampling cap exceeded");
    }
    std::vector<ExtElem> basis = {ctx.one()};
    Subspace span = Subspace::from_elements(ctx, basis);
    while (span.dim() < P.d) {
      const ExtElem v = ctx.sample(rng);
      if (span.contains(v)) continue;
      basis.push_back(v);
      span = span.extended({v});
    }
    const Subspace twisted =
        span.scale_inv(basis[0]).sum(span.scale_inv(basis[1]));
    if (twisted.dim() != 2 * P.d - 1) continue;
    code.Fbasis = basis;
    break;
  }

  const unsigned nk = P.nk();
  QOps qops{&ctx.base()};
  for (unsigned tr = 0;; ++tr) {
    if (tr >= max_tries) {
      throw ResourceExhausted("gen_code: parity-check sampling cap exceeded");
    }
    MatGFq hhat(P.n, P.n, 0);
    MatExt H(nk, P.n, ctx.zero());
    for (unsigned kk = 0; kk < nk; ++kk) {
      for (unsigned i = 0; i < P.n; ++i) {
        ExtElem entry = ctx.zero();
        for (unsigned l = 0; l < P.d; ++l) {
          const std::uint64_t c = ctx.base().uniform(rng);
          hhat.at(kk * P.d + l, i) = c;
          if (c != 0) {
            entry = ctx.add(entry, ctx.scalar_mul(c, code.Fbasis[l]));
          }
        }
        H.at(kk, i) = entry;
      }
    }
    if (rank_of(qops, hhat) != P.n) continue;
    code.H = std::move(H);
    code.Hhat = hhat;
    code.Hhat_inv = invert(qops, hhat);
    return code;
  }
}

/// The full formal system: unknowns are the n*r GF(q)-coordinates x_{j,i} of
/// e_i = sum_j x_{j,i} E_j, equations are the coefficients of the syndrome
/// coordinates over the product basis {F_l E_j}. Row kk*rd + j*d + l, column
/// j*n + i carries Hhat[kk*d + l, i]; the system is block-diagonal in j, so
/// its invertibility reduces to Hhat's.
inline MatGFq build_formal_matrix(const LrpcCode& code) {
  const CodeParams& P = code.params;
  const unsigned r = P.r(), nk = P.nk(), rd = r * P.d;
  MatGFq Hf(nk * rd, P.n * r, 0);
  for (unsigned kk = 0; kk < nk; ++kk) {
    for (unsigned j = 0; j < r; ++j) {
      for (unsigned l = 0; l < P.d; ++l) {
        for (unsigned i = 0; i < P.n; ++i) {
          Hf.at(kk * rd + j * P.d + l, j * P.n + i) =
              code.Hhat.at(kk * P.d + l, i);
        }
      }
    }
  }
  return Hf;
}

enum class DecodeFailure {
  None,
  SyndromeSpaceDeficient,   ///< dim(<F.T> + syndrome coords) != rd
  SupportNotRecovered,      ///< dim(F_1^{-1}S cap F_2^{-1}S) != r
  SyndromeOutsideProduct,   ///< a syndrome coordinate escapes <F.E>
};

struct DecodeResult {
  bool ok = false;
  DecodeFailure failure = DecodeFailure::None;
  std::vector<ExtElem> error;  ///< length n, support inside E
  Subspace E;                  ///< recovered support (contains T)

  explicit DecodeResult(const FieldContext& ctx) : E(Subspace::zero(ctx)) {}
};

/// Is the syndrome decodable for the erasure T? Checks the defining
/// conditions directly on the recovered candidate support: the syndrome
/// space S = <F.T> + span(s) must have dimension rd, the two-element
/// intersection must recover a dim-r space E, and <F.E> must equal S (which
/// packages both "coordinates of s lie in <F.E>" and "s and <F.T> generate
/// it").
inline bool check_tdecodable(const LrpcCode& code,
                             const std::vector<ExtElem>& s,
                             const Subspace& T) {
  const CodeParams& P = code.params;
  const unsigned rd = P.r() * P.d;
  const Subspace F = code.support();
  Subspace S = Subspace::product_space(F, T).extended(s);
  if (S.dim() != rd) return false;
  const Subspace E =
      S.scale_inv(code.Fbasis[0]).intersect(S.scale_inv(code.Fbasis[1]));
  if (E.dim() != P.r()) return false;
  return Subspace::product_space(F, E) == S;
}

/// Erasure decoding: recover e with H e^T = s and support(e) + T = E of
/// dimension r. The support comes from the two-element intersection; the
/// coordinates come from expanding each syndrome coordinate over the product
/// basis {F_l E_j} and solving Hhat per E-basis direction.
inline DecodeResult decode(const LrpcCode& code, const std::vector<ExtElem>& s,
                           const Subspace& T) {
  const CodeParams& P = code.params;
  const FieldContext& ctx = code.ctx();
  const unsigned r = P.r(), nk = P.nk(), d = P.d, m = P.m, rd = r * d;
  if (s.size() != nk) throw BadParams("decode: syndrome length mismatch");
  if (T.dim() != P.t) throw BadParams("decode: erasure dimension mismatch");
  DecodeResult res(ctx);

  // Step 1: syndrome space S = <F.T> + <s_1, ..., s_{n-k}>.
  const Subspace F = code.support();
  const Subspace S = Subspace::product_space(F, T).extended(s);
  if (S.dim() != rd) {
    res.failure = DecodeFailure::SyndromeSpaceDeficient;
    return res;
  }

  // Step 2: E = F_1^{-1} S cap F_2^{-1} S.
  res.E = S.scale_inv(code.Fbasis[0]).intersect(S.scale_inv(code.Fbasis[1]));
  if (res.E.dim() != r) {
    res.failure = DecodeFailure::SupportNotRecovered;
    return res;
  }

  // Step 3: expand the syndrome coordinates over the product basis
  // {F_l E_j}, ordered j*d + l.
  QOps qops{&ctx.base()};
  MatGFq prod(m, rd, 0);
  for (unsigned j = 0; j < r; ++j) {
    const ExtElem Ej = res.E.basis_elem(j);
    for (unsigned l = 0; l < d; ++l) {
      const auto coords = ctx.to_coords(ctx.mul(code.Fbasis[l], Ej));
      for (unsigned row = 0; row < m; ++row) prod.at(row, j * d + l) = coords[row];
    }
  }
  // One RREF against all n-k right-hand sides at once.
  MatGFq aug(m, rd + nk, 0);
  for (unsigned row = 0; row < m; ++row) {
    for (unsigned col = 0; col < rd; ++col) aug.at(row, col) = prod.at(row, col);
  }
  for (unsigned kk = 0; kk < nk; ++kk) {
    const auto coords = ctx.to_coords(s[kk]);
    for (unsigned row = 0; row < m; ++row) aug.at(row, rd + kk) = coords[row];
  }
  const RowReduceInfo info = row_reduce(qops, aug);
  // The product basis is independent here (dim <F.E> = rd == dim S and the
  // rd generators F_l E_j span it), so the first rd pivots are the basis
  // columns; a pivot beyond them means some s_kk is outside <F.E>.
  for (unsigned p : info.pivots) {
    if (p >= rd) {
      res.failure = DecodeFailure::SyndromeOutsideProduct;
      return res;
    }
  }
  // c[kk][j*d+l] = coefficient of F_l E_j in s_kk.
  std::vector<std::vector<std::uint64_t>> c(
      nk, std::vector<std::uint64_t>(rd, 0));
  for (unsigned row = 0; row < info.pivots.size(); ++row) {
    for (unsigned kk = 0; kk < nk; ++kk) {
      c[kk][info.pivots[row]] = aug.at(row, rd + kk);
    }
  }

  // Step 4: for each E-direction j solve Hhat x_j = rhs_j via the
  // precomputed inverse; rhs_j[kk*d + l] = c[kk][j*d + l].
  // Step 5: e_i = sum_j x_j[i] E_j.
  res.error.assign(P.n, ctx.zero());
  std::vector<std::uint64_t> rhs(P.n), xj(P.n);
  for (unsigned j = 0; j < r; ++j) {
    for (unsigned kk = 0; kk < nk; ++kk) {
      for (unsigned l = 0; l < d; ++l) rhs[kk * d + l] = c[kk][j * d + l];
    }
    xj = mat_vec(qops, code.Hhat_inv, rhs);
    const ExtElem Ej = res.E.basis_elem(j);
    for (unsigned i = 0; i < P.n; ++i) {
      if (xj[i] != 0) {
        res.error[i] = ctx.add(res.error[i], ctx.scalar_mul(xj[i], Ej));
      }
    }
  }

  res.ok = true;
  res.failure = DecodeFailure::None;
  return res;
}

}  // namespace ranksign
