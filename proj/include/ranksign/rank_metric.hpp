#pragma once

#include <cstddef>
#include <vector>

#include "field.hpp"
#include "matrix.hpp"
#include "subspace.hpp"

namespace ranksign {

/// A length-n vector over GF(q^m) together with its field context; the
/// carrier for codewords, errors and signatures.
struct RankVector {
  const FieldContext* ctx = nullptr;
  std::vector<ExtElem> coords;

  std::size_t size() const { return coords.size(); }
};

/// The m x n base-field expansion: column j holds the coordinates of the
/// j-th entry in the basis beta.
inline MatGFq expand(const RankVector& v) {
  const unsigned m = v.ctx->m();
  MatGFq M(m, v.size(), 0);
  for (std::size_t j = 0; j < v.size(); ++j) {
    const auto coords = v.ctx->to_coords(v.coords[j]);
    for (unsigned i = 0; i < m; ++i) M.at(i, j) = coords[i];
  }
  return M;
}

/// Inverse of expand: reassemble the vector from matrix columns.
inline RankVector from_expansion(const FieldContext& ctx, const MatGFq& M) {
  RankVector v;
  v.ctx = &ctx;
  v.coords.reserve(M.cols);
  for (std::size_t j = 0; j < M.cols; ++j) {
    std::vector<std::uint64_t> col(ctx.m());
    for (unsigned i = 0; i < ctx.m(); ++i) col[i] = M.at(i, j);
    v.coords.push_back(ctx.from_coords(col));
  }
  return v;
}

/// Rank weight: the rank of the base-field expansion.
inline unsigned rank_weight(const RankVector& v) {
  QOps ops{&v.ctx->base()};
  MatGFq M = expand(v);
  return rank_of(ops, M);
}

/// Support: the GF(q)-span of the coordinates (dimension = rank weight).
inline Subspace support(const RankVector& v) {
  return Subspace::from_elements(*v.ctx, v.coords);
}

/// Rank distance d_r(x, y) = rank_weight(x - y).
inline unsigned rank_distance(const RankVector& x, const RankVector& y) {
  RankVector d;
  d.ctx = x.ctx;
  d.coords.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    d.coords.push_back(x.ctx->sub(x.coords[i], y.coords[i]));
  }
  return rank_weight(d);
}

/// Right action of a GF(q) matrix (an isometry when P is invertible).
inline RankVector apply_isometry(const RankVector& v, const MatGFq& P) {
  RankVector r;
  r.ctx = v.ctx;
  r.coords = row_times_q(*v.ctx, v.coords, P);
  return r;
}

}  // namespace ranksign
