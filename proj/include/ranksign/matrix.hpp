#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "rng.hpp"

namespace ranksign {

/// Field adaptor for GF(q) scalars (uint64 digits).
struct QOps {
  const BaseField* F;
  using Elem = std::uint64_t;
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem x) const { return x == 0; }
  Elem add(Elem x, Elem y) const { return F->add(x, y); }
  Elem sub(Elem x, Elem y) const { return F->sub(x, y); }
  Elem neg(Elem x) const { return F->neg(x); }
  Elem mul(Elem x, Elem y) const { return F->mul(x, y); }
  Elem inv(Elem x) const { return F->inv(x); }
  Elem uniform(Prng& rng) const { return F->uniform(rng); }
};

/// Field adaptor for GF(q^m) elements.
struct EOps {
  const FieldContext* F;
  using Elem = ExtElem;
  Elem zero() const { return F->zero(); }
  Elem one() const { return F->one(); }
  bool is_zero(const Elem& x) const { return F->is_zero(x); }
  Elem add(const Elem& x, const Elem& y) const { return F->add(x, y); }
  Elem sub(const Elem& x, const Elem& y) const { return F->sub(x, y); }
  Elem neg(const Elem& x) const { return F->neg(x); }
  Elem mul(const Elem& x, const Elem& y) const { return F->mul(x, y); }
  Elem inv(const Elem& x) const { return F->inv(x); }
  Elem uniform(Prng& rng) const { return F->sample(rng); }
};

/// Dense row-major matrix over either field; all shapes in scope are small
/// (<= ~200 columns), so no sparse or blocked formats.
template <class Ops>
struct Mat {
  using Elem = typename Ops::Elem;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Elem> e;

  Mat() = default;
  Mat(std::size_t r, std::size_t c, const Elem& fill)
      : rows(r), cols(c), e(r * c, fill) {}

  Elem& at(std::size_t r, std::size_t c) { return e[r * cols + c]; }
  const Elem& at(std::size_t r, std::size_t c) const { return e[r * cols + c]; }

  bool operator==(const Mat& o) const {
    return rows == o.rows && cols == o.cols && e == o.e;
  }
};

using MatGFq = Mat<QOps>;
using MatExt = Mat<EOps>;

struct RowReduceInfo {
  unsigned rank = 0;
  std::vector<unsigned> pivots;  ///< pivot column of each nonzero row
};

/// In-place reduced row-echelon form (canonical: pivots are 1, pivot columns
/// are otherwise zero, pivot columns strictly increase).
template <class Ops>
RowReduceInfo row_reduce(const Ops& ops, Mat<Ops>& M) {
  RowReduceInfo info;
  std::size_t row = 0;
  for (std::size_t col = 0; col < M.cols && row < M.rows; ++col) {
    std::size_t piv = row;
    while (piv < M.rows && ops.is_zero(M.at(piv, col))) ++piv;
    if (piv == M.rows) continue;
    if (piv != row) {
      for (std::size_t c = 0; c < M.cols; ++c) std::swap(M.at(piv, c), M.at(row, c));
    }
    const auto pinv = ops.inv(M.at(row, col));
    for (std::size_t c = col; c < M.cols; ++c) {
      M.at(row, c) = ops.mul(pinv, M.at(row, c));
    }
    for (std::size_t r = 0; r < M.rows; ++r) {
      if (r == row || ops.is_zero(M.at(r, col))) continue;
      const auto f = M.at(r, col);
      for (std::size_t c = col; c < M.cols; ++c) {
        M.at(r, c) = ops.sub(M.at(r, c), ops.mul(f, M.at(row, c)));
      }
    }
    info.pivots.push_back(static_cast<unsigned>(col));
    ++row;
  }
  info.rank = static_cast<unsigned>(row);
  return info;
}

template <class Ops>
unsigned rank_of(const Ops& ops, Mat<Ops> M) {
  return row_reduce(ops, M).rank;
}

/// One solution of M x = b (free variables zero under the canonical pivot
/// order), or nullopt when the system is inconsistent.
template <class Ops>
std::optional<std::vector<typename Ops::Elem>> solve(
    const Ops& ops, const Mat<Ops>& M, const std::vector<typename Ops::Elem>& b) {
  if (b.size() != M.rows) throw BadParams("solve: rhs length mismatch");
  Mat<Ops> aug(M.rows, M.cols + 1, ops.zero());
  for (std::size_t r = 0; r < M.rows; ++r) {
    for (std::size_t c = 0; c < M.cols; ++c) aug.at(r, c) = M.at(r, c);
    aug.at(r, M.cols) = b[r];
  }
  const RowReduceInfo info = row_reduce(ops, aug);
  for (unsigned p : info.pivots) {
    if (p == M.cols) return std::nullopt;  // pivot in the rhs column
  }
  std::vector<typename Ops::Elem> x(M.cols, ops.zero());
  for (std::size_t i = 0; i < info.pivots.size(); ++i) {
    x[info.pivots[i]] = aug.at(i, M.cols);
  }
  return x;
}

template <class Ops>
Mat<Ops> identity(const Ops& ops, std::size_t n) {
  Mat<Ops> I(n, n, ops.zero());
  for (std::size_t i = 0; i < n; ++i) I.at(i, i) = ops.one();
  return I;
}

template <class Ops>
Mat<Ops> invert(const Ops& ops, const Mat<Ops>& M) {
  if (M.rows != M.cols) throw Singular("invert: matrix not square");
  const std::size_t n = M.rows;
  Mat<Ops> aug(n, 2 * n, ops.zero());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = M.at(r, c);
    aug.at(r, n + r) = ops.one();
  }
  const RowReduceInfo info = row_reduce(ops, aug);
  // M is invertible iff the first n pivots land in the left block, i.e. the
  // pivot columns are exactly 0..n-1 (they increase strictly).
  if (info.pivots.size() < n || info.pivots[n - 1] != n - 1) {
    throw Singular("invert: singular matrix");
  }
  Mat<Ops> R(n, n, ops.zero());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) R.at(r, c) = aug.at(r, n + c);
  }
  return R;
}

template <class Ops>
Mat<Ops> mat_mul(const Ops& ops, const Mat<Ops>& A, const Mat<Ops>& B) {
  if (A.cols != B.rows) throw BadParams("mat_mul: shape mismatch");
  Mat<Ops> C(A.rows, B.cols, ops.zero());
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t k = 0; k < A.cols; ++k) {
      if (ops.is_zero(A.at(i, k))) continue;
      for (std::size_t j = 0; j < B.cols; ++j) {
        C.at(i, j) = ops.add(C.at(i, j), ops.mul(A.at(i, k), B.at(k, j)));
      }
    }
  }
  return C;
}

/// M x for a column vector x.
template <class Ops>
std::vector<typename Ops::Elem> mat_vec(const Ops& ops, const Mat<Ops>& M,
                                        const std::vector<typename Ops::Elem>& x) {
  if (x.size() != M.cols) throw BadParams("mat_vec: shape mismatch");
  std::vector<typename Ops::Elem> y(M.rows, ops.zero());
  for (std::size_t r = 0; r < M.rows; ++r) {
    for (std::size_t c = 0; c < M.cols; ++c) {
      if (!ops.is_zero(M.at(r, c))) {
        y[r] = ops.add(y[r], ops.mul(M.at(r, c), x[c]));
      }
    }
  }
  return y;
}

template <class Ops>
Mat<Ops> transpose(const Mat<Ops>& M) {
  Mat<Ops> T;
  T.rows = M.cols;
  T.cols = M.rows;
  T.e.resize(M.e.size(), typename Ops::Elem{});
  for (std::size_t r = 0; r < M.rows; ++r) {
    for (std::size_t c = 0; c < M.cols; ++c) T.at(c, r) = M.at(r, c);
  }
  return T;
}

template <class Ops>
Mat<Ops> sample_uniform(const Ops& ops, std::size_t rows, std::size_t cols,
                        Prng& rng) {
  Mat<Ops> M(rows, cols, ops.zero());
  for (auto& x : M.e) x = ops.uniform(rng);
  return M;
}

/// Uniform over GL(dim, field) by rejection of uniform matrices; the
/// acceptance probability prod_{i>=1}(1 - q^{-i}) makes the expected number
/// of draws < 4 even at q = 2.
template <class Ops>
Mat<Ops> sample_invertible(const Ops& ops, std::size_t dim, Prng& rng,
                           unsigned max_tries = 256) {
  for (unsigned tr = 0; tr < max_tries; ++tr) {
    Mat<Ops> M = sample_uniform(ops, dim, dim, rng);
    if (rank_of(ops, M) == dim) return M;
  }
  throw ResourceExhausted("sample_invertible: retry cap exceeded");
}

/// Mixed product: extension matrix times GF(q) matrix (scalar action on the
/// right), used for H' = A (R|H) P and the signature isometry.
inline MatExt mul_ext_by_q(const FieldContext& ctx, const MatExt& A,
                           const MatGFq& P) {
  if (A.cols != P.rows) throw BadParams("mul_ext_by_q: shape mismatch");
  MatExt C(A.rows, P.cols, ctx.zero());
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t k = 0; k < A.cols; ++k) {
      const ExtElem& a = A.at(i, k);
      if (ctx.is_zero(a)) continue;
      for (std::size_t j = 0; j < P.cols; ++j) {
        const std::uint64_t c = P.at(k, j);
        if (c == 0) continue;
        C.at(i, j) = ctx.add(C.at(i, j), ctx.scalar_mul(c, a));
      }
    }
  }
  return C;
}

/// Row vector times GF(q) matrix: (x P)_j = sum_i x_i P_{ij}.
inline std::vector<ExtElem> row_times_q(const FieldContext& ctx,
                                        const std::vector<ExtElem>& x,
                                        const MatGFq& P) {
  if (x.size() != P.rows) throw BadParams("row_times_q: shape mismatch");
  std::vector<ExtElem> y(P.cols, ctx.zero());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (ctx.is_zero(x[i])) continue;
    for (std::size_t j = 0; j < P.cols; ++j) {
      const std::uint64_t c = P.at(i, j);
      if (c == 0) continue;
      y[j] = ctx.add(y[j], ctx.scalar_mul(c, x[i]));
    }
  }
  return y;
}

}  // namespace ranksign
