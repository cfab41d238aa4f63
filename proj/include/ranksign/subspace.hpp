#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "matrix.hpp"
#include "rng.hpp"

namespace ranksign {

/// A GF(q)-subspace of GF(q^m), stored as a canonical (RREF) basis of
/// coordinate rows. Canonical form makes equality bit-exact: two subspaces
/// are equal iff their stored bases are identical. The zero subspace is a
/// first-class value with an empty basis.
class Subspace {
 public:
  explicit Subspace(const FieldContext& ctx) : ctx_(&ctx) {}

  static Subspace zero(const FieldContext& ctx) { return Subspace(ctx); }

  /// Span of a set of extension elements.
  static Subspace from_elements(const FieldContext& ctx,
                                const std::vector<ExtElem>& gens) {
    Subspace s(ctx);
    s.absorb(gens);
    return s;
  }

  const FieldContext& ctx() const { return *ctx_; }
  unsigned dim() const { return static_cast<unsigned>(rows_.size()); }

  /// i-th canonical basis vector as an extension element.
  ExtElem basis_elem(unsigned i) const { return ctx_->from_coords(rows_.at(i)); }

  std::vector<ExtElem> basis() const {
    std::vector<ExtElem> b;
    b.reserve(rows_.size());
    for (const auto& r : rows_) b.push_back(ctx_->from_coords(r));
    return b;
  }

  const std::vector<std::vector<std::uint64_t>>& coord_rows() const {
    return rows_;
  }

  bool operator==(const Subspace& o) const { return rows_ == o.rows_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }
  bool operator<(const Subspace& o) const { return rows_ < o.rows_; }

  /// Exact membership: the residue of x after elimination by the canonical
  /// basis is zero.
  bool contains(const ExtElem& x) const {
    std::vector<std::uint64_t> v = ctx_->to_coords(x);
    reduce_against(v);
    return std::all_of(v.begin(), v.end(),
                       [](std::uint64_t c) { return c == 0; });
  }

  bool contains_subspace(const Subspace& o) const {
    for (const auto& r : o.rows_) {
      if (!contains(ctx_->from_coords(r))) return false;
    }
    return true;
  }

  Subspace sum(const Subspace& o) const {
    Subspace s = *this;
    std::vector<ExtElem> gens;
    gens.reserve(o.rows_.size());
    for (const auto& r : o.rows_) gens.push_back(ctx_->from_coords(r));
    s.absorb(gens);
    return s;
  }

  /// Exact intersection by the Zassenhaus construction: row-reduce
  /// [a|a; b|0]; rows with zero left half carry a basis of the intersection
  /// in their right half.
  Subspace intersect(const Subspace& o) const {
    const unsigned m = ctx_->m();
    QOps ops{&ctx_->base()};
    MatGFq Z(dim() + o.dim(), 2 * m, 0);
    for (unsigned i = 0; i < dim(); ++i) {
      for (unsigned j = 0; j < m; ++j) {
        Z.at(i, j) = rows_[i][j];
        Z.at(i, m + j) = rows_[i][j];
      }
    }
    for (unsigned i = 0; i < o.dim(); ++i) {
      for (unsigned j = 0; j < m; ++j) Z.at(dim() + i, j) = o.rows_[i][j];
    }
    row_reduce(ops, Z);
    Subspace r(*ctx_);
    std::vector<ExtElem> gens;
    for (std::size_t i = 0; i < Z.rows; ++i) {
      bool left_zero = true;
      for (unsigned j = 0; j < m && left_zero; ++j) {
        left_zero = (Z.at(i, j) == 0);
      }
      if (!left_zero) continue;
      std::vector<std::uint64_t> right(m);
      bool right_zero = true;
      for (unsigned j = 0; j < m; ++j) {
        right[j] = Z.at(i, m + j);
        right_zero = right_zero && right[j] == 0;
      }
      if (!right_zero) gens.push_back(ctx_->from_coords(right));
    }
    r.absorb(gens);
    return r;
  }

  /// Product space <A.B> = span{a*b : a in A, b in B} from the pairwise
  /// products of the two canonical bases.
  static Subspace product_space(const Subspace& A, const Subspace& B) {
    std::vector<ExtElem> gens;
    gens.reserve(static_cast<std::size_t>(A.dim()) * B.dim());
    for (const auto& ra : A.rows_) {
      const ExtElem a = A.ctx_->from_coords(ra);
      for (const auto& rb : B.rows_) {
        gens.push_back(A.ctx_->mul(a, B.ctx_->from_coords(rb)));
      }
    }
    Subspace s(*A.ctx_);
    s.absorb(gens);
    return s;
  }

  /// {x^{-1} s : s in S}; a bijective scalar action, so the dimension is
  /// preserved.
  Subspace scale_inv(const ExtElem& x) const {
    if (ctx_->is_zero(x)) throw ZeroScalar("scale_inv: zero scalar");
    const ExtElem xi = ctx_->inv(x);
    std::vector<ExtElem> gens;
    gens.reserve(rows_.size());
    for (const auto& r : rows_) gens.push_back(ctx_->mul(xi, ctx_->from_coords(r)));
    Subspace s(*ctx_);
    s.absorb(gens);
    return s;
  }

  /// Extend this subspace by additional generators (returns a new subspace).
  Subspace extended(const std::vector<ExtElem>& gens) const {
    Subspace s = *this;
    s.absorb(gens);
    return s;
  }

  // ---- sampling -------------------------------------------------------------

  /// Uniform random subspace of the requested dimension (span of iid uniform
  /// vectors, rejected while dependent).
  static Subspace sample(const FieldContext& ctx, unsigned dim, Prng& rng) {
    return sample_superspace(Subspace::zero(ctx), dim, rng);
  }

  /// Uniform random dim-r subspace containing T, built by extending T one
  /// uniform independent vector at a time (matching the counting argument
  /// behind the superspace formula).
  static Subspace sample_superspace(const Subspace& T, unsigned r, Prng& rng) {
    const FieldContext& ctx = T.ctx();
    if (r < T.dim() || r > ctx.m()) {
      throw BadParams("sample_superspace: dimension out of range");
    }
    Subspace s = T;
    unsigned guard = 0;
    while (s.dim() < r) {
      const ExtElem v = ctx.sample(rng);
      if (!s.contains(v)) {
        s.absorb({v});
      } else if (++guard > 4096) {
        throw ResourceExhausted("sample_superspace: rejection cap exceeded");
      }
    }
    return s;
  }

  /// Uniform element of the subspace (uniform GF(q)-combination of the basis).
  ExtElem sample_element(Prng& rng) const {
    ExtElem acc = ctx_->zero();
    for (const auto& r : rows_) {
      const std::uint64_t c = ctx_->base().uniform(rng);
      if (c != 0) acc = ctx_->add(acc, ctx_->scalar_mul(c, ctx_->from_coords(r)));
    }
    return acc;
  }

  /// n coordinates drawn iid uniform from the subspace.
  std::vector<ExtElem> sample_vector_in(std::size_t n, Prng& rng) const {
    std::vector<ExtElem> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(sample_element(rng));
    return v;
  }

  // ---- toy-scale enumeration --------------------------------------------------

  /// All q^dim elements (guarded).
  std::vector<ExtElem> enumerate_elements(std::uint64_t guard = 1u << 20) const {
    const std::uint64_t q = ctx_->q();
    std::uint64_t total = 1;
    for (unsigned i = 0; i < dim(); ++i) {
      if (total > guard / q + 1) throw TooLarge("enumerate_elements: guard");
      total *= q;
    }
    if (total > guard) throw TooLarge("enumerate_elements: guard");
    std::vector<ExtElem> out;
    out.reserve(total);
    std::vector<std::uint64_t> digits(dim(), 0);
    for (std::uint64_t c = 0; c < total; ++c) {
      ExtElem acc = ctx_->zero();
      for (unsigned i = 0; i < dim(); ++i) {
        if (digits[i] != 0) {
          acc = ctx_->add(acc, ctx_->scalar_mul(digits[i], ctx_->from_coords(rows_[i])));
        }
      }
      out.push_back(std::move(acc));
      for (unsigned i = 0; i < dim(); ++i) {
        if (++digits[i] < q) break;
        digits[i] = 0;
      }
    }
    return out;
  }

  /// All subspaces E with T <= E and dim E = r (toy scale; deduplicated via
  /// the canonical form).
  static std::vector<Subspace> enumerate_superspaces(const Subspace& T,
                                                     unsigned r,
                                                     std::uint64_t guard = 1u << 22) {
    const FieldContext& ctx = T.ctx();
    if (r < T.dim() || r > ctx.m()) {
      throw BadParams("enumerate_superspaces: dimension out of range");
    }
    // Enumerating the whole ambient space once keeps the recursion simple.
    Subspace ambient(ctx);
    std::vector<ExtElem> betas;
    for (unsigned i = 0; i < ctx.m(); ++i) betas.push_back(ctx.beta(i));
    ambient.absorb(betas);
    const std::vector<ExtElem> all = ambient.enumerate_elements(guard);
    std::set<Subspace> found;
    std::vector<Subspace> frontier{T};
    for (unsigned step = T.dim(); step < r; ++step) {
      std::set<Subspace> next;
      for (const auto& s : frontier) {
        for (const auto& v : all) {
          if (s.contains(v)) continue;
          next.insert(s.extended({v}));
          if (next.size() > guard) throw TooLarge("enumerate_superspaces: guard");
        }
      }
      frontier.assign(next.begin(), next.end());
    }
    if (frontier.empty() && T.dim() == r) frontier.push_back(T);
    return frontier;
  }

 private:
  /// Eliminate v against the canonical rows in place.
  void reduce_against(std::vector<std::uint64_t>& v) const {
    const BaseField& F = ctx_->base();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::uint64_t c = v[pivots_[i]];
      if (c == 0) continue;
      for (unsigned j = pivots_[i]; j < ctx_->m(); ++j) {
        v[j] = F.sub(v[j], F.mul(c, rows_[i][j]));
      }
    }
  }

  /// Insert generators and recanonicalize (full RREF).
  void absorb(const std::vector<ExtElem>& gens) {
    if (gens.empty()) return;
    QOps ops{&ctx_->base()};
    const unsigned m = ctx_->m();
    MatGFq M(rows_.size() + gens.size(), m, 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      for (unsigned j = 0; j < m; ++j) M.at(i, j) = rows_[i][j];
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const auto coords = ctx_->to_coords(gens[i]);
      for (unsigned j = 0; j < m; ++j) M.at(rows_.size() + i, j) = coords[j];
    }
    const RowReduceInfo info = row_reduce(ops, M);
    rows_.assign(info.rank, std::vector<std::uint64_t>(m));
    for (unsigned i = 0; i < info.rank; ++i) {
      for (unsigned j = 0; j < m; ++j) rows_[i][j] = M.at(i, j);
    }
    pivots_ = info.pivots;
  }

  const FieldContext* ctx_;
  std::vector<std::vector<std::uint64_t>> rows_;  // canonical RREF basis
  std::vector<unsigned> pivots_;
};

}  // namespace ranksign
