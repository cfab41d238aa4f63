#include <catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "ranksign/field.hpp"
#include "ranksign/rng.hpp"

using namespace ranksign;

namespace {

struct FrozenModulus {
  std::uint64_t p;
  unsigned a;
  unsigned m;
  unsigned index;
  std::vector<std::uint64_t> coeffs;
};

// Every field shape used anywhere in the artifact. The (index, coefficients)
// pairs were generated by an independent reference implementation of the
// splitmix64 modulus convention and frozen here; any drift in the stream,
// the seed mix, or the irreducibility test breaks these equalities.
const std::vector<FrozenModulus>& frozen_moduli() {
  static const std::vector<FrozenModulus> v = {
      {2, 1, 6, 3, {1, 0, 1, 0, 1, 1}},
      {3, 1, 6, 6, {1, 0, 1, 1, 0, 1}},
      {3, 1, 8, 6, {2, 1, 2, 2, 1, 0, 0, 1}},
      {2, 4, 9, 6, {5, 9, 3, 11, 5, 10, 6, 0, 3}},
      {2, 8, 18, 14, {81, 176, 248, 211, 236, 111, 78, 243, 91, 158, 47, 195,
                      98, 42, 131, 227, 111, 181}},
      {2, 6, 20, 5, {52, 14, 28, 21, 51, 2, 38, 51, 8, 58, 18, 23, 50, 14, 52,
                     48, 18, 29, 62, 16}},
      {2, 8, 24, 6, {223, 130, 103, 198, 93, 182, 18, 37, 212, 53, 19, 71, 163,
                     64, 252, 3, 240, 188, 26, 200, 220, 30, 198, 246}},
      {2, 4, 40, 42, {1, 10, 2, 8, 2, 9, 2, 15, 13, 13, 15, 2, 13, 12, 4, 6, 6,
                      2, 5, 1, 9, 10, 4, 2, 8, 1, 12, 4, 1, 6, 7, 10, 11, 13,
                      6, 9, 6, 12, 3, 0}},
      {2, 4, 42, 7, {12, 9, 0, 7, 3, 15, 13, 10, 5, 4, 2, 9, 8, 7, 8, 6, 2, 1,
                     6, 6, 9, 10, 9, 10, 8, 13, 4, 12, 1, 15, 11, 7, 0, 11, 11,
                     2, 13, 13, 4, 10, 15, 6}},
      {2, 16, 18, 8, {24247, 10238, 22517, 19498, 26490, 59506, 18152, 61470,
                      57399, 4197, 40552, 37940, 42319, 52960, 22123, 8935,
                      46712, 55679}},
      {2, 40, 18, 17, {239500512992ULL, 94902065888ULL, 681900245376ULL,
                       1060080027135ULL, 97745146630ULL, 505167010231ULL,
                       322760565475ULL, 169636133423ULL, 304764098072ULL,
                       406848358290ULL, 286035264769ULL, 518127789589ULL,
                       297361817566ULL, 901777281999ULL, 541828832062ULL,
                       647458335989ULL, 848509248314ULL, 846624819793ULL}},
  };
  return v;
}

}  // namespace

TEST_CASE("extension modulus convention reproduces the frozen table", "[field]") {
  for (const auto& f : frozen_moduli()) {
    CAPTURE(f.p, f.a, f.m);
    const FieldContext& ctx = get_field(f.p, f.a, f.m);
    CHECK(ctx.modulus_index() == f.index);
    CHECK(ctx.ext_poly() == f.coeffs);
  }
}

TEST_CASE("base field GF(2^8) matches the AES multiplication example", "[field]") {
  const BaseField F = BaseField::binary(8);
  CHECK(F.poly() == 0x11B);
  CHECK(F.mul(0x53, 0xCA) == 0x01);
  CHECK(F.inv(0x53) == 0xCA);
}

TEST_CASE("base field GF(4) inverse group is the 3-cycle", "[field]") {
  const BaseField F = BaseField::binary(2);
  // Elements: 0, 1, x (=2), x+1 (=3) with x^2 = x + 1.
  CHECK(F.mul(2, 2) == 3);
  CHECK(F.inv(2) == 3);
  CHECK(F.inv(3) == 2);
  CHECK(F.inv(1) == 1);
  CHECK_THROWS_AS(F.inv(0), ZeroInverse);
  for (std::uint64_t x = 1; x < 4; ++x) CHECK(F.mul(x, F.inv(x)) == 1);
}

TEST_CASE("log-table and carry-less multiplication agree at a = 16", "[field]") {
  const BaseField F = BaseField::binary(16);
  Prng rng(101);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t x = rng.below(F.q());
    const std::uint64_t y = rng.below(F.q());
    CHECK(F.mul(x, y) == detail::gf2_mul(x, y, F.poly(), 16));
  }
}

TEST_CASE("a = 40 carry-less path: inverses and associativity", "[field]") {
  const BaseField F = BaseField::binary(40);
  Prng rng(102);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t x = 1 + rng.below(F.q() - 1);
    CHECK(F.mul(x, F.inv(x)) == 1);
  }
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t x = rng.below(F.q());
    const std::uint64_t y = rng.below(F.q());
    const std::uint64_t z = rng.below(F.q());
    CHECK(F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z)));
    CHECK(F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z)));
  }
}

TEST_CASE("extension field axioms hold on randomized triples", "[field]") {
  const struct {
    std::uint64_t p;
    unsigned a, m;
  } configs[] = {{2, 1, 6}, {3, 1, 6}, {2, 4, 9}, {2, 8, 18}};
  for (const auto& cfg : configs) {
    CAPTURE(cfg.p, cfg.a, cfg.m);
    const FieldContext& ctx = get_field(cfg.p, cfg.a, cfg.m);
    Prng rng(7 + cfg.p + cfg.a + cfg.m);
    for (int i = 0; i < 400; ++i) {
      const ExtElem x = ctx.sample(rng);
      const ExtElem y = ctx.sample(rng);
      const ExtElem z = ctx.sample(rng);
      CHECK(ctx.mul(x, y) == ctx.mul(y, x));
      CHECK(ctx.mul(ctx.mul(x, y), z) == ctx.mul(x, ctx.mul(y, z)));
      CHECK(ctx.mul(x, ctx.add(y, z)) == ctx.add(ctx.mul(x, y), ctx.mul(x, z)));
      CHECK(ctx.add(x, ctx.neg(x)) == ctx.zero());
      if (!ctx.is_zero(x)) {
        CHECK(ctx.mul(x, ctx.inv(x)) == ctx.one());
      }
      CHECK(ctx.mul(x, ctx.one()) == x);
      CHECK(ctx.mul(x, ctx.zero()) == ctx.zero());
    }
  }
}

TEST_CASE("characteristic identities", "[field]") {
  {
    const FieldContext& ctx = get_field(2, 8, 18);
    Prng rng(11);
    for (int i = 0; i < 100; ++i) {
      const ExtElem x = ctx.sample(rng);
      CHECK(ctx.is_zero(ctx.add(x, x)));
    }
  }
  {
    const FieldContext& ctx = get_field(3, 1, 6);
    Prng rng(12);
    for (int i = 0; i < 100; ++i) {
      const ExtElem x = ctx.sample(rng);
      CHECK(ctx.is_zero(ctx.add(ctx.add(x, x), x)));
      // Frobenius: cubing is additive in characteristic 3.
      const ExtElem y = ctx.sample(rng);
      CHECK(ctx.pow(ctx.add(x, y), 3) ==
            ctx.add(ctx.pow(x, 3), ctx.pow(y, 3)));
    }
  }
}

TEST_CASE("coordinate maps are the identity on the polynomial basis", "[field]") {
  const FieldContext& ctx = get_field(2, 4, 9);
  for (unsigned j = 0; j < ctx.m(); ++j) {
    const auto c = ctx.to_coords(ctx.beta(j));
    for (unsigned i = 0; i < ctx.m(); ++i) {
      CHECK(c[i] == (i == j ? 1u : 0u));
    }
  }
  Prng rng(13);
  for (int i = 0; i < 1000; ++i) {
    const ExtElem x = ctx.sample(rng);
    CHECK(ctx.from_coords(ctx.to_coords(x)) == x);
    // GF(q)-linearity of the coordinate map.
    const ExtElem y = ctx.sample(rng);
    const std::uint64_t lam = ctx.base().uniform(rng);
    const ExtElem lhs = ctx.add(ctx.scalar_mul(lam, x), y);
    const auto cx = ctx.to_coords(x);
    const auto cy = ctx.to_coords(y);
    auto expect = cy;
    for (unsigned d = 0; d < ctx.m(); ++d) {
      expect[d] = ctx.base().add(ctx.base().mul(lam, cx[d]), cy[d]);
    }
    CHECK(ctx.to_coords(lhs) == expect);
  }
}

TEST_CASE("sampling is deterministic per seed and uniform per coordinate",
          "[field]") {
  const FieldContext& ctx = get_field(2, 1, 4);
  {
    Prng r1(42), r2(42), r3(43);
    const ExtElem a = ctx.sample(r1);
    const ExtElem b = ctx.sample(r2);
    const ExtElem c = ctx.sample(r3);
    CHECK(a == b);
    CHECK(a != c);  // overwhelmingly likely; fixed seeds make it exact
  }
  // Chi-square over the 16 field elements, 10^5 draws.
  Prng rng(4242);
  std::vector<std::uint64_t> counts(16, 0);
  const int N = 100000;
  for (int i = 0; i < N; ++i) {
    const ExtElem x = ctx.sample(rng);
    unsigned v = 0;
    for (unsigned j = 0; j < 4; ++j) v |= static_cast<unsigned>(x[j]) << j;
    counts[v]++;
  }
  const double expected = N / 16.0;
  double chi2 = 0;
  for (auto c : counts) {
    const double dev = static_cast<double>(c) - expected;
    chi2 += dev * dev / expected;
  }
  // 15 degrees of freedom; 37.70 is the 0.1% tail. Seeded, so deterministic.
  CHECK(chi2 < 37.70);
}

TEST_CASE("explicit modulus constructor validates irreducibility", "[field]") {
  const BaseField F = BaseField::binary(8);
  // x^2 is reducible; x^2 + x is reducible; frozen GF(2^8)^18 modulus is not.
  CHECK_THROWS_AS(FieldContext(F, 2, std::vector<std::uint64_t>{0, 0}),
                  BadParams);
  CHECK_THROWS_AS(FieldContext(F, 2, std::vector<std::uint64_t>{0, 1}),
                  BadParams);
  const FieldContext& frozen = get_field(2, 8, 18);
  const FieldContext explicit_ctx(F, 18, frozen.ext_poly());
  CHECK(explicit_ctx.same_field(frozen));
  CHECK(explicit_ctx.modulus_index() == FieldContext::kExplicitModulus);
}

TEST_CASE("unsupported base fields are rejected", "[field]") {
  CHECK_THROWS_AS(BaseField::binary(3), UnsupportedField);
  CHECK_THROWS_AS(BaseField::binary(64), UnsupportedField);
  CHECK_THROWS_AS(BaseField::prime(9), UnsupportedField);    // not prime
  CHECK_THROWS_AS(BaseField::prime(4), UnsupportedField);    // even
  CHECK_THROWS_AS(BaseField::prime(257), UnsupportedField);  // too large
  CHECK(BaseField::prime(3).q() == 3);
  CHECK(BaseField::prime(2).q() == 2);  // routed to the binary field
}

TEST_CASE("inverse of zero in the extension throws", "[field]") {
  const FieldContext& ctx = get_field(3, 1, 6);
  CHECK_THROWS_AS(ctx.inv(ctx.zero()), ZeroInverse);
  CHECK(ctx.inv(ctx.one()) == ctx.one());
}
