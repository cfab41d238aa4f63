#include <catch_amalgamated.hpp>

#include "ranksign/estimator.hpp"

using namespace ranksign;
using Catch::Approx;

namespace {
const char* kRowNames[7] = {"table1-row1", "table1-row2", "table1-row3",
                            "table1-row4", "table1-row5", "table1-row6",
                            "table1-row7"};
}

TEST_CASE("size formulas across the reference rows") {
  // (k+t')(n-k)m log2 q and (m+n+t')r log2 q. Two cells of the published
  // table disagree with its own formulas (row 5 pk prints 23328, the formula
  // gives 21600; row 7 sig prints 2800, the formula with t'=2 gives 2632);
  // the computed values are pinned here as the formula ground truth.
  const double pk_expect[7] = {57600, 11520, 23040, 24960, 21600, 78720, 70560};
  const double sig_expect[7] = {8640, 1728, 3456, 3008, 1470, 2976, 2632};
  for (int i = 0; i < 7; ++i) {
    const CodeParams P = preset(kRowNames[i]);
    INFO(kRowNames[i]);
    CHECK(pk_size_bits(P) == pk_expect[i]);
    CHECK(sig_size_bits(P) == sig_expect[i]);
  }

  CodeParams degenerate = preset("toy-q3");
  degenerate.t = 0;
  degenerate.rprime = 0;
  CHECK(sig_size_bits(degenerate) == 0);
}

TEST_CASE("DS column: exact structural-attack exponents") {
  const double expect[7] = {400, 80, 160, 104, 120, 164, 180};
  for (int i = 0; i < 7; ++i) {
    INFO(kRowNames[i]);
    CHECK(ds_attack_bits(preset(kRowNames[i])) == expect[i]);
  }
  // d=1 degenerate: only the t exponent remains.
  const CodeParams d1{2, 8, 6, 4, 0, 1, 1, 1, 2};
  CHECK(ds_attack_bits(d1) == 8.0);
}

TEST_CASE("Dual column: rank d+t' words in the [n+t', n-k] dual code") {
  // Frozen from an independent big-integer oracle; the published table sits
  // within +-16 bits of each (its rounding convention is unstated).
  const double expect[7] = {1102.4756, 238.4756, 454.4756, 376.8562,
                            169.9316,  320.0384, 224.3539};
  for (int i = 0; i < 7; ++i) {
    const CodeParams P = preset(kRowNames[i]);
    INFO(kRowNames[i]);
    CHECK(combinatorial_attack_bits(P.npub(), P.nk(), P.m, P.p, P.a,
                                    P.d + P.tprime) ==
          Approx(expect[i]).margin(0.01));
  }
}

TEST_CASE("DA column: forgery cost with the solution-count discount") {
  const double expect[7] = {781.5098, 173.5041, 325.5098, 231.7150,
                            118.4525, 94.6215,  86.0436};
  for (int i = 0; i < 7; ++i) {
    const CodeParams P = preset(kRowNames[i]);
    INFO(kRowNames[i]);
    CHECK(forgery_attack_bits(P.npub(), P.kpub(), P.m, P.p, P.a, P.r()) ==
          Approx(expect[i]).margin(0.01));
  }

  SECTION("below GVR the discount clamps to 1 solution") {
    // Rank 3 < GVR 5 on the row-2 augmented code: B(18,18,q,3) <<
    // q^{144}, so the forgery cost equals the bare combinatorial cost.
    CHECK(forgery_attack_bits(18, 10, 18, 2, 8, 3) ==
          Approx(combinatorial_attack_bits(18, 10, 18, 2, 8, 3)).margin(1e-9));
  }

  SECTION("at the Singleton radius the cost collapses to the floor") {
    CHECK(forgery_attack_bits(18, 10, 18, 2, 8, 9) == 0.0);
  }
}

TEST_CASE("combinatorial attack basics") {
  // r=1: the exponent vanishes, leaving the cubic polynomial factor.
  CHECK(combinatorial_attack_bits(16, 8, 18, 2, 8, 1) ==
        Approx(3 * std::log2(8.0) + 3 * std::log2(18.0)).margin(1e-12));
  // Strictly monotone in r while the floor factor is nonzero.
  double prev = 0;
  for (unsigned r = 1; r <= 6; ++r) {
    const double cur = combinatorial_attack_bits(16, 8, 18, 2, 8, r);
    CHECK(cur > prev);
    prev = cur;
  }
  CHECK_THROWS_AS(combinatorial_attack_bits(16, 8, 18, 2, 8, 0), BadParams);
}

TEST_CASE("App-RSD threshold and the per-row hardness scan") {
  CHECK(app_rsd_threshold(16, 8, 18) == 9);
  CHECK(app_rsd_threshold(18, 10, 18) == 8);
  // Boundary: r == threshold means polynomially easy.
  CHECK(6 >= app_rsd_threshold(18, 10, 18) - 2);
  for (const char* name : kRowNames) {
    const CodeParams P = preset(name);
    INFO(name);
    CHECK(P.r() < app_rsd_threshold(P.npub(), P.kpub(), P.m));
  }
}

TEST_CASE("isometry and support-guess formulas") {
  CHECK(isometry_attack_bits(preset("table1-row1")) == 880.0);
  CodeParams no_mask = preset("table1-row2");
  no_mask.tprime = 0;
  CHECK(isometry_attack_bits(no_mask) == 0.0);
  CodeParams more = preset("table1-row2");
  more.tprime = 3;
  CHECK(isometry_attack_bits(more) >
        isometry_attack_bits(preset("table1-row2")));

  // Row 2: 18*8 + 3*log2(32) = 159 exactly.
  CHECK(support_guess_bits(preset("table1-row2")) == 159.0);
}

TEST_CASE("full_report assembles the table row") {
  SECTION("row 2 headline values") {
    const SecurityReport rep = full_report(preset("table1-row2"));
    CHECK(rep.pk_bits == 11520);
    CHECK(rep.sig_bits == 1728);
    CHECK(rep.gvr_aug == 5);
    CHECK(rep.singleton_aug == 9);
    CHECK(rep.rsd_threshold == 8);
    CHECK(rep.density_exp == 0);
    CHECK(rep.attack_bits.at("DS") == 80);
    CHECK(rep.best_attack == "DS");
    CHECK(rep.sub_128bit == std::vector<std::string>{"DS"});
    REQUIRE(rep.lp.has_value());
    CHECK(*rep.lp == "110");
    CHECK(rep.gvr_below_singleton);
  }

  SECTION("augmented GVR and Singleton columns across all rows") {
    const unsigned gvr_expect[7] = {5, 5, 5, 6, 4, 6, 5};
    const unsigned singleton_expect[7] = {9, 9, 9, 11, 7, 10, 9};
    for (int i = 0; i < 7; ++i) {
      const SecurityReport rep = full_report(preset(kRowNames[i]));
      INFO(kRowNames[i]);
      CHECK(rep.gvr_aug == gvr_expect[i]);
      CHECK(rep.singleton_aug == singleton_expect[i]);
      CHECK(rep.density_exp == 0);
      REQUIRE(rep.lp.has_value());
    }
  }

  SECTION("LP quotes only attach to exact published rows") {
    CHECK_FALSE(full_report(preset("toy-q3")).lp.has_value());
    CodeParams tweaked = preset("table1-row2");
    tweaked.t = 1;
    CHECK_FALSE(full_report(tweaked).lp.has_value());
  }

  SECTION("strong row has no sub-128-bit attack") {
    const SecurityReport rep = full_report(preset("table1-row1"));
    CHECK(rep.sub_128bit.empty());
    CHECK(rep.best_attack == "DS");
    CHECK(rep.attack_bits.at("Isometry") == 880.0);
  }
}
