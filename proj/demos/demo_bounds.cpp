// Tour of the counting machinery at a scale where everything can be checked
// exhaustively: sphere sizes, the rank Gilbert-Varshamov radius, and the
// two-sided bound on T-decodable syndromes next to a brute-force census.

#include <iostream>

#include "ranksign/bounds.hpp"
#include "ranksign/lrpc.hpp"
#include "ranksign/params.hpp"

using namespace ranksign;

int main() {
  const CodeParams P = preset("toy-q3");
  const FieldContext& ctx = field_for(P);
  const BigInt q = q_of(P);

  std::cout << "toy parameters: q=3 m=" << P.m << " n=" << P.n << " k=" << P.k
            << " d=" << P.d << " t=" << P.t << " r'=" << P.rprime << "\n\n";

  std::cout << "rank spheres S(n=" << P.n << ", m=" << P.m << ", q=3, t):\n";
  BigInt total = 0;
  for (unsigned t = 0; t <= std::min(P.n, P.m); ++t) {
    const BigInt s = sphere_size(P.n, P.m, q, t);
    total += s;
    std::cout << "  t=" << t << "  " << s << "\n";
  }
  std::cout << "  sum " << total << " = 3^" << P.n * P.m << " = "
            << big_pow(q, P.n * P.m) << " (every vector has exactly one rank)\n\n";

  std::cout << "GVR radius of a random [" << P.n << "," << P.k << "] code: "
            << gvr(P.n, P.k, P.m, q) << "   (rank Singleton: "
            << singleton(P.n, P.k, P.m) << ")\n";
  std::cout << "decoding density exponent: " << density_exponent(P)
            << "  (0 means decoding succeeds on almost all syndromes)\n\n";

  // Exhaustive census of decodable syndromes for one concrete (F, T) pair,
  // against the proved two-sided bound.
  const std::vector<ExtElem> Fbasis = {ctx.one(), ctx.beta(1)};
  const Subspace T = Subspace::from_elements(ctx, {ctx.beta(2)});
  const BigInt count = brute_force_tdecodable(P, Fbasis, T);
  const TDecodableBounds b = tdecodable_bounds(P);
  std::cout << "syndrome space has 3^" << P.m * P.nk() << " = "
            << big_pow(q, P.m * P.nk()) << " elements\n";
  std::cout << "exhaustively T-decodable: " << count << "\n";
  std::cout << "proved bound:             [" << b.lower << ", " << b.upper
            << "]\n";
  std::cout << "verdict: " << (BigRat(count) >= b.lower && count <= b.upper
                                   ? "count inside the bound"
                                   : "count OUTSIDE the bound")
            << "\n";
  return 0;
}
