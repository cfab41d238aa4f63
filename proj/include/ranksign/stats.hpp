#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "errors.hpp"

namespace ranksign {

namespace detail {

/// Regularized lower incomplete gamma P(s,x) by series expansion (x < s+1).
inline double gamma_p_series(double s, double x) {
  double ap = s;
  double sum = 1.0 / s;
  double del = sum;
  for (int n = 0; n < 10000; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

/// Regularized upper incomplete gamma Q(s,x) by continued fraction (x >= s+1).
inline double gamma_q_cf(double s, double x) {
  const double tiny = std::numeric_limits<double>::min() / 1e-30;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
}

}  // namespace detail

/// Regularized lower incomplete gamma P(s,x).
inline double gamma_p(double s, double x) {
  if (s <= 0.0 || x < 0.0) throw BadParams("gamma_p: domain");
  if (x == 0.0) return 0.0;
  if (x < s + 1.0) return detail::gamma_p_series(s, x);
  return 1.0 - detail::gamma_q_cf(s, x);
}

inline double chi_square_cdf(double x, double dof) {
  return gamma_p(dof / 2.0, x / 2.0);
}

/// Upper tail (p-value) of the chi-square distribution.
inline double chi_square_sf(double x, double dof) {
  if (x <= 0.0) return 1.0;
  if (x < dof / 2.0 + 1.0) return 1.0 - detail::gamma_p_series(dof / 2.0, x / 2.0);
  return detail::gamma_q_cf(dof / 2.0, x / 2.0);
}

struct Chi2Result {
  double stat = 0.0;
  unsigned dof = 0;
  double p_value = 1.0;
};

/// One-sample goodness-of-fit test against uniform expected counts.
inline Chi2Result chi2_uniform(const std::vector<std::uint64_t>& counts) {
  if (counts.size() < 2) throw BadParams("chi2_uniform: need >= 2 bins");
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  const double expected =
      static_cast<double>(total) / static_cast<double>(counts.size());
  if (expected <= 0.0) throw BadParams("chi2_uniform: empty sample");
  Chi2Result res;
  for (auto c : counts) {
    const double diff = static_cast<double>(c) - expected;
    res.stat += diff * diff / expected;
  }
  res.dof = static_cast<unsigned>(counts.size()) - 1;
  res.p_value = chi_square_sf(res.stat, res.dof);
  return res;
}

/// Two-sample chi-square homogeneity test. Adjacent bins are merged until the
/// pooled expected count in each sample reaches 5 (standard validity rule); a
/// degenerate single merged bin yields dof 0 and p = 1.
inline Chi2Result two_sample_chi2(const std::vector<std::uint64_t>& a,
                                  const std::vector<std::uint64_t>& b) {
  if (a.size() != b.size() || a.empty()) {
    throw BadParams("two_sample_chi2: bin mismatch");
  }
  double na = 0.0, nb = 0.0;
  for (auto c : a) na += static_cast<double>(c);
  for (auto c : b) nb += static_cast<double>(c);
  if (na <= 0.0 || nb <= 0.0) throw BadParams("two_sample_chi2: empty sample");
  const double fa = na / (na + nb), fb = nb / (na + nb);
  const double floor_pooled = 5.0 / std::min(fa, fb);

  std::vector<std::pair<double, double>> merged;  // (a count, b count)
  double ca = 0.0, cb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ca += static_cast<double>(a[i]);
    cb += static_cast<double>(b[i]);
    if ((ca + cb) >= floor_pooled) {
      merged.emplace_back(ca, cb);
      ca = cb = 0.0;
    }
  }
  if (ca + cb > 0.0) {
    if (!merged.empty()) {
      merged.back().first += ca;
      merged.back().second += cb;
    } else {
      merged.emplace_back(ca, cb);
    }
  }

  Chi2Result res;
  if (merged.size() < 2) return res;  // dof 0, p = 1
  for (const auto& [xa, xb] : merged) {
    const double pooled = xa + xb;
    const double ea = pooled * fa, eb = pooled * fb;
    res.stat += (xa - ea) * (xa - ea) / ea + (xb - eb) * (xb - eb) / eb;
  }
  res.dof = static_cast<unsigned>(merged.size()) - 1;
  res.p_value = chi_square_sf(res.stat, res.dof);
  return res;
}

}  // namespace ranksign
