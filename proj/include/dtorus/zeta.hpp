#pragma once

// Spectral zeta functions of T^d_N and of the flat torus R^2/Z^2.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "dtorus/cyclotomic.hpp"
#include "dtorus/detail/bigreal.hpp"
#include "dtorus/errors.hpp"
#include "dtorus/semigroup.hpp"
#include "dtorus/spectrum.hpp"

namespace dtorus {

using detail::BigReal;

/// Number of (m, n) in Z^2 with m^2 + n^2 = M, from the factorization of M.
/// r2(0) is taken to be 1.
inline std::int64_t r2(std::int64_t m) {
  if (m < 0) throw PreconditionViolated("r2: M must be >= 0");
  if (m == 0) return 1;
  std::int64_t r = 4;
  for (const auto& [p, e] : factorize(m)) {
    if (p % 4 == 1) r *= e + 1;
    if (p % 4 == 3 && e % 2 != 0) return 0;
  }
  return r;
}

/// r2(M) for all 0 <= M <= cutoff, same formula driven by a least-prime-factor sieve.
inline std::vector<std::int32_t> r2_table(std::int64_t cutoff) {
  const auto n = static_cast<std::size_t>(cutoff) + 1;
  std::vector<std::int32_t> lpf(n, 0);
  for (std::size_t i = 2; i < n; ++i) {
    if (lpf[i] != 0) continue;
    for (std::size_t j = i; j < n; j += i) {
      if (lpf[j] == 0) lpf[j] = static_cast<std::int32_t>(i);
    }
  }
  std::vector<std::int32_t> out(n, 0);
  if (n > 0) out[0] = 1;
  for (std::size_t m = 1; m < n; ++m) {
    std::int32_t r = 4;
    std::size_t rest = m;
    while (rest > 1 && r != 0) {
      const auto p = static_cast<std::size_t>(lpf[rest]);
      int e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      if (p % 4 == 1) r *= e + 1;
      if (p % 4 == 3 && e % 2 != 0) r = 0;
    }
    out[m] = r;
  }
  return out;
}

struct ZetaValue {
  BigReal value;
  BigReal radius;  ///< first-order propagated evaluation error
};

/// sum over nonzero Laplacian eigenvalues of T^d_N of lambda^-s, with
/// multiplicity. Terms are added in ascending order of lambda.
inline ZetaValue zeta_discrete(int n, int d, double s, std::size_t budget = kDefaultBudget,
                               mpfr_prec_t prec = 128) {
  if (!(s > 0)) throw PreconditionViolated("zeta_discrete: s must be > 0");
  const auto lap = laplacian_view(torus_spectrum(n, d, budget), 2 * d);
  const auto& ctx = context(n);
  ApproxEvaluator eval(ctx, prec);
  struct Term {
    ApproxValue lambda;
    const BigInt* count;
  };
  std::vector<Term> terms;
  terms.reserve(lap.size());
  for (const auto& [k, e] : lap.entries) {
    if (k.is_zero()) continue;
    terms.push_back({eval(k), &e.count});
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.lambda.real < b.lambda.real; });
  const BigReal minus_s(-s, prec), minus_s_minus_1(-s - 1, prec), s_real(s, prec);
  BigReal sum(prec), err(prec);
  for (const auto& t : terms) {
    if (t.lambda.real <= t.lambda.radius) throw ConsistencyError("nonzero Laplacian eigenvalue not certified positive");
    const BigReal c = BigReal::from_int(*t.count, prec);
    sum += c * t.lambda.real.pow(minus_s);
    // |d(lambda^-s)| <= s lambda^(-s-1) |d lambda|, plus one rounding of the term.
    const BigReal lower = t.lambda.real - t.lambda.radius;
    BigReal e = c * s_real * lower.pow(minus_s_minus_1) * t.lambda.radius;
    err.add_up(e);
  }
  // Summation roundings: at most terms.size() half-ulps of the running total.
  BigReal rounding = sum * BigReal::pow2(-static_cast<long>(prec) + 1, prec);
  rounding.mul_si(static_cast<long>(terms.size()) + 1);
  err.add_up(rounding);
  return {std::move(sum), std::move(err)};
}

/// sum_{0 < M <= cutoff} r2(M) (4 pi^2 M)^-s, smallest terms first.
inline BigReal zeta_continuum_partial(double s, std::int64_t cutoff, mpfr_prec_t prec = 128) {
  if (!(s > 1)) throw PreconditionViolated("zeta_continuum_partial: s must be > 1");
  if (cutoff < 0) throw PreconditionViolated("zeta_continuum_partial: cutoff must be >= 0");
  BigReal sum(prec);
  if (cutoff == 0) return sum;
  const auto r2s = r2_table(cutoff);
  const BigReal minus_s(-s, prec);
  for (std::int64_t m = cutoff; m >= 1; --m) {
    const auto r = r2s[static_cast<std::size_t>(m)];
    if (r == 0) continue;
    BigReal term = BigReal(static_cast<long>(m), prec).pow(minus_s);
    sum += term.mul_si(r);
  }
  BigReal four_pi_sq = BigReal::pi(prec);
  four_pi_sq *= four_pi_sq;
  four_pi_sq.mul_si(4);
  return sum * four_pi_sq.pow(minus_s);
}

struct ZetaRow {
  int modulus;
  double s;
  BigReal value;   ///< N^{-2s} zeta_{T^2_N}(s)
  BigReal radius;
};

struct CjkTable {
  std::vector<ZetaRow> rows;
  BigReal reference;  ///< continuum partial sum
};

/// Rescaled discrete zetas N^{-2s} zeta_{T^2_N}(s) next to the continuum
/// reference. No convergence judgement is made here.
inline CjkTable cjk_table(double s, const std::vector<int>& moduli, std::int64_t cutoff,
                          std::size_t budget = kDefaultBudget, mpfr_prec_t prec = 128) {
  if (!(s > 1)) throw PreconditionViolated("cjk_table: s must be > 1");
  CjkTable out{{}, zeta_continuum_partial(s, cutoff, prec)};
  const BigReal minus_two_s(-2 * s, prec);
  for (int n : moduli) {
    auto z = zeta_discrete(n, 2, s, budget, prec);
    const BigReal scale = BigReal(static_cast<long>(n), prec).pow(minus_two_s);
    out.rows.push_back({n, s, z.value * scale, z.radius * scale});
  }
  return out;
}

}  // namespace dtorus
