// Acceptance suite: one PASS/FAIL line per criterion, followed by indented
// detail lines. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dtorus/dtorus.hpp"

using namespace dtorus;
using detail::BigReal;

namespace {

// Pinned tolerances and limits.
constexpr double kCjkRelativeGap = 0.02;
constexpr std::int64_t kCjkCutoff = 1'000'000;
constexpr double kLinearSlopeMin = 0.5;   // m_{T^3_N}(0) / N
constexpr double kDoublingRatioMin = 1.5; // m(2N) / m(N)
constexpr int kProductCases = 200;
constexpr std::uint32_t kProductSeed = 20240611;

struct Result {
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { details.push_back("     " + what); }
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<Result()> body;
};

template <class... Ts>
std::string cat(const Ts&... xs) {
  std::ostringstream ss;
  (ss << ... << xs);
  return ss.str();
}

Result zero_multiplicity_d2() {
  Result r;
  int bad = 0;
  for (int n = 4; n <= 400; n += 2) {
    TorusTower tower(n);
    if (tower.multiplicity(zero_elt(tower.ctx()), 2) != 2 * n - 2) {
      ++bad;
      r.check(false, cat("N=", n));
    }
  }
  r.check(bad == 0, "m(0) = 2N-2 for all even N in [4, 400]");
  return r;
}

Result closed_forms() {
  Result r;
  std::size_t pairs = 0, moduli = 0;
  for (int n = 3; n <= 200; ++n) {
    if (n % 2 != 0 && n > 199) continue;
    if (!d2_closed_form_applies(n)) continue;
    ++moduli;
    const auto table = torus_spectrum(n, 2);
    const auto& ctx = context(n);
    std::vector<CycElt> cosines;
    for (int k = 0; k < n; ++k) cosines.push_back(cos_key(ctx, k));
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) {
      for (int b = 0; b < n; ++b) {
        ++pairs;
        if (BigInt(*d2_closed_form(n, a, b)) != table.count_of(cosines[a] + cosines[b])) {
          r.check(false, cat("N=", n, " (", a, ",", b, ")"));
          ok = false;
          break;
        }
      }
    }
  }
  r.check(r.pass, cat("closed form equals enumeration on ", pairs, " index pairs over ", moduli, " moduli"));
  return r;
}

Result bound24() {
  Result r;
  BigInt best = 0;
  int argmax = 0;
  bool within = true;
  for (int n = 3; n <= 420; ++n) {
    try {
      const auto rep = verify_bound24(n);
      if (rep.max_multiplicity > best) {
        best = rep.max_multiplicity;
        argmax = n;
      }
    } catch (const Bound24Violated& e) {
      within = false;
      r.note(e.what());
    }
  }
  r.check(within, cat("(a) max nonzero multiplicity <= 24 for 3 <= N <= 420 (max ", best, " at N=", argmax, ")"));

  const auto rep = verify_bound24(60);
  const auto& ctx = context(60);
  std::vector<CycElt> expect{cos_key(ctx, 6), -cos_key(ctx, 6), cos_key(ctx, 12), -cos_key(ctx, 12)};
  auto got = rep.attaining;
  std::sort(expect.begin(), expect.end());
  std::sort(got.begin(), got.end());
  r.check(rep.max_multiplicity == 24 && got == expect,
          "(b) N=60 attains 24 exactly at +-2cos(pi/5), +-2cos(2pi/5)");

  const auto chk = verify_table60();
  const std::set<BigInt> mults{12, 16, 20, 24, 118};
  r.check(chk.rows_match() && chk.computed_multiplicities == mults,
          "(c) every listed T^2_60 row has its listed multiplicity; multiplicities above 8 are {12,16,20,24,118}");
  r.check(chk.complete(), cat("(d) no eigenvalue of multiplicity > 8 outside the listed rows (", chk.unlisted.size(),
                              " unlisted)"));
  std::map<BigInt, std::size_t> by_mult;
  for (const auto& [k, c] : chk.unlisted) ++by_mult[c];
  for (const auto& [c, count] : by_mult) r.note(cat("unlisted: ", count, " eigenvalues with multiplicity ", c));
  return r;
}

Result zero_criterion() {
  Result r;
  std::size_t cases = 0;
  for (int n = 3; n <= 60; ++n) {
    TorusTower tower(n);
    for (int d = 1; d <= 6; ++d) {
      ++cases;
      if (is_zero_eigenvalue(n, d) != tower.contains(zero_elt(tower.ctx()), d)) {
        r.check(false, cat("N=", n, " d=", d));
      }
    }
  }
  r.check(r.pass, cat("criterion equals exact membership on ", cases, " (N, d) cases"));
  return r;
}

Result growth_dichotomy() {
  Result r;
  TorusTower t15(15), t105(105);
  const auto m15 = t15.multiplicity(zero_elt(t15.ctx()), 4);
  const auto m105 = t105.multiplicity(zero_elt(t105.ctx()), 4);
  r.check(m15 == m105, cat("(a) m_{T^4_15}(0) = ", m15, ", m_{T^4_105}(0) = ", m105));
  r.note(cat("(a) oracle value 192: ", m15 == 192 ? "matches" : "differs"));

  for (int n : {30, 60, 90, 120}) {
    TorusTower tn(n), t2n(2 * n);
    const auto mn = tn.multiplicity(zero_elt(tn.ctx()), 3);
    const auto m2n = t2n.multiplicity(zero_elt(t2n.ctx()), 3);
    const double slope = static_cast<double>(mn) / n;
    const double ratio = static_cast<double>(m2n) / static_cast<double>(mn);
    r.check(slope >= kLinearSlopeMin && ratio >= kDoublingRatioMin,
            cat("(b) N=", n, ": m/N = ", slope, ", m(2N)/m(N) = ", ratio));
  }

  for (int n : {15, 45}) {
    TorusTower t(n);
    const auto m = t.multiplicity(cos_key(t.ctx(), 1), 4);
    r.check(m >= n / 6, cat("(c) m_{T^4_", n, "}(2cos(2pi/", n, ")) = ", m, " >= ", n / 6));
  }
  return r;
}

Result vanishing_lengths_criterion() {
  Result r;
  for (int n : {5, 6, 10, 15, 21, 30}) {
    const auto exists = vanishing_lengths(n, 8, kDefaultBudget);
    bool ok = true;
    for (int len = 0; len <= 8; ++len) ok &= exists[static_cast<std::size_t>(len)] == w_membership(n, len).has_value();
    r.check(ok, cat("N=", n, ": vanishing length L <= 8 iff L in W(N)"));
  }
  std::size_t minimal = 0, symmetric = 0;
  for (const auto& s : minimal_vanishing_sums(30, 5, kDefaultBudget)) {
    if (!s.minimal) continue;
    ++minimal;
    try {
      symmetric += is_symmetric_rotation(s.roots).has_value();
    } catch (const NotApplicable&) {
    }
  }
  r.check(minimal > 0 && minimal == symmetric,
          cat("N=30: ", symmetric, " of ", minimal, " minimal sums of size <= 5 are symmetric"));
  return r;
}

Result pq_witnesses() {
  Result r;
  const std::vector<std::int64_t> primes{3, 5, 7, 11, 13, 17, 19, 23};
  std::size_t witnesses = 0;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    for (std::size_t j = i + 1; j < primes.size(); ++j) {
      const auto p = primes[i], q = primes[j];
      const auto lo = std::max((p - 1) * (q - 2), p + q + 1);
      for (std::int64_t d = (lo + 1) / 2; 2 * d <= lo + 40; ++d) {
        const auto [k1, k2] = lowerbound_pq_witness(p, q, d);
        ++witnesses;
        if (!(k1 >= 0 && k2 >= 0 && k1 * p + k2 * q == 2 * d && std::max(k1, k2) >= 2)) {
          r.check(false, cat("p=", p, " q=", q, " d=", d));
        }
      }
      if (!pq_optimality_check(p, q)) r.check(false, cat("optimality p=", p, " q=", q));
    }
  }
  r.check(r.pass, cat(witnesses, " witnesses re-verified; optimality holds for all 28 pairs"));
  return r;
}

Result r2_formula() {
  Result r;
  constexpr std::int64_t kMax = 10'000;
  std::vector<std::int64_t> brute(kMax + 1, 0);
  for (std::int64_t a = -100; a <= 100; ++a)
    for (std::int64_t b = -100; b <= 100; ++b)
      if (a * a + b * b <= kMax) ++brute[static_cast<std::size_t>(a * a + b * b)];
  const auto table = r2_table(kMax);
  bool ok = true;
  for (std::int64_t m = 0; m <= kMax; ++m) {
    ok &= r2(m) == brute[static_cast<std::size_t>(m)];
    ok &= table[static_cast<std::size_t>(m)] == brute[static_cast<std::size_t>(m)];
  }
  r.check(ok, "r2 formula and sieve equal the lattice count for all M <= 10^4");
  return r;
}

Result cjk_limit() {
  Result r;
  const auto t = cjk_table(2, {16, 32, 64, 128}, kCjkCutoff);
  std::optional<BigReal> prev;
  bool decreasing = true;
  for (const auto& row : t.rows) {
    const BigReal dist = (row.value - t.reference).abs();
    // Distances are compared only when separated by more than the error radius.
    if (prev && !(dist + row.radius < *prev)) decreasing = false;
    r.note(cat("N=", row.modulus, ": N^-4 zeta = ", row.value.to_string(12), ", distance ", dist.to_string(4)));
    prev = dist;
  }
  r.note(cat("continuum partial sum (cutoff 10^6) = ", t.reference.to_string(12)));
  r.check(decreasing, "distance to the continuum strictly decreasing over N = 16, 32, 64, 128");
  const double gap = ((t.rows.back().value - t.reference).abs() / t.reference).to_double();
  r.check(gap < kCjkRelativeGap, cat("final relative gap ", gap, " < ", kCjkRelativeGap));
  return r;
}

Result global_exponent() {
  Result r;
  for (int n : {9, 15, 21}) {
    TorusTower t(n);
    const auto m = t.multiplicity(zero_elt(t.ctx()), 3);
    r.check(3 * m >= n, cat("m_{T^3_", n, "}(0) = ", m, " >= N/3"));
  }
  const auto f = zero_lower_bound_family(9, 2);
  r.check(f.dimension == 6 && f.holds(), cat("m_{T^6_9}(0) = ", f.multiplicity, " >= ", f.bound));
  return r;
}

Result product_inequality_random() {
  Result r;
  std::mt19937 rng(kProductSeed);
  int held = 0;
  for (int i = 0; i < kProductCases; ++i) {
    const int n = std::uniform_int_distribution<int>(3, 20)(rng);
    const int d = std::uniform_int_distribution<int>(2, 3)(rng);
    std::vector<int> t(static_cast<std::size_t>(d));
    for (auto& k : t) k = std::uniform_int_distribution<int>(0, n - 1)(rng);
    const int d1 = std::uniform_int_distribution<int>(1, d - 1)(rng);
    TorusTower tower(n);
    const auto p = product_inequality(tower, t, d1);
    if (p.holds()) {
      ++held;
    } else {
      r.check(false, cat("N=", n, " tuple size ", d, " split ", d1));
    }
  }
  r.check(held == kProductCases, cat(held, " of ", kProductCases, " sampled cases satisfy the inequality"));
  return r;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "zero multiplicity of T^2_N, even N", 60, zero_multiplicity_d2},
      {2, "closed forms for T^2_N multiplicities", 300, closed_forms},
      {3, "optimal bound 24 and the T^2_60 table", 600, bound24},
      {4, "zero-eigenvalue criterion", 600, zero_criterion},
      {5, "growth dichotomy", 600, growth_dichotomy},
      {6, "vanishing-sum lengths", 600, vanishing_lengths_criterion},
      {7, "<p,q> witnesses", 1, pq_witnesses},
      {8, "r2 formula", 10, r2_formula},
      {9, "rescaled zeta limit", 120, cjk_limit},
      {10, "global exponent lower bound", 300, global_exponent},
      {11, "product inequality", 60, product_inequality_random},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result res;
    try {
      res = c.body();
    } catch (const std::exception& e) {
      res.check(false, cat("exception: ", e.what()));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    res.check(secs < c.limit_seconds, cat("runtime ", secs, " s < ", c.limit_seconds, " s"));
    failed += !res.pass;
    std::cout << "CRITERION " << c.id << " " << (res.pass ? "PASS" : "FAIL") << "  " << c.title << "\n";
    for (const auto& line : res.details) std::cout << "    " << line << "\n";
    std::cout.flush();
  }
  std::cout << (failed == 0 ? "ALL CRITERIA PASS" : cat(failed, " CRITERIA FAILED")) << "\n";
  return failed == 0 ? 0 : 1;
}
