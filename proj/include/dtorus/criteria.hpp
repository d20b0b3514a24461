#pragma once

// Decision procedures and closed forms for eigenvalue multiplicities of T^d_N:
// zero-eigenvalue existence, the set I(0;N), the bounded/linear growth
// dichotomy, the d = 2 closed forms and the bound 24, the <p,q> witnesses and
// the lower-bound families.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <unordered_set>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "dtorus/cyclotomic.hpp"
#include "dtorus/errors.hpp"
#include "dtorus/semigroup.hpp"
#include "dtorus/spectrum.hpp"
#include "dtorus/vanishing.hpp"

namespace dtorus {

/// 2r = sum b_l p_l with b_{flagged} >= 2.
struct I0Witness {
  std::int64_t r = 0;
  std::vector<std::int64_t> primes;
  std::vector<std::int64_t> coeffs;
  std::size_t flagged = 0;
};

/// Decides r in I(0;N) as: some l with 2r - 2p_l representable.
inline std::optional<I0Witness> in_I0(std::int64_t n, std::int64_t r) {
  if (r < 0) throw PreconditionViolated("in_I0: r must be >= 0");
  const auto primes = prime_divisors(n);
  for (std::size_t l = 0; l < primes.size(); ++l) {
    if (auto w = semigroup_member(2 * r - 2 * primes[l], primes)) {
      (*w)[l] += 2;
      return I0Witness{r, primes, std::move(*w), l};
    }
  }
  return std::nullopt;
}

/// Four-case criterion: odd N needs 2d in the prime semigroup; even N with
/// even d always; even N, odd d needs p2 <= d or 4 | N.
inline bool is_zero_eigenvalue(std::int64_t n, std::int64_t d) {
  if (n < 3 || d < 1) throw PreconditionViolated("is_zero_eigenvalue: need N >= 3, d >= 1");
  const auto primes = prime_divisors(n);
  if (n % 2 != 0) return semigroup_member(2 * d, primes).has_value();
  if (d % 2 == 0) return true;
  const std::int64_t p2 = primes.size() >= 2 ? primes[1] : std::numeric_limits<std::int64_t>::max();
  if (p2 <= d) return true;
  return n % 4 == 0;
}

enum class GrowthTag { Bounded, LinearGrowth };

inline std::string to_string(GrowthTag t) { return t == GrowthTag::Bounded ? "Bounded" : "LinearGrowth"; }

struct GrowthClass {
  GrowthTag tag = GrowthTag::Bounded;
  int r = 0;                          ///< LinearGrowth only
  std::optional<I0Witness> witness;   ///< LinearGrowth only
  int residual_dim = 0;               ///< d - r, LinearGrowth only
};

inline GrowthClass zero_growth(std::int64_t n, int d) {
  if (!is_zero_eigenvalue(n, d)) {
    throw ZeroNotEigenvalue("0 is not an eigenvalue of T^" + std::to_string(d) + "_" + std::to_string(n));
  }
  if (auto w = in_I0(n, d)) return {GrowthTag::LinearGrowth, d, std::move(w), 0};
  return {};
}

/// Smallest r in [1, d] with r in I(0;N) and the key an eigenvalue of T^{d-r}_N.
inline GrowthClass eigenvalue_growth(TorusTower& tower, int d, const CycElt& key) {
  for (int r = 1; r <= d; ++r) {
    auto w = in_I0(tower.modulus(), r);
    if (w && tower.contains(key, d - r)) return {GrowthTag::LinearGrowth, r, std::move(w), d - r};
  }
  return {};
}

inline GrowthClass eigenvalue_growth(int n, int d, std::span<const int> tuple,
                                     std::size_t budget = kDefaultBudget) {
  detail::check_modulus(n);
  check_tuple(n, d, tuple);
  TorusTower tower(n, budget);
  return eigenvalue_growth(tower, d, tuple_key(tower.ctx(), tuple));
}

inline GrowthClass eigenvalue_growth(int n, int d, std::initializer_list<int> tuple,
                                     std::size_t budget = kDefaultBudget) {
  return eigenvalue_growth(n, d, std::span<const int>(tuple.begin(), tuple.size()), budget);
}

/// Whether the closed forms for T^2_N apply: odd N, or even N divisible by
/// none of 12, 30, 42.
inline bool d2_closed_form_applies(std::int64_t n) {
  return n % 2 != 0 || (n % 12 != 0 && n % 30 != 0 && n % 42 != 0);
}

/// Closed-form m_{T^2_N}(k1, k2), or nullopt outside the applicable N.
inline std::optional<std::int64_t> d2_closed_form(std::int64_t n, std::int64_t k1, std::int64_t k2) {
  if (n < 3) throw PreconditionViolated("d2_closed_form: N must be >= 3");
  if (k1 < 0 || k2 < 0 || k1 >= n || k2 >= n) {
    throw PreconditionViolated("d2_closed_form: indices must lie in [0, N)");
  }
  if (!d2_closed_form_applies(n)) return std::nullopt;
  k1 = std::min(k1, n - k1);
  k2 = std::min(k2, n - k2);
  if (k1 > k2) std::swap(k1, k2);
  const bool even = n % 2 == 0;
  const std::int64_t half = n / 2;
  // 2cos(2 pi k/N) + 2cos(pi - 2 pi k/N) = 0: the 2N - 2 solutions of mu = 0.
  if (even && k1 + k2 == half) return 2 * n - 2;
  auto special = [&](std::int64_t k) { return k == 0 || (even && k == half); };
  if (k1 == k2 && special(k1)) return 1;
  if (special(k1) || special(k2) || k1 == k2) return 4;
  return 8;
}

struct Bound24Report {
  std::int64_t modulus = 0;
  BigInt max_multiplicity = 0;
  std::vector<CycElt> attaining;  ///< sorted by value, descending
};

/// Largest multiplicity among nonzero eigenvalues of T^2_N and where it is
/// attained; throws Bound24Violated if it exceeds 24.
inline Bound24Report verify_bound24(int n, std::size_t budget = kDefaultBudget) {
  const auto table = torus_spectrum(n, 2, budget);
  Bound24Report rep{n, 0, {}};
  for (const auto& [k, e] : table.entries) {
    if (k.is_zero()) continue;
    if (e.count > rep.max_multiplicity) {
      rep.max_multiplicity = e.count;
      rep.attaining.clear();
    }
    if (e.count == rep.max_multiplicity) rep.attaining.push_back(k);
  }
  const auto& ctx = context(n);
  std::sort(rep.attaining.begin(), rep.attaining.end(), [&](const CycElt& a, const CycElt& b) {
    const auto va = approx_double(ctx, a), vb = approx_double(ctx, b);
    if (va != vb) return va > vb;
    return a < b;
  });
  if (rep.max_multiplicity > 24) {
    throw Bound24Violated("T^2_" + std::to_string(n) + " has a nonzero eigenvalue of multiplicity " +
                          rep.max_multiplicity.str());
  }
  return rep;
}

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// x, y with x a + y b = gcd(a, b).
inline std::pair<std::int64_t, std::int64_t> ext_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    const std::int64_t q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  return {x0, y0};
}

inline void check_odd_prime_pair(std::int64_t p, std::int64_t q) {
  if (!(p < q) || p < 3 || !is_prime(p) || !is_prime(q)) {
    throw PreconditionViolated("need odd primes p < q");
  }
}

}  // namespace detail

/// (k1, k2) >= 0 with k1 p + k2 q = 2d and max(k1, k2) >= 2, valid once
/// 2d >= max{(p-1)(q-2), p+q+1}. Uses a Bezout solution shifted so that
/// 0 <= k2 < p; falls back to a direct search if that ever fails.
inline IndexPair lowerbound_pq_witness(std::int64_t p, std::int64_t q, std::int64_t d) {
  detail::check_odd_prime_pair(p, q);
  const std::int64_t two_d = 2 * d;
  if (two_d < std::max((p - 1) * (q - 2), p + q + 1)) {
    throw PreconditionViolated("2d is below max{(p-1)(q-2), p+q+1}");
  }
  auto valid = [&](std::int64_t k1, std::int64_t k2) {
    return k1 >= 0 && k2 >= 0 && k1 * p + k2 * q == two_d && std::max(k1, k2) >= 2;
  };
  const auto [x, y] = detail::ext_gcd(p, q);
  const std::int64_t a = x * two_d, b = y * two_d;
  const std::int64_t s = detail::floor_div(b, p);
  std::int64_t k1 = a + s * q, k2 = b - s * p;
  if (!valid(k1, k2)) {
    bool found = false;
    for (std::int64_t t = 0; t * q <= two_d && !found; ++t) {
      const std::int64_t rest = two_d - t * q;
      if (rest % p == 0 && valid(rest / p, t)) {
        k1 = rest / p;
        k2 = t;
        found = true;
      }
    }
    if (!found) throw ConsistencyError("no <p,q> witness found above the bound");
  }
  return {static_cast<int>(k1), static_cast<int>(k2)};
}

/// (p-1)(q-2) - 2 is not in <p, q>.
inline bool pq_optimality_check(std::int64_t p, std::int64_t q) {
  detail::check_odd_prime_pair(p, q);
  return !semigroup_member((p - 1) * (q - 2) - 2, {p, q}).has_value();
}

struct Table60Row {
  std::int64_t multiplicity;
  std::vector<CycElt> keys;
};

/// Reference rows for T^2_60, multiplicities above 8, in increasing multiplicity.
inline std::vector<Table60Row> table60_reference() {
  const auto& ctx = context(60);
  const CycElt one = constant(ctx, 1);
  const CycElt c6 = cos_key(ctx, 6), c12 = cos_key(ctx, 12), c2 = cos_key(ctx, 2);
  return {
      {12, {c6 + one, -(c6 + one), c12 - one, -(c12 - one)}},
      {16, {c2 + one, -(c2 + one)}},
      {20, {one, -one}},
      {24, {c6, -c6, c12, -c12}},
      {118, {zero_elt(ctx)}},
  };
}

struct Table60Check {
  /// Reference keys whose computed multiplicity differs, with the computed value.
  std::vector<std::pair<CycElt, BigInt>> row_mismatches;
  /// Computed keys with multiplicity above 8 absent from the reference.
  std::vector<std::pair<CycElt, BigInt>> unlisted;
  std::set<BigInt> computed_multiplicities;  ///< all computed values above 8
  bool rows_match() const { return row_mismatches.empty(); }
  bool complete() const { return unlisted.empty(); }
};

inline Table60Check verify_table60(std::size_t budget = kDefaultBudget) {
  const auto table = torus_spectrum(60, 2, budget);
  Table60Check out;
  std::unordered_set<CycElt, CycEltHash> listed;
  for (const auto& row : table60_reference()) {
    for (const auto& k : row.keys) {
      listed.insert(k);
      const auto c = table.count_of(k);
      if (c != row.multiplicity) out.row_mismatches.emplace_back(k, c);
    }
  }
  for (const auto& [k, e] : table.entries) {
    if (e.count <= 8) continue;
    out.computed_multiplicities.insert(e.count);
    if (!listed.count(k)) out.unlisted.emplace_back(k, e.count);
  }
  std::sort(out.unlisted.begin(), out.unlisted.end());
  return out;
}

struct ProductInequality {
  BigInt whole;
  BigInt prefix;
  BigInt suffix;
  bool holds() const { return whole >= prefix * suffix; }
};

/// m_{T^d}(mu) against m_{T^d1}(prefix value) * m_{T^(d-d1)}(suffix value).
inline ProductInequality product_inequality(TorusTower& tower, std::span<const int> tuple, int d1) {
  const int d = static_cast<int>(tuple.size());
  if (d1 < 1 || d1 >= d) throw PreconditionViolated("split must satisfy 1 <= d1 < d");
  const auto& ctx = tower.ctx();
  return {tower.multiplicity(tuple_key(ctx, tuple), d),
          tower.multiplicity(tuple_key(ctx, tuple.first(static_cast<std::size_t>(d1))), d1),
          tower.multiplicity(tuple_key(ctx, tuple.subspan(static_cast<std::size_t>(d1))), d - d1)};
}

inline bool product_inequality_check(int n, int d, std::span<const int> tuple, int d1,
                                     std::size_t budget = kDefaultBudget) {
  detail::check_modulus(n);
  check_tuple(n, d, tuple);
  TorusTower tower(n, budget);
  return product_inequality(tower, tuple, d1).holds();
}

struct ZeroFamilyCheck {
  std::int64_t least_prime = 0;
  int dimension = 0;  ///< k * p1
  BigInt multiplicity;
  BigInt bound;       ///< (N / p1)^k
  bool holds() const { return multiplicity >= bound; }
};

/// m_{T^{k p1}_N}(0) against (N/p1)^k, p1 the least prime factor of N.
inline ZeroFamilyCheck zero_lower_bound_family(int n, int k, std::size_t budget = kDefaultBudget) {
  detail::check_modulus(n);
  if (k < 1) throw PreconditionViolated("k must be >= 1");
  const auto p1 = prime_divisors(n).front();
  const int dim = k * static_cast<int>(p1);
  TorusTower tower(n, budget);
  ZeroFamilyCheck out{p1, dim, tower.multiplicity(zero_elt(tower.ctx()), dim), 1};
  for (int i = 0; i < k; ++i) out.bound *= n / p1;
  return out;
}

/// Sizes of the leading and trailing runs (counted with multiplicity, in the
/// descending eigenvalue order) made only of Bounded eigenvalues of T^d_N.
/// min(top, bottom) / N^d is the measured safe fraction for the range bound.
struct RangeProfile {
  BigInt top_run;
  BigInt bottom_run;
  BigInt total;
  double safe_fraction() const {
    const BigInt m = top_run < bottom_run ? top_run : bottom_run;
    return static_cast<double>(m) / static_cast<double>(total);
  }
};

inline RangeProfile range_profile(TorusTower& tower, int d) {
  const auto& table = tower.level(d);
  const auto rows = sorted_rows(table);
  std::vector<bool> bounded;
  bounded.reserve(rows.size());
  for (const auto& row : rows) {
    bounded.push_back(eigenvalue_growth(tower, d, *row.key).tag == GrowthTag::Bounded);
  }
  RangeProfile prof{0, 0, table.total_count()};
  for (std::size_t i = 0; i < rows.size() && bounded[i]; ++i) prof.top_run += rows[i].entry->count;
  for (std::size_t i = rows.size(); i-- > 0 && bounded[i];) prof.bottom_run += rows[i].entry->count;
  return prof;
}

}  // namespace dtorus
