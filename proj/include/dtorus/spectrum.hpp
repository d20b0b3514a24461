#pragma once

// Exact spectrum tables of C_N, T^d_N and abelian Cayley graphs on (Z/NZ)^d.
//
// A table maps each distinct eigenvalue (as a cyclotomic key) to the number of
// index tuples attaining it. Tori are built by convolving the distinct-value
// table of C_N with itself, never by enumerating all N^d tuples.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dtorus/cyclotomic.hpp"
#include "dtorus/errors.hpp"

namespace dtorus {

inline constexpr std::size_t kDefaultBudget = 10'000'000;

using IndexTuple = std::vector<int>;

struct SpectrumEntry {
  BigInt count;
  IndexTuple representative;  ///< lexicographically smallest known tuple
  double approx = 0;          ///< display only
};

struct SpectrumTable {
  int modulus = 0;
  int dim = 0;
  std::unordered_map<CycElt, SpectrumEntry, CycEltHash> entries;

  BigInt total_count() const {
    BigInt s = 0;
    for (const auto& [k, e] : entries) s += e.count;
    return s;
  }
  const SpectrumEntry* find(const CycElt& key) const {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  }
  BigInt count_of(const CycElt& key) const {
    const auto* e = find(key);
    return e ? e->count : BigInt(0);
  }
  bool contains(const CycElt& key) const { return entries.count(key) != 0; }
  std::size_t size() const { return entries.size(); }
};

/// Generators of an abelian Cayley graph on (Z/NZ)^d. S must equal -S as a multiset.
struct CayleySpec {
  int modulus = 0;
  int rank = 0;
  std::vector<std::vector<int>> generators;
};

namespace detail {

/// (a ++ b) < c, lexicographically, without materialising the concatenation.
inline bool concat_less(const IndexTuple& a, const IndexTuple& b, const IndexTuple& c) {
  std::size_t i = 0;
  for (int v : a) {
    if (v != c[i]) return v < c[i];
    ++i;
  }
  for (int v : b) {
    if (v != c[i]) return v < c[i];
    ++i;
  }
  return false;
}

inline void check_modulus(int n) {
  if (n < 3) throw PreconditionViolated("modulus N must be >= 3");
}

inline BigInt ipow(int base, int exp) {
  BigInt r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace detail

/// Eigenvalue key of the index tuple: sum of cos_key(k_j).
inline CycElt tuple_key(const CycContext& ctx, std::span<const int> tuple) {
  CycElt e = zero_elt(ctx);
  for (int k : tuple) {
    e += ctx.power(k);
    e += ctx.power(-static_cast<std::int64_t>(k));
  }
  return e;
}

/// The table of T^0_N: the single eigenvalue 0 with the empty tuple.
inline SpectrumTable point_mass(int n) {
  const auto& ctx = context(n);
  SpectrumTable t{n, 0, {}};
  t.entries.emplace(zero_elt(ctx), SpectrumEntry{BigInt(1), {}, 0.0});
  return t;
}

inline SpectrumTable cn_spectrum(int n) {
  detail::check_modulus(n);
  const auto& ctx = context(n);
  SpectrumTable t{n, 1, {}};
  for (int k = 0; k <= n / 2; ++k) {
    const bool single = (k == 0) || (2 * k == n);
    CycElt key = cos_key(ctx, k);
    const double approx = static_cast<double>(approx_double(ctx, key));
    t.entries.emplace(std::move(key), SpectrumEntry{BigInt(single ? 1 : 2), {k}, approx});
  }
  return t;
}

/// Spectrum of the product graph: keys add, counts multiply and accumulate.
inline SpectrumTable convolve(const SpectrumTable& a, const SpectrumTable& b,
                              std::size_t budget = kDefaultBudget) {
  if (a.modulus != b.modulus) throw PreconditionViolated("convolve: moduli differ");
  if (budget == 0) throw PreconditionViolated("convolve: budget must be positive");
  SpectrumTable out{a.modulus, a.dim + b.dim, {}};
  out.entries.reserve(std::min(budget, a.size() * b.size()));
  CycElt scratch = zero_elt(context(a.modulus));
  for (const auto& [ka, ea] : a.entries) {
    for (const auto& [kb, eb] : b.entries) {
      for (std::size_t i = 0; i < scratch.coeffs.size(); ++i) {
        scratch.coeffs[i] = detail::checked_add(ka.coeffs[i], kb.coeffs[i]);
      }
      auto it = out.entries.find(scratch);
      if (it == out.entries.end()) {
        if (out.entries.size() >= budget) {
          throw BudgetExceeded(budget, "convolution for N=" + std::to_string(a.modulus) +
                                           ", d=" + std::to_string(out.dim));
        }
        IndexTuple rep = ea.representative;
        rep.insert(rep.end(), eb.representative.begin(), eb.representative.end());
        out.entries.emplace(scratch, SpectrumEntry{ea.count * eb.count, std::move(rep),
                                                   ea.approx + eb.approx});
      } else {
        auto& e = it->second;
        e.count += ea.count * eb.count;
        if (detail::concat_less(ea.representative, eb.representative, e.representative)) {
          e.representative = ea.representative;
          e.representative.insert(e.representative.end(), eb.representative.begin(),
                                  eb.representative.end());
        }
      }
    }
  }
  if (out.total_count() != a.total_count() * b.total_count()) {
    throw ConsistencyError("convolution lost count mass");
  }
  return out;
}

/// Incrementally built tables T^0_N, T^1_N, ... for one modulus; levels are
/// computed on demand and kept.
class TorusTower {
 public:
  explicit TorusTower(int n, std::size_t budget = kDefaultBudget)
      : n_(n), budget_(budget), cn_(cn_spectrum(n)) {
    levels_.push_back(std::make_unique<SpectrumTable>(point_mass(n)));
  }

  int modulus() const { return n_; }
  std::size_t budget() const { return budget_; }
  const CycContext& ctx() const { return context(n_); }

  const SpectrumTable& level(int d) {
    if (d < 0) throw PreconditionViolated("dimension must be >= 0");
    while (static_cast<int>(levels_.size()) <= d) {
      auto next = std::make_unique<SpectrumTable>(convolve(*levels_.back(), cn_, budget_));
      const int dim = static_cast<int>(levels_.size());
      if (next->total_count() != detail::ipow(n_, dim)) {
        throw ConsistencyError("torus spectrum count differs from N^d");
      }
      levels_.push_back(std::move(next));
    }
    return *levels_[static_cast<std::size_t>(d)];
  }

  /// m_{T^d_N}(key) via sum_x count_a(x) * count_b(key - x), a + b = d.
  BigInt multiplicity(const CycElt& key, int d) {
    if (d == 0) return key.is_zero() ? BigInt(1) : BigInt(0);
    const int hi = (d + 1) / 2, lo = d / 2;
    const auto& big = level(hi);
    const auto& small = level(lo);
    BigInt total = 0;
    for (const auto& [k, e] : small.entries) {
      if (const auto* other = big.find(key - k)) total += e.count * other->count;
    }
    return total;
  }

  /// Whether key is an eigenvalue of T^d_N (d = 0 accepts only zero).
  bool contains(const CycElt& key, int d) {
    if (d == 0) return key.is_zero();
    const int hi = (d + 1) / 2, lo = d / 2;
    const auto& big = level(hi);
    const auto& small = level(lo);
    for (const auto& [k, e] : small.entries) {
      if (big.contains(key - k)) return true;
    }
    return false;
  }

 private:
  int n_;
  std::size_t budget_;
  SpectrumTable cn_;
  std::vector<std::unique_ptr<SpectrumTable>> levels_;
};

inline SpectrumTable torus_spectrum(int n, int d, std::size_t budget = kDefaultBudget) {
  detail::check_modulus(n);
  if (d < 1) throw PreconditionViolated("torus_spectrum: d must be >= 1");
  TorusTower tower(n, budget);
  return tower.level(d);
}

inline void check_tuple(int n, int d, std::span<const int> tuple) {
  if (static_cast<int>(tuple.size()) != d) throw PreconditionViolated("tuple length must equal d");
  for (int k : tuple) {
    if (k < 0 || k >= n) throw PreconditionViolated("tuple entries must lie in [0, N)");
  }
}

inline BigInt multiplicity_of_tuple(int n, int d, std::span<const int> tuple,
                                    std::size_t budget = kDefaultBudget) {
  detail::check_modulus(n);
  check_tuple(n, d, tuple);
  TorusTower tower(n, budget);
  return tower.multiplicity(tuple_key(tower.ctx(), tuple), d);
}

inline BigInt multiplicity_of_tuple(int n, int d, std::initializer_list<int> tuple,
                                    std::size_t budget = kDefaultBudget) {
  return multiplicity_of_tuple(n, d, std::span<const int>(tuple.begin(), tuple.size()), budget);
}

inline bool membership(int n, int dprime, const CycElt& target, std::size_t budget = kDefaultBudget) {
  if (dprime < 0) throw PreconditionViolated("membership: dimension must be >= 0");
  if (target.modulus != n) throw PreconditionViolated("membership: key modulus differs from N");
  if (dprime == 0) return target.is_zero();
  detail::check_modulus(n);
  TorusTower tower(n, budget);
  return tower.contains(target, dprime);
}

inline bool is_symmetric_set(int n, const std::vector<std::vector<int>>& gens) {
  auto norm = [n](std::vector<int> g, bool negate) {
    for (auto& x : g) x = (((negate ? -x : x) % n) + n) % n;
    return g;
  };
  std::vector<std::vector<int>> s, neg;
  for (const auto& g : gens) {
    s.push_back(norm(g, false));
    neg.push_back(norm(g, true));
  }
  std::sort(s.begin(), s.end());
  std::sort(neg.begin(), neg.end());
  return s == neg;
}

/// Eigenvalue of character t is sum_{g in S} zeta^<t,g>; aggregated over all
/// N^d characters, enumerated in lexicographic order.
inline SpectrumTable cayley_spectrum(const CayleySpec& spec, std::size_t budget = kDefaultBudget) {
  const int n = spec.modulus, d = spec.rank;
  if (n < 1 || d < 1) throw PreconditionViolated("cayley_spectrum: N and d must be positive");
  for (const auto& g : spec.generators) {
    if (static_cast<int>(g.size()) != d) throw PreconditionViolated("generator rank mismatch");
  }
  if (!is_symmetric_set(n, spec.generators)) {
    throw AsymmetricGeneratingSet("generating set is not closed under negation");
  }
  const auto& ctx = context(n);
  SpectrumTable out{n, d, {}};
  IndexTuple t(static_cast<std::size_t>(d), 0);
  std::vector<std::int64_t> exps(spec.generators.size());
  while (true) {
    for (std::size_t i = 0; i < spec.generators.size(); ++i) {
      std::int64_t s = 0;
      for (int j = 0; j < d; ++j) s += static_cast<std::int64_t>(t[j]) * spec.generators[i][j];
      exps[i] = s;
    }
    CycElt key = sum_reduce(ctx, exps);
    auto it = out.entries.find(key);
    if (it == out.entries.end()) {
      if (out.entries.size() >= budget) throw BudgetExceeded(budget, "cayley spectrum");
      const double approx = static_cast<double>(approx_double(ctx, key));
      out.entries.emplace(std::move(key), SpectrumEntry{BigInt(1), t, approx});
    } else {
      it->second.count += 1;
    }
    int j = d - 1;
    while (j >= 0 && ++t[j] == n) t[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

/// Laplacian spectrum of a regular graph: lambda = degree - mu, counts kept.
inline SpectrumTable laplacian_view(const SpectrumTable& t, int degree) {
  const auto& ctx = context(t.modulus);
  SpectrumTable out{t.modulus, t.dim, {}};
  out.entries.reserve(t.size());
  for (const auto& [k, e] : t.entries) {
    out.entries.emplace(constant_minus(ctx, degree, k),
                        SpectrumEntry{e.count, e.representative, degree - e.approx});
  }
  return out;
}

/// One table row with its certified value, for ordered display.
struct SortedRow {
  const CycElt* key;
  const SpectrumEntry* entry;
  ApproxValue value;
};

/// Rows by certified value descending; equal certified values (distinct keys
/// closer than the working precision) are ordered by key coefficients.
inline std::vector<SortedRow> sorted_rows(const SpectrumTable& t, mpfr_prec_t prec = 128) {
  const auto& ctx = context(t.modulus);
  ApproxEvaluator eval(ctx, prec);
  std::vector<SortedRow> rows;
  rows.reserve(t.size());
  for (const auto& [k, e] : t.entries) rows.push_back({&k, &e, eval(k)});
  std::sort(rows.begin(), rows.end(), [](const SortedRow& a, const SortedRow& b) {
    const int c = compare(a.value.real, b.value.real);
    if (c != 0) return c > 0;
    return *a.key < *b.key;
  });
  return rows;
}

}  // namespace dtorus
