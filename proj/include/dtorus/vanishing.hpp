#pragma once

// Vanishing sums of roots of unity and of cosines.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "dtorus/cyclotomic.hpp"
#include "dtorus/errors.hpp"
#include "dtorus/semigroup.hpp"

namespace dtorus {

/// An angle as a rational multiple of pi ("2/5" means 2 pi / 5).
using Angle = boost::rational<std::int64_t>;

inline std::string to_string(const Angle& a) {
  if (a.denominator() == 1) return std::to_string(a.numerator());
  return std::to_string(a.numerator()) + "/" + std::to_string(a.denominator());
}

/// Reduces into [0, 1] using cos(t) = cos(-t) = cos(2 - t) (pi-units).
inline Angle normalize_angle(Angle a) {
  const std::int64_t two_q = 2 * a.denominator();
  std::int64_t num = a.numerator() % two_q;
  if (num < 0) num += two_q;
  Angle r(num, a.denominator());
  if (r > Angle(1)) r = Angle(2) - r;
  return r;
}

/// Multiset of N-th roots of unity, stored as sorted exponents in [0, N).
struct RootMultiset {
  int modulus = 1;
  std::vector<std::int64_t> exponents;

  friend bool operator==(const RootMultiset&, const RootMultiset&) = default;
  friend auto operator<=>(const RootMultiset&, const RootMultiset&) = default;
  std::size_t size() const { return exponents.size(); }
};

inline RootMultiset make_multiset(int n, std::vector<std::int64_t> exps) {
  if (n < 1) throw PreconditionViolated("modulus must be >= 1");
  if (exps.empty()) throw PreconditionViolated("root multiset must be nonempty");
  for (auto& e : exps) e = ((e % n) + n) % n;
  std::sort(exps.begin(), exps.end());
  return {n, std::move(exps)};
}

inline bool is_vanishing(const RootMultiset& m) {
  return sum_reduce(context(m.modulus), m.exponents).is_zero();
}

/// L in W(N) = sum of N p_j over the prime divisors of N, with the witness
/// coefficients aligned to the increasing prime list.
inline std::optional<SemigroupWitness> w_membership(int n, std::int64_t length) {
  if (length < 0) throw PreconditionViolated("length must be >= 0");
  const auto primes = prime_divisors(n);
  if (primes.empty()) {
    if (length == 0) return SemigroupWitness{};
    return std::nullopt;
  }
  return semigroup_member(length, primes);
}

/// For each L in [0, max_len], whether some multiset of exactly L N-th roots
/// of unity sums to zero. Length L vanishes iff a sum of ceil(L/2) roots is
/// the negative of a sum of floor(L/2) roots; only sums of up to
/// ceil(max_len/2) roots are stored, and `budget` caps each such key set.
inline std::vector<bool> vanishing_lengths(int n, int max_len, std::size_t budget) {
  if (max_len < 0) throw PreconditionViolated("max_len must be >= 0");
  const auto& ctx = context(n);
  std::vector<std::unordered_set<CycElt, CycEltHash>> sums{{zero_elt(ctx)}};
  const int half = (max_len + 1) / 2;
  CycElt scratch = zero_elt(ctx);
  for (int len = 1; len <= half; ++len) {
    std::unordered_set<CycElt, CycEltHash> next;
    for (const auto& key : sums.back()) {
      for (int k = 0; k < n; ++k) {
        scratch = key;
        scratch += ctx.power(k);
        if (next.insert(scratch).second && next.size() > budget) {
          throw BudgetExceeded(budget, "vanishing length search, N=" + std::to_string(n) +
                                           ", L=" + std::to_string(len));
        }
      }
    }
    sums.push_back(std::move(next));
  }
  std::vector<bool> exists(static_cast<std::size_t>(max_len) + 1, false);
  for (int len = 0; len <= max_len; ++len) {
    const auto& big = sums[static_cast<std::size_t>((len + 1) / 2)];
    const auto& small = sums[static_cast<std::size_t>(len / 2)];
    exists[static_cast<std::size_t>(len)] =
        std::any_of(small.begin(), small.end(), [&](const CycElt& x) { return big.count(-x) != 0; });
  }
  return exists;
}

/// Whether some proper nonempty sub-multiset of a vanishing multiset vanishes.
inline bool has_vanishing_proper_part(const RootMultiset& m) {
  const auto& ctx = context(m.modulus);
  // Distinct exponents with multiplicities; walk all multiplicity vectors.
  std::vector<std::int64_t> vals;
  std::vector<int> mult;
  for (auto e : m.exponents) {
    if (!vals.empty() && vals.back() == e) {
      ++mult.back();
    } else {
      vals.push_back(e);
      mult.push_back(1);
    }
  }
  std::vector<int> take(vals.size(), 0);
  const auto total = static_cast<int>(m.size());
  while (true) {
    std::size_t i = 0;
    while (i < take.size() && take[i] == mult[i]) take[i++] = 0;
    if (i == take.size()) return false;
    ++take[i];
    const int picked = std::accumulate(take.begin(), take.end(), 0);
    if (picked == total) continue;
    CycElt s = zero_elt(ctx);
    for (std::size_t j = 0; j < vals.size(); ++j) {
      for (int r = 0; r < take[j]; ++r) s += ctx.power(vals[j]);
    }
    if (s.is_zero()) return true;
  }
}

struct VanishingSum {
  RootMultiset roots;
  bool minimal = false;
};

/// Every vanishing multiset over U_N with at most max_len roots, each tagged
/// minimal or decomposable, in increasing (size, exponents) order. The budget
/// bounds the number of partial multisets visited.
inline std::vector<VanishingSum> minimal_vanishing_sums(int n, int max_len, std::size_t budget) {
  if (max_len < 1 || max_len > 12) throw PreconditionViolated("max_len must be in [1, 12]");
  const auto& ctx = context(n);
  std::vector<VanishingSum> found;
  std::vector<std::int64_t> stack;
  std::vector<CycElt> sums{zero_elt(ctx)};
  std::size_t visited = 0;

  auto dfs = [&](auto&& self, std::int64_t lo) -> void {
    for (std::int64_t k = lo; k < n; ++k) {
      if (++visited > budget) throw BudgetExceeded(budget, "minimal vanishing sum search");
      stack.push_back(k);
      sums.push_back(sums.back());
      sums.back() += ctx.power(k);
      if (sums.back().is_zero()) {
        RootMultiset m{n, stack};
        const bool minimal = !has_vanishing_proper_part(m);
        found.push_back({std::move(m), minimal});
      }
      if (static_cast<int>(stack.size()) < max_len) self(self, k);
      sums.pop_back();
      stack.pop_back();
    }
  };
  dfs(dfs, 0);
  std::sort(found.begin(), found.end(), [](const VanishingSum& a, const VanishingSum& b) {
    if (a.roots.size() != b.roots.size()) return a.roots.size() < b.roots.size();
    return a.roots.exponents < b.roots.exponents;
  });
  return found;
}

struct SymmetricRotation {
  std::int64_t prime;
  std::int64_t rotation;
  friend bool operator==(const SymmetricRotation&, const SymmetricRotation&) = default;
};

/// (p, a) when m = {a, a + N/p, ..., a + (p-1)N/p} for a prime p | N.
/// Throws NotApplicable when |m| is not a prime divisor of N.
inline std::optional<SymmetricRotation> is_symmetric_rotation(const RootMultiset& m) {
  const auto p = static_cast<std::int64_t>(m.size());
  if (!is_prime(p) || m.modulus % p != 0) {
    throw NotApplicable("size " + std::to_string(p) + " is not a prime divisor of N=" +
                        std::to_string(m.modulus));
  }
  const std::int64_t step = m.modulus / p;
  const std::int64_t a = m.exponents.front() % step;
  std::vector<std::int64_t> expect;
  for (std::int64_t j = 0; j < p; ++j) expect.push_back(a + j * step);
  if (expect != m.exponents) return std::nullopt;
  return SymmetricRotation{p, a};
}

/// Pairs into conjugate couples {e, N - e}; self-conjugate exponents (0 and
/// N/2) need an even count.
inline bool is_admissible(const RootMultiset& m) {
  if (m.size() % 2 != 0) return false;
  const std::int64_t n = m.modulus;
  std::vector<int> count(static_cast<std::size_t>(n), 0);
  for (auto e : m.exponents) ++count[static_cast<std::size_t>(e)];
  for (std::int64_t e = 0; e < n; ++e) {
    const std::int64_t conj = (n - e) % n;
    if (conj == e) {
      if (count[static_cast<std::size_t>(e)] % 2 != 0) return false;
    } else if (count[static_cast<std::size_t>(e)] != count[static_cast<std::size_t>(conj)]) {
      return false;
    }
  }
  return true;
}

/// (k+1)^(3(k+1)^2): bound on non-degenerate solutions of a length-k unit equation.
inline BigInt evertse_bound(int k) {
  if (k < 0) throw PreconditionViolated("evertse_bound: k must be >= 0");
  const unsigned e = 3u * static_cast<unsigned>(k + 1) * static_cast<unsigned>(k + 1);
  return boost::multiprecision::pow(BigInt(k + 1), e);
}

/// l^(3 l^2): bound on minimal vanishing sums of length l through a fixed root.
inline BigInt fmvs_bound(int l) {
  if (l < 1) throw PreconditionViolated("fmvs_bound: l must be >= 1");
  const unsigned e = 3u * static_cast<unsigned>(l) * static_cast<unsigned>(l);
  return boost::multiprecision::pow(BigInt(l), e);
}

/// Whether sum cos(pi a_j) = 0, decided exactly by lifting each cosine to the
/// pair of roots e^{+-i pi a_j} over a common modulus.
inline bool cos_sum_vanishes(const std::vector<Angle>& angles) {
  std::int64_t m = 1;
  for (const auto& a : angles) m = std::lcm(m, 2 * a.denominator());
  std::vector<std::int64_t> exps;
  exps.reserve(angles.size() * 2);
  for (const auto& a : angles) {
    const std::int64_t e = a.numerator() * (m / (2 * a.denominator()));
    exps.push_back(e);
    exps.push_back(-e);
  }
  return sum_reduce(context(static_cast<int>(m)), exps).is_zero();
}

/// The rotated prime sum C_p(delta): delta and 2j/p +- delta for
/// 1 <= j <= (p-1)/2, normalized into [0, 1]; duplicates kept.
inline std::vector<Angle> cp_delta(std::int64_t p, Angle delta) {
  if (p < 3 || !is_prime(p)) throw PreconditionViolated("cp_delta: p must be an odd prime");
  if (delta < Angle(0) || delta > Angle(1)) throw PreconditionViolated("cp_delta: delta must lie in [0, 1]");
  std::vector<Angle> out{normalize_angle(delta)};
  for (std::int64_t j = 1; j <= (p - 1) / 2; ++j) {
    out.push_back(normalize_angle(Angle(2 * j, p) + delta));
    out.push_back(normalize_angle(Angle(2 * j, p) - delta));
  }
  if (!cos_sum_vanishes(out)) throw ConsistencyError("C_p(delta) does not vanish");
  return out;
}

// ---- length-4 cosine sums ---------------------------------------------------

enum class Cos4Family { I = 1, II, III, IV, V, VI, VII, NotVanishing };

inline std::string to_string(Cos4Family f) {
  static const char* names[] = {"", "I", "II", "III", "IV", "V", "VI", "VII", "NotVanishing"};
  return names[static_cast<int>(f)];
}

using Quadruple = std::array<Angle, 4>;

struct Cos4Classification {
  Cos4Family family = Cos4Family::NotVanishing;
  /// I: (alpha1, alpha2); II: (delta); III-VII: the matched quadruple, sorted.
  std::vector<Angle> parameters;
  /// Which of the two listed quadruples matched (III-VII), else 0.
  int variant = 0;
  /// Higher-numbered families that also match (boundary parameter values).
  std::vector<Cos4Family> also_matches;
};

namespace detail {

inline Quadruple sorted_quad(Quadruple q) {
  std::sort(q.begin(), q.end());
  return q;
}

struct SporadicFamily {
  Cos4Family family;
  std::array<Quadruple, 2> quads;
};

inline const std::vector<SporadicFamily>& sporadic_families() {
  using A = Angle;
  static const std::vector<SporadicFamily> table = {
      {Cos4Family::III, {{{A(2, 5), A(4, 5), A(1, 2), A(1, 3)}, {A(3, 5), A(1, 5), A(1, 2), A(2, 3)}}}},
      {Cos4Family::IV, {{{A(1, 5), A(3, 5), A(1, 3), A(1)}, {A(4, 5), A(2, 5), A(2, 3), A(0)}}}},
      {Cos4Family::V, {{{A(2, 5), A(7, 15), A(13, 15), A(1, 3)}, {A(3, 5), A(8, 15), A(2, 15), A(2, 3)}}}},
      {Cos4Family::VI, {{{A(1, 15), A(11, 15), A(4, 5), A(1, 3)}, {A(14, 15), A(4, 15), A(1, 5), A(2, 3)}}}},
      {Cos4Family::VII, {{{A(2, 7), A(4, 7), A(6, 7), A(1, 3)}, {A(5, 7), A(3, 7), A(1, 7), A(2, 3)}}}},
  };
  return table;
}

inline std::optional<std::vector<Angle>> match_family_one(const Quadruple& q) {
  if (q[0] + q[3] == Angle(1) && q[1] + q[2] == Angle(1)) return std::vector<Angle>{q[0], q[1]};
  return std::nullopt;
}

inline std::optional<std::vector<Angle>> match_family_two(const Quadruple& q) {
  const Angle half(1, 2), two_thirds(2, 3);
  auto it = std::find(q.begin(), q.end(), half);
  if (it == q.end()) return std::nullopt;
  std::vector<Angle> rest;
  bool removed = false;
  for (const auto& a : q) {
    if (!removed && a == half) {
      removed = true;
      continue;
    }
    rest.push_back(a);
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const Angle delta = rest[i];
    if (delta < Angle(0) || delta > Angle(1, 3)) continue;
    std::vector<Angle> others;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j != i) others.push_back(rest[j]);
    }
    std::sort(others.begin(), others.end());
    if (others[0] == two_thirds - delta && others[1] == two_thirds + delta) {
      return std::vector<Angle>{delta};
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Classifies a length-4 cosine sum into the families I-VII (lowest-numbered
/// match wins) or NotVanishing. Angles are in pi-units and normalized first.
inline Cos4Classification classify_cos4(const Quadruple& input) {
  Quadruple q;
  for (std::size_t i = 0; i < 4; ++i) q[i] = normalize_angle(input[i]);
  q = detail::sorted_quad(q);
  Cos4Classification out;
  if (!cos_sum_vanishes({q.begin(), q.end()})) return out;

  std::vector<std::pair<Cos4Family, Cos4Classification>> matches;
  if (auto p = detail::match_family_one(q)) matches.push_back({Cos4Family::I, {Cos4Family::I, *p, 0, {}}});
  if (auto p = detail::match_family_two(q)) matches.push_back({Cos4Family::II, {Cos4Family::II, *p, 0, {}}});
  for (const auto& fam : detail::sporadic_families()) {
    for (int v = 0; v < 2; ++v) {
      const auto target = detail::sorted_quad(fam.quads[static_cast<std::size_t>(v)]);
      if (target == q) {
        matches.push_back({fam.family, {fam.family, {target.begin(), target.end()}, v, {}}});
        break;
      }
    }
  }
  if (matches.empty()) {
    throw ConsistencyError("vanishing cosine quadruple outside families I-VII");
  }
  out = matches.front().second;
  for (std::size_t i = 1; i < matches.size(); ++i) out.also_matches.push_back(matches[i].first);
  return out;
}

/// The quadruple described by a classification (sorted), inverse of classify_cos4.
inline Quadruple reconstruct_cos4(const Cos4Classification& c) {
  const Angle one(1), half(1, 2), two_thirds(2, 3);
  switch (c.family) {
    case Cos4Family::I: {
      const auto a1 = c.parameters.at(0), a2 = c.parameters.at(1);
      return detail::sorted_quad({a1, a2, one - a1, one - a2});
    }
    case Cos4Family::II: {
      const auto d = c.parameters.at(0);
      return detail::sorted_quad({d, two_thirds - d, two_thirds + d, half});
    }
    case Cos4Family::NotVanishing:
      throw NotApplicable("NotVanishing has no quadruple");
    default:
      return detail::sorted_quad({c.parameters.at(0), c.parameters.at(1), c.parameters.at(2),
                                  c.parameters.at(3)});
  }
}

// ---- partners of a two-cosine eigenvalue ------------------------------------

using IndexPair = std::pair<int, int>;

/// Unordered pairs (k3 <= k4) in [0, N/2], disjoint from {k1, k2}, with
/// 2cos(2 pi k3/N) + 2cos(2 pi k4/N) equal to the eigenvalue at (k1, k2).
inline std::vector<IndexPair> find_cos4_partners(int n, int k1, int k2) {
  if (n < 3) throw PreconditionViolated("find_cos4_partners: N must be >= 3");
  const int half = n / 2;
  if (k1 < 0 || k2 < 0 || k1 > half || k2 > half) {
    throw PreconditionViolated("find_cos4_partners: indices must lie in [0, N/2]");
  }
  const auto& ctx = context(n);
  const CycElt mu = cos_key(ctx, k1) + cos_key(ctx, k2);
  if (mu.is_zero()) throw ZeroEigenvalue("find_cos4_partners: eigenvalue is zero");
  std::unordered_map<CycElt, int, CycEltHash> index_of;
  for (int k = 0; k <= half; ++k) index_of.emplace(cos_key(ctx, k), k);
  std::vector<IndexPair> out;
  for (int k3 = 0; k3 <= half; ++k3) {
    if (k3 == k1 || k3 == k2) continue;
    auto it = index_of.find(mu - cos_key(ctx, k3));
    if (it == index_of.end()) continue;
    const int k4 = it->second;
    if (k4 < k3 || k4 == k1 || k4 == k2) continue;
    out.emplace_back(k3, k4);
  }
  return out;
}

/// The partner pair rewritten as the two extra angles of the vanishing
/// four-cosine sum 2cos a1 + 2cos a2 + 2cos(pi - b3) + 2cos(pi - b4) = 0,
/// in pi-units and sorted.
inline std::pair<Angle, Angle> vanishing_form_angles(int n, const IndexPair& partner) {
  Angle a = normalize_angle(Angle(1) - Angle(2 * partner.first, n));
  Angle b = normalize_angle(Angle(1) - Angle(2 * partner.second, n));
  if (b < a) std::swap(a, b);
  return {a, b};
}

}  // namespace dtorus
