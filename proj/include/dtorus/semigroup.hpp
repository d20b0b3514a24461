#pragma once

// Factorization and numerical-semigroup membership. Everything downstream
// (vanishing-sum lengths, zero-eigenvalue criteria, I(0;N)) is phrased in
// terms of the prime divisors of N.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dtorus {

struct PrimePower {
  std::int64_t prime;
  int exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization with strictly increasing primes; empty for N = 1.
using Factorization = std::vector<PrimePower>;

inline Factorization factorize(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("factorize: N must be >= 1");
  Factorization f;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.push_back({p, e});
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

inline std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> ps;
  for (const auto& pp : factorize(n)) ps.push_back(pp.prime);
  return ps;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

/// Coefficients b_j (aligned with the generator list) with sum b_j g_j = L.
using SemigroupWitness = std::vector<std::int64_t>;

/// Membership of L in the numerical semigroup generated by `gens`, by dynamic
/// programming over 0..L. The witness is the one reached through the first
/// generator (in list order) that leads to a representable remainder.
inline std::optional<SemigroupWitness> semigroup_member(std::int64_t target,
                                                        const std::vector<std::int64_t>& gens) {
  if (gens.empty()) throw std::invalid_argument("semigroup_member: no generators");
  for (auto g : gens) {
    if (g <= 0) throw std::invalid_argument("semigroup_member: generators must be positive");
  }
  if (target < 0) return std::nullopt;
  // via[v] = index of a generator g with v - g representable, -1 if v is not.
  std::vector<int> via(static_cast<std::size_t>(target) + 1, -1);
  via[0] = static_cast<int>(gens.size());
  for (std::int64_t v = 1; v <= target; ++v) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (gens[i] <= v && via[static_cast<std::size_t>(v - gens[i])] != -1) {
        via[static_cast<std::size_t>(v)] = static_cast<int>(i);
        break;
      }
    }
  }
  if (via[static_cast<std::size_t>(target)] == -1) return std::nullopt;
  SemigroupWitness w(gens.size(), 0);
  for (std::int64_t v = target; v > 0;) {
    const auto i = static_cast<std::size_t>(via[static_cast<std::size_t>(v)]);
    ++w[i];
    v -= gens[i];
  }
  return w;
}

}  // namespace dtorus
