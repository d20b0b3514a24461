#pragma once

// Exact arithmetic in Z[x]/(Phi_N(x)).
//
// A sum of N-th roots of unity is represented by the remainder of the
// corresponding exponent polynomial modulo the cyclotomic polynomial Phi_N.
// Two sums are equal as complex numbers iff their remainders are identical,
// so the remainder is used directly as a hashable equality key.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dtorus/detail/bigreal.hpp"

namespace dtorus {

using BigInt = boost::multiprecision::cpp_int;
/// Integer polynomial, coefficients from the constant term upwards.
using IntPoly = std::vector<BigInt>;

inline std::int64_t totient(std::int64_t n) {
  std::int64_t result = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace detail {

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// Exact division by a monic divisor; throws if the remainder is nonzero.
inline IntPoly poly_div_exact(IntPoly num, const IntPoly& den) {
  if (den.empty() || den.back() != 1) throw std::invalid_argument("divisor must be monic");
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) throw std::invalid_argument("divisor degree exceeds dividend");
  IntPoly q(num.size() - dn);
  for (std::size_t i = num.size(); i-- > dn;) {
    const BigInt c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (std::size_t i = 0; i < dn; ++i) {
    if (num[i] != 0) throw std::logic_error("polynomial division left a remainder");
  }
  return q;
}

}  // namespace detail

/// Phi_N as a monic integer polynomial, built by dividing x^N - 1 by the
/// product of Phi_d over the proper divisors d of N. Memoized.
inline const IntPoly& cyclotomic_poly(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_poly: N must be >= 1");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<IntPoly>> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find(n); it != memo.end()) return *it->second;
  }
  IntPoly result;
  if (n == 1) {
    result = {BigInt(-1), BigInt(1)};
  } else {
    IntPoly divisor_product{BigInt(1)};
    for (int d = 1; d < n; ++d) {
      if (n % d == 0) divisor_product = detail::poly_mul(divisor_product, cyclotomic_poly(d));
    }
    IntPoly x_n_minus_1(static_cast<std::size_t>(n) + 1);
    x_n_minus_1.front() = -1;
    x_n_minus_1.back() = 1;
    result = detail::poly_div_exact(std::move(x_n_minus_1), divisor_product);
  }
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = memo.emplace(n, std::make_unique<IntPoly>(std::move(result)));
  return *it->second;
}

/// Per-modulus data: Phi_N and the reduced residues of every power x^k.
class CycContext {
 public:
  explicit CycContext(int n) : n_(n), phi_coeffs_(cyclotomic_poly(n)) {
    phi_ = static_cast<int>(phi_coeffs_.size()) - 1;
    build_power_table();
    cos_table_.resize(static_cast<std::size_t>(phi_));
    for (int j = 0; j < phi_; ++j) {
      cos_table_[static_cast<std::size_t>(j)] =
          std::cos(2.0L * std::numbers::pi_v<long double> * j / n_);
    }
  }

  int modulus() const { return n_; }
  int degree() const { return phi_; }
  const IntPoly& phi_coeffs() const { return phi_coeffs_; }

  /// Canonical residue of x^k, k taken mod N.
  std::span<const std::int64_t> power(std::int64_t k) const {
    const auto idx = static_cast<std::size_t>(((k % n_) + n_) % n_);
    return {powers_.data() + idx * static_cast<std::size_t>(phi_),
            static_cast<std::size_t>(phi_)};
  }

  long double cos_basis(int j) const { return cos_table_[static_cast<std::size_t>(j)]; }

 private:
  void build_power_table() {
    const auto phi = static_cast<std::size_t>(phi_);
    powers_.assign(static_cast<std::size_t>(n_) * phi, 0);
    std::vector<BigInt> cur(phi, 0);
    cur[0] = 1;
    for (int k = 0; k < n_; ++k) {
      for (std::size_t j = 0; j < phi; ++j) {
        if (cur[j] > std::numeric_limits<std::int64_t>::max() ||
            cur[j] < std::numeric_limits<std::int64_t>::min()) {
          throw std::overflow_error("residue of x^" + std::to_string(k) + " mod Phi_" +
                                    std::to_string(n_) + " exceeds 64-bit coefficients");
        }
        powers_[static_cast<std::size_t>(k) * phi + j] = static_cast<std::int64_t>(cur[j]);
      }
      // cur <- x * cur mod Phi_N, using x^phi = -sum_{i<phi} c_i x^i.
      BigInt top = cur[phi - 1];
      for (std::size_t j = phi - 1; j > 0; --j) cur[j] = cur[j - 1];
      cur[0] = 0;
      if (top != 0) {
        for (std::size_t j = 0; j < phi; ++j) cur[j] -= top * phi_coeffs_[j];
      }
    }
  }

  int n_;
  int phi_ = 0;
  IntPoly phi_coeffs_;
  std::vector<std::int64_t> powers_;
  std::vector<long double> cos_table_;
};

/// Shared read-only context for modulus N (memoized, thread-safe).
inline const CycContext& context(int n) {
  if (n < 1) throw std::invalid_argument("context: N must be >= 1");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CycContext>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(n);
  if (it == registry.end()) it = registry.emplace(n, std::make_unique<CycContext>(n)).first;
  return *it->second;
}

namespace detail {
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("cyclotomic coefficient overflow");
  return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("cyclotomic coefficient overflow");
  return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("cyclotomic coefficient overflow");
  return r;
}
}  // namespace detail

/// Canonical element of Z[x]/(Phi_N): the residue's coefficients, length phi(N).
struct CycElt {
  int modulus = 1;
  std::vector<std::int64_t> coeffs;

  bool is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](std::int64_t c) { return c == 0; });
  }

  CycElt& operator+=(const CycElt& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = detail::checked_add(coeffs[i], o.coeffs[i]);
    return *this;
  }
  CycElt& operator-=(const CycElt& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = detail::checked_sub(coeffs[i], o.coeffs[i]);
    return *this;
  }
  CycElt& operator+=(std::span<const std::int64_t> residue) {
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = detail::checked_add(coeffs[i], residue[i]);
    return *this;
  }
  friend CycElt operator+(CycElt a, const CycElt& b) { return a += b; }
  friend CycElt operator-(CycElt a, const CycElt& b) { return a -= b; }
  CycElt operator-() const {
    CycElt r{modulus, coeffs};
    for (auto& c : r.coeffs) c = detail::checked_sub(0, c);
    return r;
  }

  friend bool operator==(const CycElt& a, const CycElt& b) = default;
  friend auto operator<=>(const CycElt& a, const CycElt& b) = default;

  /// Compact text form "[c0,c1,...]" for diagnostics.
  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(coeffs[i]);
    }
    return s + "]";
  }

 private:
  void check_same(const CycElt& o) const {
    if (o.modulus != modulus) throw std::invalid_argument("CycElt moduli differ");
  }
};

struct CycEltHash {
  std::size_t operator()(const CycElt& e) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(e.modulus);
    for (std::int64_t c : e.coeffs) {
      std::uint64_t x = static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      x ^= x >> 30;
      x *= 0xbf58476d1ce4e5b9ULL;
      x ^= x >> 27;
      x *= 0x94d049bb133111ebULL;
      x ^= x >> 31;
      h ^= x;
    }
    return static_cast<std::size_t>(h);
  }
};

inline CycElt zero_elt(const CycContext& ctx) {
  return {ctx.modulus(), std::vector<std::int64_t>(static_cast<std::size_t>(ctx.degree()), 0)};
}

/// The integer c embedded as c * x^0.
inline CycElt constant(const CycContext& ctx, std::int64_t c) {
  CycElt e = zero_elt(ctx);
  auto one = ctx.power(0);
  for (std::size_t i = 0; i < e.coeffs.size(); ++i) e.coeffs[i] = detail::checked_mul(c, one[i]);
  return e;
}

inline CycElt root_power(const CycContext& ctx, std::int64_t k) {
  auto r = ctx.power(k);
  return {ctx.modulus(), std::vector<std::int64_t>(r.begin(), r.end())};
}

/// x^k + x^(N-k): the key of the eigenvalue 2cos(2 pi k / N) of C_N.
inline CycElt cos_key(const CycContext& ctx, std::int64_t k) {
  CycElt e = root_power(ctx, k);
  e += ctx.power(-k);
  return e;
}

inline CycElt sum_reduce(const CycContext& ctx, std::span<const std::int64_t> exponents) {
  CycElt e = zero_elt(ctx);
  for (std::int64_t k : exponents) e += ctx.power(k);
  return e;
}

inline CycElt sum_reduce(const CycContext& ctx, std::initializer_list<std::int64_t> exponents) {
  return sum_reduce(ctx, std::span<const std::int64_t>(exponents.begin(), exponents.size()));
}

/// c - e, used to map adjacency keys to Laplacian keys.
inline CycElt constant_minus(const CycContext& ctx, std::int64_t c, const CycElt& e) {
  return constant(ctx, c) - e;
}

/// Real part in extended precision, no error bound. For display and sorting
/// heuristics only; use approx_value when a certified value is required.
inline long double approx_double(const CycContext& ctx, const CycElt& e) {
  long double s = 0;
  for (int j = 0; j < ctx.degree(); ++j) {
    const auto c = e.coeffs[static_cast<std::size_t>(j)];
    if (c != 0) s += static_cast<long double>(c) * ctx.cos_basis(j);
  }
  return s;
}

/// Value of a residue at exp(2 pi i / N) with a rigorous error radius.
struct ApproxValue {
  detail::BigReal real;
  detail::BigReal imag;
  detail::BigReal radius;  ///< bounds |real - Re(true)| and |imag - Im(true)|
  mpfr_prec_t working_bits = 0;
};

/// Cosines and sines of 2 pi j / N, j < phi(N), at a fixed working precision.
/// Reusable across many elements of the same context.
class ApproxEvaluator {
 public:
  ApproxEvaluator(const CycContext& ctx, mpfr_prec_t prec) : ctx_(&ctx), prec_(prec) {
    using detail::BigReal;
    BigReal two_pi_over_n = BigReal::pi(prec + 8);
    two_pi_over_n.mul_si(2).div_si(ctx.modulus());
    cos_.reserve(static_cast<std::size_t>(ctx.degree()));
    sin_.reserve(static_cast<std::size_t>(ctx.degree()));
    for (int j = 0; j < ctx.degree(); ++j) {
      BigReal ang = two_pi_over_n;
      ang.mul_si(j);
      cos_.push_back(ang.cos());
      sin_.push_back(ang.sin());
    }
  }

  mpfr_prec_t precision() const { return prec_; }

  ApproxValue operator()(const CycElt& e) const {
    using detail::BigReal;
    BigReal re(prec_), im(prec_);
    long double abs_sum = 0;
    for (int j = 0; j < ctx_->degree(); ++j) {
      const auto c = e.coeffs[static_cast<std::size_t>(j)];
      if (c == 0) continue;
      abs_sum += std::fabs(static_cast<long double>(c));
      BigReal t = cos_[static_cast<std::size_t>(j)];
      re += t.mul_si(static_cast<long>(c));
      t = sin_[static_cast<std::size_t>(j)];
      im += t.mul_si(static_cast<long>(c));
    }
    // Each basis value carries absolute error below 2^(6-p); the integer
    // scaling and the phi additions add at most (1 + phi) * 2^-p * sum|c|.
    BigReal radius(0L, 64);
    if (abs_sum != 0) {
      radius = BigReal::pow2(-static_cast<long>(prec_), 64);
      radius *= BigReal(static_cast<double>(abs_sum) * (1.0 + 1e-12), 64);
      radius.mul_si(ctx_->degree() + 72);
    }
    return {std::move(re), std::move(im), std::move(radius), prec_};
  }

 private:
  const CycContext* ctx_;
  mpfr_prec_t prec_;
  std::vector<detail::BigReal> cos_;
  std::vector<detail::BigReal> sin_;
};

/// Evaluates `e` so that the reported radius is at most 2^-bits. Working
/// precision starts at 128 bits and doubles until the radius is small enough.
inline ApproxValue approx_value(const CycContext& ctx, const CycElt& e, int bits = 128) {
  if (bits < 64) throw std::invalid_argument("approx_value: bits must be >= 64");
  const detail::BigReal target = detail::BigReal::pow2(-bits, 64);
  for (mpfr_prec_t prec = 128;; prec *= 2) {
    ApproxValue v = ApproxEvaluator(ctx, prec)(e);
    if (v.radius <= target) return v;
  }
}

}  // namespace dtorus
