#pragma once

// Minimal RAII handle over an MPFR number. Only the handful of operations
// the library needs are exposed.

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace dtorus::detail {

class BigReal {
 public:
  explicit BigReal(mpfr_prec_t bits = 128) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  BigReal(long value, mpfr_prec_t bits) : BigReal(bits) { mpfr_set_si(v_, value, MPFR_RNDN); }
  BigReal(double value, mpfr_prec_t bits) : BigReal(bits) { mpfr_set_d(v_, value, MPFR_RNDN); }

  BigReal(const BigReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigReal(BigReal&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigReal& operator=(const BigReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigReal& operator=(BigReal&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigReal() { mpfr_clear(v_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  static BigReal pi(mpfr_prec_t bits) {
    BigReal r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  /// 2^exp exactly.
  static BigReal pow2(long exp, mpfr_prec_t bits) {
    BigReal r(1L, bits);
    mpfr_mul_2si(r.v_, r.v_, exp, MPFR_RNDN);
    return r;
  }
  static BigReal from_int(const boost::multiprecision::cpp_int& z, mpfr_prec_t bits) {
    BigReal r(bits);
    mpfr_set_str(r.v_, z.str().c_str(), 10, MPFR_RNDN);
    return r;
  }

  BigReal& operator+=(const BigReal& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigReal& operator-=(const BigReal& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigReal& operator*=(const BigReal& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigReal& operator/=(const BigReal& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigReal& mul_si(long k) { mpfr_mul_si(v_, v_, k, MPFR_RNDN); return *this; }
  BigReal& div_si(long k) { mpfr_div_si(v_, v_, k, MPFR_RNDN); return *this; }

  friend BigReal operator+(BigReal a, const BigReal& b) { return a += b; }
  friend BigReal operator-(BigReal a, const BigReal& b) { return a -= b; }
  friend BigReal operator*(BigReal a, const BigReal& b) { return a *= b; }
  friend BigReal operator/(BigReal a, const BigReal& b) { return a /= b; }
  BigReal operator-() const {
    BigReal r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  BigReal abs() const {
    BigReal r(*this);
    mpfr_abs(r.v_, r.v_, MPFR_RNDN);
    return r;
  }
  BigReal cos() const {
    BigReal r(precision());
    mpfr_cos(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigReal sin() const {
    BigReal r(precision());
    mpfr_sin(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigReal pow(const BigReal& e) const {
    BigReal r(precision());
    mpfr_pow(r.v_, v_, e.v_, MPFR_RNDN);
    return r;
  }
  /// Rounds up; used when accumulating error radii.
  BigReal& add_up(const BigReal& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDU); return *this; }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  friend int compare(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator<(const BigReal& a, const BigReal& b) { return compare(a, b) < 0; }
  friend bool operator>(const BigReal& a, const BigReal& b) { return compare(a, b) > 0; }
  friend bool operator<=(const BigReal& a, const BigReal& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const BigReal& a, const BigReal& b) { return compare(a, b) >= 0; }

  /// Decimal rendering with `digits` significant digits ("%.{digits}Rg").
  std::string to_string(int digits) const {
    const std::string fmt = "%." + std::to_string(digits) + "Rg";
    int n = mpfr_snprintf(nullptr, 0, fmt.c_str(), v_);
    std::string out(static_cast<std::size_t>(n) + 1, '\0');
    mpfr_snprintf(out.data(), out.size(), fmt.c_str(), v_);
    out.resize(static_cast<std::size_t>(n));
    return out;
  }

 private:
  mpfr_t v_;
};

}  // namespace dtorus::detail
