#pragma once

// Value-semantic wrappers over MPFR: a binary floating real with its own
// precision, and the complex number built from two of them. Binary
// operations evaluate at the larger of the operand precisions.

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

namespace fibzeta {

using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultPrecision = 128;

class Real {
 public:
  explicit Real(Precision prec = kDefaultPrecision);
  Real(double x, Precision prec);
  Real(long x, Precision prec);
  Real(int x, Precision prec) : Real(static_cast<long>(x), prec) {}
  Real(const mpz_class& x, Precision prec);
  Real(const mpq_class& x, Precision prec);

  // Decimal or "inf"/"nan" literal; throws DomainError on junk.
  static Real parse(std::string_view text, Precision prec);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  Precision precision() const { return mpfr_get_prec(v_); }
  Real with_precision(Precision prec) const;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Scientific decimal with `digits` significant digits (0: all the
  // precision supports).
  std::string to_string(int digits = 0) const;

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  long exponent() const;  // e with 2^(e-1) <= |x| < 2^e; LONG_MIN for 0

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real operator-() const;

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator+(const Real& a, long b);
  friend Real operator-(const Real& a, long b);
  friend Real operator*(const Real& a, long b);
  friend Real operator/(const Real& a, long b);
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator+(long a, const Real& b) { return b + a; }
  friend Real operator-(long a, const Real& b);
  friend Real operator/(long a, const Real& b);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
  friend bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }

 private:
  mpfr_t v_;
};

Real pi(Precision prec);
Real ln2(Precision prec);
Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& x, const Real& y);
Real pow(const Real& x, const Real& y);
Real floor(const Real& x);
Real ldexp(const Real& x, long e);  // x * 2^e
Real max(const Real& a, const Real& b);
// 2^e at the given precision.
Real pow2(long e, Precision prec);

class CNum {
 public:
  explicit CNum(Precision prec = kDefaultPrecision);
  CNum(Real re, Real im);
  explicit CNum(const Real& re);
  CNum(double re, double im, Precision prec);

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  Precision precision() const;
  CNum with_precision(Precision prec) const;

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

  CNum& operator+=(const CNum& o);
  CNum& operator-=(const CNum& o);
  CNum& operator*=(const CNum& o);
  CNum& operator/=(const CNum& o);
  CNum operator-() const { return {-re_, -im_}; }

  friend CNum operator+(const CNum& a, const CNum& b);
  friend CNum operator-(const CNum& a, const CNum& b);
  friend CNum operator*(const CNum& a, const CNum& b);
  friend CNum operator/(const CNum& a, const CNum& b);
  friend CNum operator*(const CNum& a, const Real& b);
  friend CNum operator*(const Real& a, const CNum& b) { return b * a; }
  friend CNum operator/(const CNum& a, const Real& b);
  friend CNum operator+(const CNum& a, const Real& b);
  friend CNum operator-(const CNum& a, const Real& b);
  friend CNum operator+(const CNum& a, long b);
  friend CNum operator-(const CNum& a, long b);
  friend CNum operator*(const CNum& a, long b);
  friend CNum operator/(const CNum& a, long b);
  friend CNum operator-(long a, const CNum& b);

  friend bool operator==(const CNum& a, const CNum& b) = default;

  std::string to_string(int digits = 0) const;

 private:
  Real re_;
  Real im_;
};

CNum conj(const CNum& z);
Real abs(const CNum& z);
Real arg(const CNum& z);
CNum exp(const CNum& z);
CNum log(const CNum& z);  // principal branch
CNum sqrt(const CNum& z);
CNum sin(const CNum& z);
CNum cos(const CNum& z);
CNum pow(const CNum& z, const CNum& w);  // exp(w log z)
CNum pow(const Real& x, const CNum& w);  // x > 0
// i * x
CNum times_i(const CNum& z);

}  // namespace fibzeta
