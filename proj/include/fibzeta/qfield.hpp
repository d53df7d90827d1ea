#pragma once

// Real quadratic field Q(sqrt D): fundamental unit, class number, regulator
// and L(1, chi_q), packaged as an immutable FieldContext.

#include <gmpxx.h>

#include "json.hpp"

#include "fibzeta/real.hpp"

namespace fibzeta::qfield {

// Element of O_D. For D = 1 mod 4 it stands for (x + y sqrt D)/2 with
// x = y mod 2; otherwise for x + y sqrt D.
class QuadInt {
 public:
  QuadInt(long D, mpz_class x, mpz_class y);

  long D() const { return D_; }
  bool half_integral() const { return D_ % 4 == 1; }
  const mpz_class& x() const { return x_; }
  const mpz_class& y() const { return y_; }

  mpz_class trace() const;
  mpz_class norm() const;
  QuadInt conjugate() const;
  // Real embedding with sqrt D > 0.
  Real to_real(Precision prec) const;

  friend QuadInt operator*(const QuadInt& a, const QuadInt& b);
  friend bool operator==(const QuadInt& a, const QuadInt& b) = default;

 private:
  long D_;
  mpz_class x_;
  mpz_class y_;
};

QuadInt pow(const QuadInt& base, unsigned long n);

struct FieldContext {
  long D;
  long q;    // D if D = 1 mod 4, else 4D
  long ell;  // 4 if D = 1 mod 4, else 1
  QuadInt eps;
  int norm_eps;
  Precision precision_bits;
  Real log_eps;
  mpz_class class_number;
  mpz_class divisor_count_D;
  Real L1_chi_q;

  // log eps at an arbitrary precision (recomputed from the exact unit).
  Real log_eps_at(Precision prec) const;
  Real eps_at(Precision prec) const;
};

// Smallest unit > 1, from the continued fraction of sqrt D or (1 + sqrt D)/2.
QuadInt fundamental_unit(long D);

// Length of the period of that continued fraction.
long cf_period_length(long D);

// h(D), by counting cycles of reduced indefinite forms of discriminant q.
mpz_class class_number(long D);

// Narrow class number h+(D) (the raw cycle count).
mpz_class narrow_class_number(long D);

// L(1, chi_q) = -(1/sqrt q) sum_{a<q} chi_q(a) log sin(pi a / q).
Real L1_direct(long D, Precision prec);

// Throws DomainError for D <= 1 or non-squarefree D, UnsupportedFieldError
// when N(eps) = +1.
FieldContext make_context(long D, Precision precision_bits = kDefaultPrecision);

void to_json(nlohmann::json& j, const FieldContext& ctx);

}  // namespace fibzeta::qfield
