#include "fibzeta/qfield.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "fibzeta/arith.hpp"
#include "fibzeta/errors.hpp"

namespace fibzeta::qfield {

namespace {

void require_squarefree(long D) {
  if (D <= 1) throw DomainError("D must exceed 1 (got " + std::to_string(D) + ")");
  if (!arith::is_squarefree(mpz_class(D)))
    throw DomainError("D = " + std::to_string(D) + " is not squarefree");
}

struct CfUnit {
  QuadInt unit;
  long period;
};

// Walks the complete quotients (P + sqrt D)/Q of sqrt D, or of (1 + sqrt D)/2
// when D = 1 mod 4, until both the first convergent giving a unit and the
// end of the first period have been seen.
CfUnit continued_fraction_unit(long D) {
  const bool half = D % 4 == 1;
  const mpz_class r = arith::isqrt(mpz_class(D));
  mpz_class P = half ? 1 : 0;
  mpz_class Q = half ? 2 : 1;
  mpz_class p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
  const mpz_class quarter = (D - 1) / 4;

  std::optional<QuadInt> unit;
  long period = 0;
  mpz_class P1, Q1;
  for (long i = 0;; ++i) {
    if (i >= 2 && P == P1 && Q == Q1) {
      period = i - 1;
      if (unit) break;
    }
    if (i == 1) {
      P1 = P;
      Q1 = Q;
    }
    const mpz_class a = (P + r) / Q;  // Q > 0, so this is the floor
    const mpz_class p = a * p_prev + p_prev2;
    const mpz_class q = a * q_prev + q_prev2;
    p_prev2 = p_prev;
    p_prev = p;
    q_prev2 = q_prev;
    q_prev = q;

    if (!unit) {
      const mpz_class n = half ? mpz_class(p * p - p * q - q * q * quarter) : mpz_class(p * p - D * q * q);
      if (n == 1 || n == -1) unit = half ? QuadInt(D, 2 * p - q, q) : QuadInt(D, p, q);
    }
    if (unit && period > 0) break;

    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
  return {*unit, period};
}

// Integer forms of the reduction test against sqrt(disc), which is irrational.
bool lt_sqrt(const mpz_class& v, long disc) { return v <= 0 || v * v < disc; }

bool is_reduced(long a, long b, long disc) {
  const long two_a = 2 * std::labs(a);
  return b > 0 && lt_sqrt(b, disc) && !lt_sqrt(two_a + b, disc) && lt_sqrt(two_a - b, disc);
}

using Form = std::tuple<long, long, long>;

Form rho(const Form& f, long disc, long root) {
  const auto [a, b, c] = f;
  const long m = 2 * std::labs(c);
  const long b2 = root - (((root + b) % m) + m) % m;
  const long a2 = (b2 * b2 - disc) / (4 * c);
  return {c, b2, a2};
}

}  // namespace

QuadInt::QuadInt(long D, mpz_class x, mpz_class y) : D_(D), x_(std::move(x)), y_(std::move(y)) {
  if (half_integral() && ((x_ - y_) % 2) != 0)
    throw DomainError("QuadInt: coordinates must share parity when D = 1 mod 4");
}

mpz_class QuadInt::trace() const { return half_integral() ? x_ : mpz_class(2 * x_); }

mpz_class QuadInt::norm() const {
  const mpz_class n = x_ * x_ - D_ * y_ * y_;
  return half_integral() ? mpz_class(n / 4) : n;
}

QuadInt QuadInt::conjugate() const { return {D_, x_, -y_}; }

Real QuadInt::to_real(Precision prec) const {
  const Real v = Real(x_, prec) + Real(y_, prec) * sqrt(Real(D_, prec));
  return half_integral() ? ldexp(v, -1) : v;
}

QuadInt operator*(const QuadInt& a, const QuadInt& b) {
  if (a.D_ != b.D_) throw DomainError("QuadInt: mixed fields");
  mpz_class x = a.x_ * b.x_ + a.D_ * a.y_ * b.y_;
  mpz_class y = a.x_ * b.y_ + a.y_ * b.x_;
  if (a.half_integral()) {
    mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), 2);
    mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), 2);
  }
  return {a.D_, std::move(x), std::move(y)};
}

QuadInt pow(const QuadInt& base, unsigned long n) {
  QuadInt result(base.D(), base.half_integral() ? 2 : 1, 0);
  QuadInt b = base;
  while (n > 0) {
    if (n & 1u) result = result * b;
    n >>= 1;
    if (n > 0) b = b * b;
  }
  return result;
}

Real FieldContext::eps_at(Precision prec) const { return eps.to_real(prec); }

Real FieldContext::log_eps_at(Precision prec) const {
  if (prec <= precision_bits) return log_eps.with_precision(prec);
  return log(eps_at(prec + 32)).with_precision(prec);
}

QuadInt fundamental_unit(long D) {
  require_squarefree(D);
  return continued_fraction_unit(D).unit;
}

long cf_period_length(long D) {
  require_squarefree(D);
  return continued_fraction_unit(D).period;
}

mpz_class narrow_class_number(long D) {
  require_squarefree(D);
  const long disc = D % 4 == 1 ? D : 4 * D;
  const long root = static_cast<long>(arith::isqrt(static_cast<std::uint64_t>(disc)));

  std::set<Form> reduced;
  for (long b = (disc % 2 == 0) ? 2 : 1; b <= root; b += 2) {
    const long ac = (b * b - disc) / 4;  // negative
    for (long a = 1; a <= -ac; ++a) {
      if ((-ac) % a != 0) continue;
      for (long sa : {a, -a}) {
        if (is_reduced(sa, b, disc)) reduced.insert({sa, b, ac / sa});
      }
    }
  }

  long cycles = 0;
  std::set<Form> seen;
  for (const auto& f : reduced) {
    if (seen.count(f)) continue;
    ++cycles;
    Form g = f;
    do {
      seen.insert(g);
      g = rho(g, disc, root);
    } while (g != f);
  }
  return cycles;
}

mpz_class class_number(long D) {
  const mpz_class narrow = narrow_class_number(D);
  return fundamental_unit(D).norm() == -1 ? narrow : mpz_class(narrow / 2);
}

Real L1_direct(long D, Precision prec) {
  require_squarefree(D);
  const long q = D % 4 == 1 ? D : 4 * D;
  const Precision wp = prec + 32;
  const Real pi_over_q = pi(wp) / q;
  Real sum(wp);
  for (long a = 1; a < q; ++a) {
    const int chi = arith::kronecker(q, a);
    if (chi == 0) continue;
    const Real term = log(sin(pi_over_q * a));
    sum = chi > 0 ? sum + term : sum - term;
  }
  return (-sum / sqrt(Real(q, wp))).with_precision(prec);
}

FieldContext make_context(long D, Precision precision_bits) {
  require_squarefree(D);
  const QuadInt eps = continued_fraction_unit(D).unit;
  const int norm = eps.norm() == -1 ? -1 : 1;
  if (norm == 1)
    throw UnsupportedFieldError("UNSUPPORTED: N(eps) = +1 for D = " + std::to_string(D));

  const long q = D % 4 == 1 ? D : 4 * D;
  const long ell = D % 4 == 1 ? 4 : 1;
  const Precision wp = precision_bits + 32;
  const Real log_eps_wp = log(eps.to_real(wp));
  const mpz_class h = narrow_class_number(D);  // h+ = h when N(eps) = -1
  const Real L1_wp = ldexp(Real(h, wp) * log_eps_wp, 1) / sqrt(Real(q, wp));

  const Real direct = L1_direct(D, precision_bits);
  if (abs(direct - L1_wp) > pow2(-static_cast<long>(precision_bits / 2), wp))
    throw std::logic_error("class number formula cross-check failed for D = " + std::to_string(D));

  return FieldContext{D,
                      q,
                      ell,
                      eps,
                      norm,
                      precision_bits,
                      log_eps_wp.with_precision(precision_bits),
                      h,
                      arith::divisor_count(mpz_class(D)),
                      L1_wp.with_precision(precision_bits)};
}

void to_json(nlohmann::json& j, const FieldContext& ctx) {
  auto real = [&](const Real& r) {
    return nlohmann::json{{"value", r.to_string()}, {"precision_bits", static_cast<long>(r.precision())}};
  };
  j = nlohmann::json{
      {"D", std::to_string(ctx.D)},
      {"q", std::to_string(ctx.q)},
      {"ell", std::to_string(ctx.ell)},
      {"eps",
       {{"x", ctx.eps.x().get_str()},
        {"y", ctx.eps.y().get_str()},
        {"form", ctx.eps.half_integral() ? "(x+y*sqrt(D))/2" : "x+y*sqrt(D)"}}},
      {"norm_eps", ctx.norm_eps},
      {"log_eps", real(ctx.log_eps)},
      {"class_number", ctx.class_number.get_str()},
      {"divisor_count_D", ctx.divisor_count_D.get_str()},
      {"L1_chi_q", real(ctx.L1_chi_q)},
  };
}

}  // namespace fibzeta::qfield
