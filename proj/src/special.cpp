#include "fibzeta/special.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "fibzeta/errors.hpp"

namespace fibzeta::special {

namespace {

// Even-index Bernoulli numbers B_0, B_2, B_4, ... per precision bucket,
// from B_2k = (-1)^(k+1) 2 (2k)! zeta(2k) / (2 pi)^2k.
class BernoulliCache {
 public:
  Real even(unsigned k, Precision prec) {
    const Precision bucket = ((prec + 63) / 64) * 64 + 64;
    std::lock_guard lock(mu_);
    auto& table = tables_[bucket];
    while (table.size() <= k) table.push_back(compute(static_cast<unsigned>(table.size()), bucket));
    return table[k].with_precision(prec);
  }

 private:
  static Real compute(unsigned k, Precision prec) {
    if (k == 0) return Real(1L, prec);
    const unsigned n = 2 * k;
    Real z(prec);
    mpfr_zeta_ui(z.get(), n, MPFR_RNDN);
    Real fact(prec);
    mpfr_fac_ui(fact.get(), n, MPFR_RNDN);
    const Real twopi_n = pow(ldexp(pi(prec), 1), Real(static_cast<long>(n), prec));
    Real b = ldexp(fact * z / twopi_n, 1);
    return (k % 2 == 1) ? b : -b;
  }

  std::mutex mu_;
  std::map<Precision, std::vector<Real>> tables_;
};

BernoulliCache& bernoulli_cache() {
  static BernoulliCache cache;
  return cache;
}

// Distance check against the nearest non-positive integer.
void check_pole(const CNum& z, const char* fn) {
  const Precision p = z.precision();
  if (z.re() > 0.5) return;
  Real n = floor(z.re() + Real(0.5, p));
  const Real dist = hypot(z.re() - n, z.im());
  if (dist < pow2(-static_cast<long>(p / 2), p)) {
    throw PoleError(std::string(fn) + ": argument at pole " + n.to_string(6) + " of Gamma");
  }
}

long stirling_shift(const CNum& z, Precision p) {
  const double threshold = 20.0 + static_cast<double>(p) / 8.0;
  const double re = z.re().to_double();
  return re >= threshold ? 0 : static_cast<long>(std::ceil(threshold - re));
}

// log Gamma(w) by the Stirling series, for Re w above the shift threshold.
CNum stirling(const CNum& w) {
  const Precision wp = w.precision();
  const Real half_log_2pi = ldexp(log(ldexp(pi(wp), 1)), -1);
  CNum sum = (w - Real(0.5, wp)) * log(w) - w + half_log_2pi;

  const CNum inv = CNum(Real(1L, wp)) / w;
  const CNum inv2 = inv * inv;
  CNum power = inv;  // w^-(2k-1)
  const Real eps = pow2(-static_cast<long>(wp), wp);
  Real last_mag(wp);
  for (unsigned k = 1;; ++k) {
    const Real coeff = bernoulli(2 * k, wp) / static_cast<long>((2 * k) * (2 * k - 1));
    const CNum term = power * coeff;
    const Real mag = abs(term);
    sum += term;
    if (mag < eps * max(Real(1L, wp), abs(sum))) break;
    if (k > 4 && mag > last_mag) throw NoConvergence("Stirling series diverged before reaching precision");
    last_mag = mag;
    power *= inv2;
  }
  return sum;
}

}  // namespace

Real bernoulli(unsigned n, Precision prec) {
  if (n == 1) return Real(-0.5, prec);
  if (n % 2 == 1) return Real(prec);
  return bernoulli_cache().even(n / 2, prec);
}

CNum bernoulli_poly(unsigned n, const CNum& x) {
  // Horner in x: B_n(x) = sum_j C(n, j) B_{n-j} x^j.
  const Precision p = x.precision() + 16;
  const CNum xp = x.with_precision(p);
  mpz_class binom;
  CNum acc(p);
  for (unsigned j = n + 1; j-- > 0;) {
    mpz_bin_uiui(binom.get_mpz_t(), n, j);
    acc = acc * xp + Real(binom, p) * bernoulli(n - j, p);
  }
  return acc.with_precision(x.precision());
}

CNum log_gamma(const CNum& z) {
  check_pole(z, "log_gamma");
  const Precision p = z.precision();
  const Precision wp = p + kGuardBits;
  const CNum w = z.with_precision(wp);
  const long shift = stirling_shift(w, p);
  CNum logs(wp);
  for (long j = 0; j < shift; ++j) logs += log(w + j);
  return (stirling(w + shift) - logs).with_precision(p);
}

CNum gamma(const CNum& z) {
  check_pole(z, "gamma");
  const Precision p = z.precision();
  const Precision wp = p + kGuardBits;
  const CNum w = z.with_precision(wp);
  const long shift = stirling_shift(w, p);
  CNum prod(Real(1L, wp));
  for (long j = 0; j < shift; ++j) prod *= w + j;
  return (exp(stirling(w + shift)) / prod).with_precision(p);
}

CNum rgamma(const CNum& z) {
  const Precision p = z.precision();
  const Precision wp = p + kGuardBits;
  const CNum w = z.with_precision(wp);
  const long shift = stirling_shift(w, p);
  CNum prod(Real(1L, wp));
  for (long j = 0; j < shift; ++j) prod *= w + j;
  return (prod * exp(-stirling(w + shift))).with_precision(p);
}

CNum binom_rising(const CNum& s, unsigned long k) {
  CNum acc(Real(1L, s.precision()));
  for (unsigned long j = 0; j < k; ++j) acc = acc * (s + static_cast<long>(j)) / static_cast<long>(j + 1);
  return acc;
}

CNum hurwitz_zeta(const CNum& w, unsigned long a) {
  if (a == 0) throw DomainError("hurwitz_zeta: start index must be positive");
  const Precision p = w.precision();
  const Precision wp = p + kGuardBits;
  const CNum s = w.with_precision(wp);
  if (s.im().is_zero() && s.re() == Real(1L, wp)) throw PoleError("hurwitz_zeta: pole at w = 1");

  const double wabs = abs(s).to_double();
  const unsigned long n_direct =
      std::max<unsigned long>(a, static_cast<unsigned long>(std::ceil(wabs + static_cast<double>(wp) / 3.0)) + 1);

  CNum sum(wp);
  for (unsigned long n = a; n < n_direct; ++n) sum += exp(-s * log(Real(static_cast<long>(n), wp)));

  const Real big_n(static_cast<long>(n_direct), wp);
  const Real log_n = log(big_n);
  const CNum n_pow = exp(-s * log_n);  // N^-w
  sum += n_pow * big_n / (s - 1L);
  sum += CNum(ldexp(n_pow.re(), -1), ldexp(n_pow.im(), -1));

  // Tail: sum_j B_2j / (2j)! * (s)_(2j-1) * N^(-s-2j+1)
  const Real inv_n2 = Real(1L, wp) / (big_n * big_n);
  CNum rising = s;                          // (s)_(2j-1)
  CNum power = n_pow / big_n;               // N^(-s-1)
  Real fact(2L, wp);                        // (2j)!
  const Real eps = pow2(-static_cast<long>(wp), wp);
  Real last(wp);
  for (unsigned j = 1;; ++j) {
    const CNum term = power * rising * (bernoulli(2 * j, wp) / fact);
    const Real mag = abs(term);
    sum += term;
    if (mag < eps * max(Real(1L, wp), abs(sum))) break;
    if (j > 4 && mag > last) throw NoConvergence("hurwitz_zeta: Euler-Maclaurin tail diverged");
    last = mag;
    rising = rising * (s + static_cast<long>(2 * j - 1)) * (s + static_cast<long>(2 * j));
    power = power * inv_n2;
    fact = fact * static_cast<long>((2 * j + 1) * (2 * j + 2));
  }
  return sum.with_precision(p);
}

}  // namespace fibzeta::special
