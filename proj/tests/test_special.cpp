#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fibzeta/errors.hpp"
#include "fibzeta/real.hpp"
#include "fibzeta/special.hpp"

using namespace fibzeta;
using namespace fibzeta::special;

namespace {

constexpr Precision P = 128;

double rel(const CNum& a, const CNum& b) {
  const Real scale = max(abs(b), Real(1e-300, P));
  return (abs(a - b) / scale).to_double();
}

double absdiff(const CNum& a, const CNum& b) { return abs(a - b).to_double(); }

CNum c(double re, double im = 0.0, Precision p = P) { return CNum(re, im, p); }

CNum cq(long num, long den, Precision p = P) { return CNum(Real(mpq_class(num, den), p)); }

const double kTol8 = std::ldexp(1.0, -static_cast<int>(P) + 8);
const double kTol16 = std::ldexp(1.0, -static_cast<int>(P) + 16);

}  // namespace

TEST_CASE("Real and CNum basics") {
  const Real x = Real::parse("0.1", P);
  CHECK(x.precision() == P);
  CHECK(std::fabs(x.to_double() - 0.1) < 1e-17);
  CHECK_THROWS_AS(Real::parse("abc", P), DomainError);
  CHECK(Real::parse("1e-3", P).to_string(3) == "0.001");
  CHECK(Real::parse("-2.5e40", P).to_string(4) == "-2.5e+40");

  const CNum z = c(3, 4);
  CHECK(abs(z).to_double() == doctest::Approx(5.0));
  const CNum w = z / c(1, -2);
  CHECK(absdiff(w * c(1, -2), z) < 1e-35);
  CHECK(absdiff(exp(log(z)), z) < 1e-35);
  CHECK(absdiff(sqrt(z), c(2, 1)) < 1e-35);
  CHECK(absdiff(sin(z) * sin(z) + cos(z) * cos(z), c(1)) < 1e-30);

  // Mixed precision evaluates at the larger one.
  CHECK((Real(1L, 64) + Real(1L, 200)).precision() == 200);
  CHECK((c(1, 0, 64) * c(1, 0, 300)).precision() == 300);
}

TEST_CASE("bernoulli numbers") {
  CHECK(bernoulli(0, P).to_double() == 1.0);
  CHECK(bernoulli(1, P).to_double() == -0.5);
  CHECK(bernoulli(3, P).is_zero());
  const std::pair<unsigned, mpq_class> known[] = {
      {2, mpq_class(1, 6)},     {4, mpq_class(-1, 30)},     {6, mpq_class(1, 42)},
      {12, mpq_class(-691, 2730)}, {20, mpq_class(-174611, 330)},
  };
  for (const auto& [n, v] : known) CHECK(abs(bernoulli(n, P) - Real(v, P)).to_double() < 1e-35 * std::fabs(v.get_d()));

  // B_3(x) = x^3 - 3/2 x^2 + 1/2 x
  const CNum x = c(0.3, -1.7);
  const CNum expected = x * x * x - x * x * cq(3, 2) + x * cq(1, 2);
  CHECK(rel(bernoulli_poly(3, x), expected) < kTol8);
  CHECK(rel(bernoulli_poly(0, x), c(1)) < kTol8);
}

TEST_CASE("log_gamma and gamma: exact values") {
  CHECK(abs(log_gamma(c(1))).to_double() < kTol8);
  CHECK(rel(log_gamma(cq(1, 2)), CNum(log(sqrt(pi(P))))) < kTol8);
  CHECK(rel(log_gamma(c(5)), CNum(log(Real(24L, P)))) < kTol8);
  CHECK(rel(gamma(c(1)), c(1)) < kTol8);
  CHECK(rel(gamma(cq(1, 2)), CNum(sqrt(pi(P)))) < kTol8);
  CHECK(rel(gamma(cq(-1, 2)), CNum(sqrt(pi(P)) * -2L)) < kTol8);
  CHECK(rel(gamma(c(21)), CNum(Real(mpz_class("2432902008176640000"), P))) < kTol8);
}

TEST_CASE("gamma reflection") {
  const CNum z = c(0.3, 0.7);
  const CNum lhs = gamma(z) * gamma(1L - z);
  const CNum rhs = CNum(pi(P)) / sin(z * pi(P));
  CHECK(rel(lhs, rhs) < kTol8);
}

TEST_CASE("gamma poles") {
  CHECK_THROWS_AS(gamma(c(0)), PoleError);
  CHECK_THROWS_AS(gamma(c(-3)), PoleError);
  CHECK_THROWS_AS(log_gamma(c(-2, 1e-30)), PoleError);
  CHECK_NOTHROW(gamma(c(-2, 1e-6)));
  CHECK(abs(rgamma(c(-2))).to_double() < 1e-30);
  CHECK(abs(rgamma(c(0))).to_double() < 1e-30);
  CHECK(rel(rgamma(c(4)), cq(1, 6)) < kTol8);
}

TEST_CASE("duplication and recurrence over random samples") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-14.0, 14.0);
  const CNum sqrt_pi(sqrt(pi(P)));
  int checked = 0;
  while (checked < 200) {
    const CNum z = c(u(rng), u(rng));
    const double re = z.re().to_double(), im = z.im().to_double();
    if (std::hypot(re, im) > 20.0) continue;
    // keep z, z + 1/2, 2z clear of the poles
    if (std::fabs(im) < 0.1 && re < 0.5) continue;
    ++checked;
    const CNum lhs = gamma(z) * gamma(z + cq(1, 2));
    const CNum rhs = exp((1L - z * 2L) * ln2(P)) * sqrt_pi * gamma(z * 2L);
    REQUIRE_MESSAGE(rel(lhs, rhs) < kTol16, "z=" << z.to_string(10));
    REQUIRE_MESSAGE(rel(gamma(z + 1L), z * gamma(z)) < kTol16, "z=" << z.to_string(10));
  }
}

TEST_CASE("conjugate symmetry") {
  const CNum z = c(-3.3, 2.1);
  CHECK(rel(gamma(conj(z)), conj(gamma(z))) < kTol8);
}

TEST_CASE("precision scaling against a 4x reference") {
  for (const CNum& z0 : {c(0.3, 0.7), c(-4.6, 3.0), c(11.2, -9.5)}) {
    const CNum ref = gamma(z0.with_precision(512));
    const double d64 = rel(gamma(z0.with_precision(64)).with_precision(512), ref);
    const double d128 = rel(gamma(z0.with_precision(128)).with_precision(512), ref);
    CHECK(d64 < std::ldexp(1.0, -64 + 8));
    CHECK(d128 < std::ldexp(1.0, -128 + 8));
    CHECK(d128 <= std::max(d64 * std::ldexp(1.0, -32), std::ldexp(1.0, -150)));
  }
}

TEST_CASE("binom_rising") {
  const CNum s = c(0.4, -2.2);
  CHECK(rel(binom_rising(s, 0), c(1)) < kTol8);
  CHECK(rel(binom_rising(s, 1), s) < kTol8);
  CHECK(rel(binom_rising(c(3), 2), c(6)) < kTol8);
  // Gamma(s+k) / (Gamma(s) k!)
  CHECK(rel(binom_rising(s, 9), gamma(s + 9L) / (gamma(s) * 362880L)) < kTol16);
}

TEST_CASE("hurwitz zeta") {
  CHECK(rel(hurwitz_zeta(c(2), 1), CNum(pi(P) * pi(P) / 6L)) < kTol8);
  Real z3(P);
  mpfr_zeta_ui(z3.get(), 3, MPFR_RNDN);
  const Real partial = Real(1L, P) + Real(mpq_class(1, 8), P) + Real(mpq_class(1, 27), P) + Real(mpq_class(1, 64), P);
  CHECK(rel(hurwitz_zeta(c(3), 5), CNum(z3 - partial)) < kTol8);
  // zeta(-1) = -1/12, zeta(-2) = 0
  CHECK(rel(hurwitz_zeta(c(-1), 1), cq(-1, 12)) < kTol8);
  CHECK(rel(hurwitz_zeta(c(-2), 3), c(-5)) < kTol8);
  // complex w: sum_{n >= a} n^-w directly, for Re w large
  const CNum w = c(20.5, 4.0);
  CNum direct(P);
  for (long n = 7; n < 2000; ++n) direct += exp(-w * log(Real(n, P)));
  CHECK(rel(hurwitz_zeta(w, 7), direct) < 1e-25);
}
