#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fibzeta/arith.hpp"
#include "fibzeta/errors.hpp"
#include "fibzeta/qfield.hpp"

using namespace fibzeta;
using namespace fibzeta::qfield;

namespace {

std::vector<long> squarefree_upto(long n) {
  std::vector<long> out;
  for (long D = 2; D <= n; ++D)
    if (arith::is_squarefree(mpz_class(D))) out.push_back(D);
  return out;
}

// Smallest unit > 1 by brute force: the least y >= 1 admitting a unit, then
// the least x. Coordinates in the same convention as QuadInt.
QuadInt brute_force_unit(long D) {
  const bool half = D % 4 == 1;
  for (long y = 1;; ++y) {
    mpz_class best_x = -1;
    for (long sign : {-1L, 1L}) {
      // x^2 = D y^2 + sign * (4 or 1)
      const mpz_class rhs = mpz_class(D) * y * y + sign * (half ? 4 : 1);
      if (rhs > 0 && arith::is_square(rhs)) {
        const mpz_class x = arith::isqrt(rhs);
        if (best_x < 0 || x < best_x) best_x = x;
      }
    }
    if (best_x > 0) return QuadInt(D, best_x, y);
  }
}

bool negative_pell_solvable(long D, long y_max) {
  for (long y = 1; y <= y_max; ++y) {
    const mpz_class rhs = mpz_class(D) * y * y - 4;
    if (arith::is_square(rhs)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("QuadInt arithmetic") {
  CHECK_THROWS_AS(QuadInt(5, 1, 2), DomainError);
  const QuadInt a(5, 3, 1), b(5, 1, 1);
  CHECK(a * b == QuadInt(5, 4, 2));  // (3+r)(1+r)/4 = (8 + 4r)/4
  CHECK((a * b).norm() == a.norm() * b.norm());
  CHECK(a.trace() == 3);
  CHECK(QuadInt(2, 1, 1).trace() == 2);
  CHECK(QuadInt(2, 1, 1).norm() == -1);
  CHECK(pow(QuadInt(2, 1, 1), 2) == QuadInt(2, 3, 2));
  CHECK(pow(QuadInt(2, 1, 1), 0) == QuadInt(2, 1, 0));
  CHECK(QuadInt(2, 1, 1).conjugate() == QuadInt(2, 1, -1));
  CHECK(std::fabs(QuadInt(5, 1, 1).to_real(64).to_double() - 1.6180339887498949) < 1e-15);
}

TEST_CASE("fundamental_unit examples") {
  CHECK(fundamental_unit(2) == QuadInt(2, 1, 1));
  CHECK(fundamental_unit(2).norm() == -1);
  CHECK(fundamental_unit(5) == QuadInt(5, 1, 1));
  CHECK(fundamental_unit(5).norm() == -1);
  CHECK(fundamental_unit(3) == QuadInt(3, 2, 1));
  CHECK(fundamental_unit(3).norm() == 1);
  CHECK(fundamental_unit(13) == QuadInt(13, 3, 1));
  CHECK(fundamental_unit(29) == QuadInt(29, 5, 1));
  CHECK(fundamental_unit(94) == QuadInt(94, mpz_class(2143295), mpz_class(221064)));
  CHECK_THROWS_AS(fundamental_unit(12), DomainError);
  CHECK_THROWS_AS(fundamental_unit(1), DomainError);
}

TEST_CASE("fundamental_unit matches brute force for D <= 100") {
  for (long D : squarefree_upto(100)) {
    const QuadInt eps = fundamental_unit(D);
    CHECK_MESSAGE((eps.norm() == 1 || eps.norm() == -1), "D=" << D);
    if (eps.y() > 5000) continue;  // brute force search below is linear in y
    CHECK_MESSAGE(eps == brute_force_unit(D), "D=" << D);
  }
}

TEST_CASE("make_context succeeds exactly when x^2 - D y^2 = -4 is solvable (D <= 100)") {
  for (long D : squarefree_upto(100)) {
    const bool solvable = negative_pell_solvable(D, 20000);
    bool constructed = true;
    try {
      make_context(D, 64);
    } catch (const UnsupportedFieldError&) {
      constructed = false;
    }
    CHECK_MESSAGE(constructed == solvable, "D=" << D);
  }
}

TEST_CASE("period parity matches the norm of the unit") {
  CHECK(cf_period_length(2) == 1);
  CHECK(cf_period_length(3) == 2);
  CHECK(cf_period_length(5) == 1);
  CHECK(cf_period_length(7) == 4);
  for (long D : squarefree_upto(300)) {
    const bool odd_period = cf_period_length(D) % 2 == 1;
    CHECK_MESSAGE(odd_period == (fundamental_unit(D).norm() == -1), "D=" << D);
  }
}

TEST_CASE("class numbers") {
  CHECK(class_number(5) == 1);
  CHECK(class_number(2) == 1);
  CHECK(class_number(65) == 2);
  CHECK(class_number(10) == 2);
  CHECK(class_number(79) == 3);
  CHECK(class_number(82) == 4);
  CHECK(class_number(229) == 3);
  CHECK(class_number(3) == 1);
  CHECK(narrow_class_number(3) == 2);
}

TEST_CASE("class number agrees with the analytic formula for all D <= 400") {
  // h = L(1, chi_q) sqrt(q) / (2 log eps), with L(1, chi_q) from the
  // character sum: independent of the form-cycle count.
  for (long D : squarefree_upto(400)) {
    const long q = D % 4 == 1 ? D : 4 * D;
    const Real L1 = L1_direct(D, 96);
    const Real h = L1 * sqrt(Real(q, 96)) / ldexp(log(fundamental_unit(D).to_real(96)), 1);
    const double hd = h.to_double();
    CHECK_MESSAGE(std::fabs(hd - std::round(hd)) < 1e-20, "D=" << D);
    CHECK_MESSAGE(class_number(D) == static_cast<long>(std::round(hd)), "D=" << D);
  }
}

TEST_CASE("make_context examples") {
  const FieldContext c5 = make_context(5, 128);
  CHECK(c5.q == 5);
  CHECK(c5.ell == 4);
  CHECK(c5.class_number == 1);
  CHECK(c5.norm_eps == -1);
  CHECK(std::fabs(c5.log_eps.to_double() - 0.48121182505960344) < 1e-15);
  CHECK(c5.log_eps.precision() == 128);
  CHECK(c5.divisor_count_D == 2);

  const FieldContext c2 = make_context(2, 128);
  CHECK(c2.q == 8);
  CHECK(c2.ell == 1);
  CHECK(c2.norm_eps == -1);

  CHECK_THROWS_AS(make_context(12, 128), DomainError);
  CHECK_THROWS_AS(make_context(1, 128), DomainError);
  CHECK_THROWS_AS(make_context(3, 128), UnsupportedFieldError);
  try {
    make_context(3, 128);
  } catch (const UnsupportedFieldError& e) {
    CHECK(std::string(e.what()).find("UNSUPPORTED: N(eps) = +1") == 0);
  }
}

TEST_CASE("context invariants and the class number formula") {
  for (long D : squarefree_upto(200)) {
    if (fundamental_unit(D).norm() != -1) continue;
    const FieldContext ctx = make_context(D, 128);
    CHECK(ctx.q * ctx.ell == 4 * D);
    CHECK(ctx.log_eps > 0.0);
    CHECK(ctx.class_number >= 1);
    CHECK(ctx.L1_chi_q > 0.0);
    const Real rhs = ldexp(Real(ctx.class_number, 160) * ctx.log_eps_at(160), 1) / sqrt(Real(ctx.q, 160));
    CHECK_MESSAGE(abs(L1_direct(D, 128) - rhs) < pow2(-100, 160), "D=" << D);
  }
}

TEST_CASE("log_eps_at refines the regulator") {
  const FieldContext ctx = make_context(13, 128);
  const Real hi = ctx.log_eps_at(400);
  CHECK(hi.precision() == 400);
  CHECK(abs(hi - ctx.log_eps) < pow2(-126, 400));
  CHECK(abs(exp(hi) - ctx.eps_at(400)) < pow2(-390, 400));
}

TEST_CASE("context JSON") {
  const nlohmann::json j = make_context(5, 128);
  CHECK(j["q"] == "5");
  CHECK(j["ell"] == "4");
  CHECK(j["class_number"] == "1");
  CHECK(j["eps"]["x"] == "1");
  CHECK(j["log_eps"]["precision_bits"] == 128);
  CHECK(j["log_eps"]["value"].get<std::string>().rfind("0.48121182505960344749775891342436842", 0) == 0);
}
