#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <sstream>

#include "fibzeta/errors.hpp"
#include "fibzeta/sequences.hpp"

using namespace fibzeta;
using namespace fibzeta::seq;

namespace {

const qfield::FieldContext& ctx_for(long D) {
  static const qfield::FieldContext c2 = qfield::make_context(2);
  static const qfield::FieldContext c5 = qfield::make_context(5);
  static const qfield::FieldContext c13 = qfield::make_context(13);
  static const qfield::FieldContext c29 = qfield::make_context(29);
  switch (D) {
    case 2:
      return c2;
    case 5:
      return c5;
    case 13:
      return c13;
    default:
      return c29;
  }
}

}  // namespace

TEST_CASE("lucas and fibonacci examples") {
  CHECK(lucas(ctx_for(5), 1) == 1);
  CHECK(lucas(ctx_for(5), 2) == 3);
  CHECK(lucas(ctx_for(2), 1) == 2);
  const long fib[] = {1, 1, 2, 3, 5, 8};
  for (unsigned long n = 1; n <= 6; ++n) CHECK(fibonacci(ctx_for(5), n) == fib[n - 1]);
  CHECK(fibonacci(ctx_for(2), 1) == 1);
  CHECK(fibonacci(ctx_for(13), 2) == SeqTable(ctx_for(13), Kind::fibonacci, 2).at(2));
  CHECK(fibonacci(ctx_for(13), 2) == 3);
  CHECK_THROWS_AS(fibonacci(ctx_for(5), 0), DomainError);
  CHECK_THROWS_AS(lucas(ctx_for(5), 0), DomainError);
}

TEST_CASE("F_5 is the classical Fibonacci sequence") {
  mpz_class a = 1, b = 1;  // F(1), F(2)
  for (unsigned long n = 1; n <= 300; ++n) {
    REQUIRE(fibonacci(ctx_for(5), n) == a);
    mpz_class next = a + b;
    a = b;
    b = next;
  }
}

TEST_CASE("recurrence: powering agrees with the table") {
  for (long D : {2L, 5L, 13L, 29L}) {
    const auto& ctx = ctx_for(D);
    const SeqTable F(ctx, Kind::fibonacci, 501);
    const SeqTable L(ctx, Kind::lucas, 501);
    const mpz_class t = lucas(ctx, 1);
    for (unsigned long n = 2; n <= 500; ++n) {
      REQUIRE(F.at(n + 1) == t * F.at(n) + F.at(n - 1));
      REQUIRE(L.at(n + 1) == t * L.at(n) + L.at(n - 1));
    }
    for (unsigned long n : {1ul, 2ul, 3ul, 17ul, 100ul, 333ul, 501ul}) {
      REQUIRE(F.at(n) == fibonacci(ctx, n));
      REQUIRE(L.at(n) == lucas(ctx, n));
    }
    for (const auto& v : F.values()) REQUIRE(v > 0);
  }
}

TEST_CASE("closed form") {
  // eps^n = (L + F sqrt q)/2 and conj(eps) = -1/eps.
  auto check = [](long D, unsigned long n, Precision p) {
    const auto& ctx = ctx_for(D);
    const Real en = pow(ctx.eps_at(p), Real(static_cast<long>(n), p));
    const Real closed = (n % 2 == 0 ? en - 1L / en : en + 1L / en) / sqrt(Real(ctx.q, p));
    return abs(closed - Real(fibonacci(ctx, n), p)) < pow2(-64, p);
  };
  // Classical case at a flat 256 bits: F(200) < 2^139.
  for (unsigned long n = 1; n <= 200; ++n) REQUIRE_MESSAGE(check(5, n, 256), "n=" << n);
  // F_29(200) is about 2^476, so an absolute 2^-64 needs 256 bits beyond
  // the integer part.
  for (long D : {2L, 13L, 29L})
    for (unsigned long n = 1; n <= 200; ++n) {
      const Precision p = 256 + static_cast<Precision>(mpz_sizeinbase(fibonacci(ctx_for(D), n).get_mpz_t(), 2));
      REQUIRE_MESSAGE(check(D, n, p), "D=" << D << " n=" << n);
    }
}

TEST_CASE("extend keeps the prefix") {
  const SeqTable t(ctx_for(13), Kind::lucas, 5);
  const SeqTable u = t.extend(40);
  CHECK(t.size() == 5);
  CHECK(u.size() == 40);
  for (std::size_t n = 1; n <= 5; ++n) CHECK(u.at(n) == t.at(n));
  CHECK(u.at(40) == lucas(ctx_for(13), 40));
}

TEST_CASE("Pell membership examples") {
  const auto& c = ctx_for(5);
  CHECK(is_odd_indexed_fib(c, 2));
  CHECK_FALSE(is_odd_indexed_fib(c, 3));
  CHECK(is_odd_indexed_fib(c, 13));
  CHECK(is_even_indexed_fib(c, 1));
  CHECK(is_even_indexed_fib(c, 3));
  CHECK_FALSE(is_even_indexed_fib(c, 2));
  CHECK_THROWS_AS(is_odd_indexed_fib(c, 0), DomainError);
}

TEST_CASE("Pell membership equals enumerated tables (n <= 20000)") {
  for (long D : {2L, 5L, 13L, 29L}) {
    const auto& ctx = ctx_for(D);
    const SeqTable F(ctx, Kind::fibonacci, 60);
    std::set<mpz_class> odd, even;
    for (std::size_t n = 1; n <= F.size(); ++n) (n % 2 ? odd : even).insert(F.at(n));
    for (long n = 1; n <= 20000; ++n) {
      REQUIRE_MESSAGE(is_odd_indexed_fib(ctx, n) == (odd.count(n) > 0), "D=" << D << " n=" << n);
      REQUIRE_MESSAGE(is_even_indexed_fib(ctx, n) == (even.count(n) > 0), "D=" << D << " n=" << n);
    }
  }
}

TEST_CASE("convolution partial sums") {
  const auto& c = ctx_for(5);
  const CNum two(2.0, 0.0, 128);
  // n = 1 (5 - 4 = 1) and n = 4 (20 - 4 = 16): 1 + 4 * 4^-1 / 4
  CHECK(abs(convolution_partial_sum(c, two, 4, Parity::odd) - CNum(Real(5L, 128) / 4L)).to_double() < 1e-35);
  CHECK(convolution_partial_sum(c, two, 0, Parity::odd).is_zero());
  CHECK(convolution_partial_sum(c, two, 3, Parity::odd).re().to_double() == doctest::Approx(1.0));

  // Each square n = a^2 contributes exactly when a is an F_D of the right
  // parity, with weight 4 a^-s / 4: the sums match the Dirichlet series.
  for (long D : {2L, 5L, 13L, 29L}) {
    const auto& ctx = ctx_for(D);
    const CNum s(1.5, 0.7, 128);
    for (Parity par : {Parity::odd, Parity::even}) {
      const SeqTable F(ctx, Kind::fibonacci, 40);
      CNum direct(128);
      for (std::size_t n = (par == Parity::odd ? 1 : 2); n <= F.size(); n += 2) {
        if (F.at(n) * F.at(n) > 1000000) break;
        direct += exp(-s * log(Real(F.at(n), 128)));
      }
      const CNum conv = convolution_partial_sum(ctx, s, 1000000, par);
      CHECK_MESSAGE(abs(conv - direct).to_double() < 1e-30, "D=" << D);
    }
  }
}

TEST_CASE("table CSV") {
  std::ostringstream os;
  write_table_csv(os, ctx_for(5), 4);
  CHECK(os.str() == "n,L_D(n),F_D(n)\n1,1,1\n2,3,1\n3,4,2\n4,7,3\n");
}
