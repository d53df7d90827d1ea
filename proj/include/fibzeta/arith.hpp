#pragma once

// Exact integer helpers shared by every other module.

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace fibzeta::arith {

struct PrimePower {
  mpz_class prime;
  unsigned long exponent;
};

// Primes strictly increasing; product of prime^exponent is the factored value.
using Factorization = std::vector<PrimePower>;

// floor(sqrt(n)); throws DomainError for n < 0.
mpz_class isqrt(const mpz_class& n);
std::uint64_t isqrt(std::uint64_t n);

bool is_square(const mpz_class& n);

// #{x in Z : x^2 = n}.
int r1(const mpz_class& n);

// Deterministic trial division; n >= 1.
Factorization factorize(const mpz_class& n);

// n > 1 required.
bool is_squarefree(const mpz_class& n);

// Number of positive divisors; n >= 1.
mpz_class divisor_count(const mpz_class& n);

// Kronecker symbol (a/n) for arbitrary integers.
int kronecker(std::int64_t a, std::int64_t n);

}  // namespace fibzeta::arith
