#include "fibzeta/arith.hpp"

#include "fibzeta/errors.hpp"

namespace fibzeta::arith {

mpz_class isqrt(const mpz_class& n) {
  if (sgn(n) < 0) throw DomainError("isqrt: negative argument");
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::uint64_t isqrt(std::uint64_t n) {
  // Newton from above; exact for all 64-bit inputs.
  if (n < 2) return n;
  std::uint64_t x = n / 2 + 1;
  std::uint64_t y = (x + n / x) / 2;
  while (y < x) {
    x = y;
    y = (x + n / x) / 2;
  }
  return x;
}

bool is_square(const mpz_class& n) {
  if (sgn(n) < 0) return false;
  const mpz_class r = isqrt(n);
  return r * r == n;
}

int r1(const mpz_class& n) {
  const int s = sgn(n);
  if (s < 0) return 0;
  if (s == 0) return 1;
  return is_square(n) ? 2 : 0;
}

Factorization factorize(const mpz_class& n) {
  if (n < 1) throw DomainError("factorize: argument must be positive");
  Factorization out;
  mpz_class rest = n;
  auto strip = [&](unsigned long p) {
    unsigned long e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e > 0) out.push_back({mpz_class(p), e});
  };
  strip(2);
  for (unsigned long p = 3; mpz_class(p) * p <= rest; p += 2) strip(p);
  if (rest > 1) out.push_back({rest, 1});
  return out;
}

bool is_squarefree(const mpz_class& n) {
  if (n <= 1) throw DomainError("is_squarefree: argument must exceed 1");
  for (const auto& pe : factorize(n))
    if (pe.exponent > 1) return false;
  return true;
}

mpz_class divisor_count(const mpz_class& n) {
  mpz_class d = 1;
  for (const auto& pe : factorize(n)) d *= pe.exponent + 1;
  return d;
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;

  int result = 1;
  std::uint64_t m;
  if (n < 0) {
    m = std::uint64_t(0) - static_cast<std::uint64_t>(n);
    if (a < 0) result = -1;
  } else {
    m = static_cast<std::uint64_t>(n);
  }

  // (a/2) = 0 for even a, +1 for a = +-1 mod 8, -1 for a = +-3 mod 8.
  int twos = 0;
  while ((m & 1u) == 0) {
    m >>= 1;
    ++twos;
  }
  if (twos > 0) {
    if ((a & 1) == 0) return 0;
    const std::int64_t r8 = ((a % 8) + 8) % 8;
    if ((twos & 1) && (r8 == 3 || r8 == 5)) result = -result;
  }
  if (m == 1) return result;

  // Jacobi symbol for odd m > 1.
  std::int64_t sm = static_cast<std::int64_t>(m);
  std::uint64_t x = static_cast<std::uint64_t>(((a % sm) + sm) % sm);
  while (x != 0) {
    while ((x & 1u) == 0) {
      x >>= 1;
      const std::uint64_t r8 = m % 8;
      if (r8 == 3 || r8 == 5) result = -result;
    }
    std::swap(x, m);
    if (x % 4 == 3 && m % 4 == 3) result = -result;
    x %= m;
  }
  return m == 1 ? result : 0;
}

}  // namespace fibzeta::arith
