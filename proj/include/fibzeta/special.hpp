#pragma once

// Gamma-family special functions over CNum.
//
// log_gamma/gamma shift the argument up to Re z >= 20 + precision/8 with the
// recurrence and then sum the Stirling series until the next term falls
// below 2^-(precision + kGuardBits). Internally everything runs with
// kGuardBits extra bits; observed error against a 4x-precision reference is
// below 2^-(precision - 8) relative to max(1, |result|).

#include "fibzeta/real.hpp"

namespace fibzeta::special {

inline constexpr Precision kGuardBits = 32;

// Bernoulli number B_n (B_1 = -1/2) at the given precision. Thread-safe,
// cached per precision.
Real bernoulli(unsigned n, Precision prec);

// Bernoulli polynomial B_n(x).
CNum bernoulli_poly(unsigned n, const CNum& x);

// Principal branch of log Gamma: log Gamma(z + N) - sum_{j<N} log(z + j), each
// logarithm principal. Throws PoleError within 2^(-precision/2) of a
// non-positive integer.
CNum log_gamma(const CNum& z);

// Gamma(z); same pole contract as log_gamma.
CNum gamma(const CNum& z);

// 1 / Gamma(z). Entire: returns (numerically) zero at the poles of Gamma.
CNum rgamma(const CNum& z);

// Gamma(s + k) / (Gamma(s) k!) = prod_{j<k} (s + j) / (j + 1).
CNum binom_rising(const CNum& s, unsigned long k);

// Hurwitz zeta sum_{n >= a} n^(-w) for integer a >= 1 and w != 1, by
// Euler-Maclaurin summation.
CNum hurwitz_zeta(const CNum& w, unsigned long a);

}  // namespace fibzeta::special
