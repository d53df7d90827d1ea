#pragma once

// O_D Lucas and Fibonacci numbers L_D(n) = Tr(eps^n), F_D(n) = Tr(eps^n / sqrt q),
// the Pell-equation membership tests, and the r1-convolution form of the
// zeta series.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fibzeta/qfield.hpp"
#include "fibzeta/real.hpp"

namespace fibzeta::seq {

enum class Kind { lucas, fibonacci };
enum class Parity { odd, even };

const char* to_string(Parity p);
Parity parse_parity(const std::string& text);

// Both sequences satisfy x(n+1) = L_D(1) x(n) + x(n-1) because N(eps) = -1.
// Tables are immutable values; extend() returns a longer copy.
class SeqTable {
 public:
  SeqTable(const qfield::FieldContext& ctx, Kind kind, std::size_t n_max);

  long D() const { return D_; }
  Kind kind() const { return kind_; }
  std::size_t size() const { return values_.size(); }
  // 1-based, as in the sequence definition.
  const mpz_class& at(std::size_t n) const { return values_.at(n - 1); }
  const std::vector<mpz_class>& values() const { return values_; }

  SeqTable extend(std::size_t n_max) const;

 private:
  SeqTable(long D, Kind kind, mpz_class trace1, std::vector<mpz_class> values);

  long D_;
  Kind kind_;
  mpz_class trace1_;
  std::vector<mpz_class> values_;
};

// Exact, by binary powering of eps.
mpz_class lucas(const qfield::FieldContext& ctx, unsigned long n);
mpz_class fibonacci(const qfield::FieldContext& ctx, unsigned long n);

// q n^2 - 4 (resp. + 4) is a perfect square.
bool is_odd_indexed_fib(const qfield::FieldContext& ctx, const mpz_class& n);
bool is_even_indexed_fib(const qfield::FieldContext& ctx, const mpz_class& n);

// (1/4) sum_{n <= N} r1(n) r1(D n -+ ell) n^(-s/2); '-' for odd, '+' for even.
CNum convolution_partial_sum(const qfield::FieldContext& ctx, const CNum& s, std::uint64_t N, Parity parity);

// CSV: n,L_D(n),F_D(n) for n = 1..n_max.
void write_table_csv(std::ostream& os, const qfield::FieldContext& ctx, std::size_t n_max);

}  // namespace fibzeta::seq
