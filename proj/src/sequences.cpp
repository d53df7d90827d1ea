#include "fibzeta/sequences.hpp"

#include <ostream>
#include <string>

#include "fibzeta/arith.hpp"
#include "fibzeta/errors.hpp"

namespace fibzeta::seq {

const char* to_string(Parity p) { return p == Parity::odd ? "odd" : "even"; }

Parity parse_parity(const std::string& text) {
  if (text == "odd") return Parity::odd;
  if (text == "even") return Parity::even;
  throw DomainError("parity must be 'odd' or 'even' (got '" + text + "')");
}

SeqTable::SeqTable(const qfield::FieldContext& ctx, Kind kind, std::size_t n_max)
    : SeqTable(ctx.D, kind, ctx.eps.trace(), {}) {
  // x(0): L_D(0) = Tr(1) = 2, F_D(0) = 0.  x(1) from eps itself.
  mpz_class prev = kind == Kind::lucas ? mpz_class(2) : mpz_class(0);
  mpz_class cur = kind == Kind::lucas ? ctx.eps.trace() : ctx.eps.y();
  values_.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    values_.push_back(cur);
    mpz_class next = trace1_ * cur + prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
}

SeqTable::SeqTable(long D, Kind kind, mpz_class trace1, std::vector<mpz_class> values)
    : D_(D), kind_(kind), trace1_(std::move(trace1)), values_(std::move(values)) {}

SeqTable SeqTable::extend(std::size_t n_max) const {
  std::vector<mpz_class> v = values_;
  if (n_max > v.size()) {
    v.reserve(n_max);
    mpz_class prev = v.size() >= 2 ? v[v.size() - 2] : (kind_ == Kind::lucas ? mpz_class(2) : mpz_class(0));
    while (v.size() < n_max) {
      mpz_class next = trace1_ * v.back() + prev;
      prev = v.back();
      v.push_back(std::move(next));
    }
  }
  return {D_, kind_, trace1_, std::move(v)};
}

mpz_class lucas(const qfield::FieldContext& ctx, unsigned long n) {
  if (n == 0) throw DomainError("lucas: index must be positive");
  return qfield::pow(ctx.eps, n).trace();
}

mpz_class fibonacci(const qfield::FieldContext& ctx, unsigned long n) {
  if (n == 0) throw DomainError("fibonacci: index must be positive");
  // eps^n - conj(eps^n) = y sqrt D in either coordinate convention, and
  // Tr(eps^n / sqrt q) reduces to the y coordinate.
  return qfield::pow(ctx.eps, n).y();
}

bool is_odd_indexed_fib(const qfield::FieldContext& ctx, const mpz_class& n) {
  if (n < 1) throw DomainError("is_odd_indexed_fib: n must be positive");
  return arith::r1(ctx.q * n * n - 4) > 0;
}

bool is_even_indexed_fib(const qfield::FieldContext& ctx, const mpz_class& n) {
  if (n < 1) throw DomainError("is_even_indexed_fib: n must be positive");
  return arith::r1(ctx.q * n * n + 4) > 0;
}

CNum convolution_partial_sum(const qfield::FieldContext& ctx, const CNum& s, std::uint64_t N, Parity parity) {
  const Precision p = s.precision();
  CNum sum(p);
  // r1(n) vanishes off the squares, so only n = a^2 contributes, with weight
  // r1(a^2) = 2 and n^(-s/2) = a^(-s).
  const std::uint64_t a_max = arith::isqrt(N);
  const long shift = parity == Parity::odd ? -ctx.ell : ctx.ell;
  for (std::uint64_t a = 1; a <= a_max; ++a) {
    const mpz_class n = mpz_class(static_cast<unsigned long>(a)) * static_cast<unsigned long>(a);
    const int w = arith::r1(n) * arith::r1(ctx.D * n + shift);
    if (w == 0) continue;
    sum += exp(-s * log(Real(static_cast<long>(a), p))) * static_cast<long>(w);
  }
  return sum / 4L;
}

void write_table_csv(std::ostream& os, const qfield::FieldContext& ctx, std::size_t n_max) {
  const SeqTable L(ctx, Kind::lucas, n_max);
  const SeqTable F(ctx, Kind::fibonacci, n_max);
  os << "n,L_D(n),F_D(n)\n";
  for (std::size_t n = 1; n <= n_max; ++n) os << n << ',' << L.at(n).get_str() << ',' << F.at(n).get_str() << '\n';
}

}  // namespace fibzeta::seq
