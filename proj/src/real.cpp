#include "fibzeta/real.hpp"

#include <algorithm>
#include <climits>
#include <memory>
#include <string>

#include "fibzeta/errors.hpp"

namespace fibzeta {

namespace {

Precision pmax(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

template <class F>
Real unary(const Real& x, F f) {
  Real r(x.precision());
  f(r.get(), x.get(), MPFR_RNDN);
  return r;
}

}  // namespace

Real::Real(Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

Real::Real(double x, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, x, MPFR_RNDN);
}

Real::Real(long x, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_si(v_, x, MPFR_RNDN);
}

Real::Real(const mpz_class& x, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& x, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
}

Real Real::parse(std::string_view text, Precision prec) {
  Real r(prec);
  const std::string s(text);
  char* end = nullptr;
  if (!s.empty()) mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
  if (s.empty() || end != s.c_str() + s.size())
    throw DomainError("cannot parse real number '" + s + "'");
  return r;
}

Real::Real(const Real& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::with_precision(Precision prec) const {
  Real r(prec);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return sign() > 0 ? "inf" : "-inf";
  if (digits <= 0) digits = static_cast<int>(precision() * 0.30103) + 1;
  const int n = mpfr_snprintf(nullptr, 0, "%.*Rg", digits, v_);
  std::string out(static_cast<std::size_t>(n) + 1, '\0');
  mpfr_snprintf(out.data(), out.size(), "%.*Rg", digits, v_);
  out.resize(static_cast<std::size_t>(n));
  return out;
}

long Real::exponent() const {
  if (is_zero()) return LONG_MIN;
  return mpfr_get_exp(v_);
}

Real& Real::operator+=(const Real& o) { return *this = *this + o; }
Real& Real::operator-=(const Real& o) { return *this = *this - o; }
Real& Real::operator*=(const Real& o) { return *this = *this * o; }
Real& Real::operator/=(const Real& o) { return *this = *this / o; }

Real Real::operator-() const {
  Real r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

Real operator+(const Real& a, const Real& b) {
  Real r(pmax(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r(pmax(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r(pmax(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r(pmax(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator+(const Real& a, long b) {
  Real r(a.precision());
  mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, long b) {
  Real r(a.precision());
  mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, long b) {
  Real r(a.precision());
  mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, long b) {
  Real r(a.precision());
  mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}
Real operator-(long a, const Real& b) {
  Real r(b.precision());
  mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
  return r;
}
Real operator/(long a, const Real& b) {
  Real r(b.precision());
  mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

Real pi(Precision prec) {
  Real r(prec);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

Real ln2(Precision prec) {
  Real r(prec);
  mpfr_const_log2(r.get(), MPFR_RNDN);
  return r;
}

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }

Real floor(const Real& x) {
  Real r(x.precision());
  mpfr_floor(r.get(), x.get());
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r(pmax(y, x));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r(pmax(x, y));
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r(pmax(x, y));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r(x.precision());
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return (a < b) ? b : a; }

Real pow2(long e, Precision prec) {
  Real r(prec);
  mpfr_set_ui_2exp(r.get(), 1, e, MPFR_RNDN);
  return r;
}

// ---------------------------------------------------------------------------

CNum::CNum(Precision prec) : re_(prec), im_(prec) {}

CNum::CNum(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {
  const Precision p = std::max(re_.precision(), im_.precision());
  if (re_.precision() != p) re_ = re_.with_precision(p);
  if (im_.precision() != p) im_ = im_.with_precision(p);
}

CNum::CNum(const Real& re) : re_(re), im_(re.precision()) {}

CNum::CNum(double re, double im, Precision prec) : re_(re, prec), im_(im, prec) {}

Precision CNum::precision() const { return std::max(re_.precision(), im_.precision()); }

CNum CNum::with_precision(Precision prec) const {
  return {re_.with_precision(prec), im_.with_precision(prec)};
}

CNum& CNum::operator+=(const CNum& o) { return *this = *this + o; }
CNum& CNum::operator-=(const CNum& o) { return *this = *this - o; }
CNum& CNum::operator*=(const CNum& o) { return *this = *this * o; }
CNum& CNum::operator/=(const CNum& o) { return *this = *this / o; }

CNum operator+(const CNum& a, const CNum& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
CNum operator-(const CNum& a, const CNum& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }

CNum operator*(const CNum& a, const CNum& b) {
  return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

CNum operator/(const CNum& a, const CNum& b) {
  // Smith's algorithm keeps the intermediate quotient bounded.
  if (abs(b.re_) >= abs(b.im_)) {
    const Real r = b.im_ / b.re_;
    const Real d = b.re_ + b.im_ * r;
    return {(a.re_ + a.im_ * r) / d, (a.im_ - a.re_ * r) / d};
  }
  const Real r = b.re_ / b.im_;
  const Real d = b.re_ * r + b.im_;
  return {(a.re_ * r + a.im_) / d, (a.im_ * r - a.re_) / d};
}

CNum operator*(const CNum& a, const Real& b) { return {a.re_ * b, a.im_ * b}; }
CNum operator/(const CNum& a, const Real& b) { return {a.re_ / b, a.im_ / b}; }
CNum operator+(const CNum& a, const Real& b) { return {a.re_ + b, a.im_.with_precision(std::max(a.precision(), b.precision()))}; }
CNum operator-(const CNum& a, const Real& b) { return {a.re_ - b, a.im_.with_precision(std::max(a.precision(), b.precision()))}; }
CNum operator+(const CNum& a, long b) { return {a.re_ + b, a.im_}; }
CNum operator-(const CNum& a, long b) { return {a.re_ - b, a.im_}; }
CNum operator*(const CNum& a, long b) { return {a.re_ * b, a.im_ * b}; }
CNum operator/(const CNum& a, long b) { return {a.re_ / b, a.im_ / b}; }
CNum operator-(long a, const CNum& b) { return {a - b.re_, -b.im_}; }

std::string CNum::to_string(int digits) const {
  std::string im = im_.to_string(digits);
  if (!im.empty() && im[0] != '-') im = "+" + im;
  return re_.to_string(digits) + im + "i";
}

CNum conj(const CNum& z) { return {z.re(), -z.im()}; }
Real abs(const CNum& z) { return hypot(z.re(), z.im()); }
Real arg(const CNum& z) { return atan2(z.im(), z.re()); }

CNum exp(const CNum& z) {
  const Real m = exp(z.re());
  Real s(z.precision()), c(z.precision());
  mpfr_sin_cos(s.get(), c.get(), z.im().get(), MPFR_RNDN);
  return {m * c, m * s};
}

CNum log(const CNum& z) { return {log(abs(z)), arg(z)}; }

CNum sqrt(const CNum& z) {
  if (z.is_zero()) return z;
  const Real r = abs(z);
  // sqrt((r + |x|) / 2) is cancellation-free; recover the other part from it.
  const Real t = sqrt(ldexp(r + abs(z.re()), -1));
  if (z.re().sign() >= 0) return {t, z.im() / ldexp(t, 1)};
  const Real u = z.im().sign() >= 0 ? t : -t;
  return {abs(z.im()) / ldexp(t, 1), u};
}

CNum sin(const CNum& z) {
  // sin(x+iy) = sin x cosh y + i cos x sinh y
  const Precision p = z.precision();
  Real s(p), c(p), sh(p), ch(p);
  mpfr_sin_cos(s.get(), c.get(), z.re().get(), MPFR_RNDN);
  mpfr_sinh_cosh(sh.get(), ch.get(), z.im().get(), MPFR_RNDN);
  return {s * ch, c * sh};
}

CNum cos(const CNum& z) {
  const Precision p = z.precision();
  Real s(p), c(p), sh(p), ch(p);
  mpfr_sin_cos(s.get(), c.get(), z.re().get(), MPFR_RNDN);
  mpfr_sinh_cosh(sh.get(), ch.get(), z.im().get(), MPFR_RNDN);
  return {c * ch, -(s * sh)};
}

CNum pow(const CNum& z, const CNum& w) {
  if (z.is_zero()) {
    if (w.re().sign() > 0) return CNum(std::max(z.precision(), w.precision()));
    throw DomainError("pow: zero base with non-positive exponent");
  }
  return exp(w * log(z));
}

CNum pow(const Real& x, const CNum& w) {
  if (x.sign() <= 0) throw DomainError("pow: real base must be positive");
  return exp(w * log(x));
}

CNum times_i(const CNum& z) { return {-z.im(), z.re()}; }

}  // namespace fibzeta
