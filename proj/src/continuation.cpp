#include "fibzeta/continuation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "fibzeta/errors.hpp"
#include "fibzeta/special.hpp"

namespace fibzeta::cont {

using qfield::FieldContext;
using special::gamma;
using special::rgamma;

namespace {

constexpr Precision kWorkGuard = 32;

Precision working_precision(const FieldContext& ctx, const CNum& s) {
  return std::max(ctx.precision_bits, s.precision()) + kWorkGuard;
}

void require_away_from_poles(const FieldContext& ctx, const CNum& s) {
  const NearestPole np = nearest_pole(ctx, s);
  if (np.distance < near_pole_threshold(ctx)) {
    std::ostringstream msg;
    msg << "near pole (k=" << np.pole.k << ",m=" << np.pole.m << "), distance " << np.distance;
    throw NearPoleError(msg.str(), np.pole.k, np.pole.m);
  }
}

double log_abs(const CNum& z) {
  const Real a = abs(z);
  if (a.is_zero()) return -std::numeric_limits<double>::infinity();
  return log(a).to_double();
}

// q^(s/2)
CNum q_power_half(const FieldContext& ctx, const CNum& s) {
  return exp(s * ldexp(log(Real(ctx.q, s.precision())), -1));
}

// Gamma(a + i t) Gamma(a - i t)
CNum gamma_pair(const CNum& a, const Real& t) {
  const CNum it(Real(a.precision()), t);
  return gamma(a + it) * gamma(a - it);
}

struct OddSum {
  CNum sum;
  long terms;
  double tail;
};

// sum_{m in Z} (-1)^m Gamma(a + i t_m) Gamma(a - i t_m), omitting |m| = skip
// when skip >= 0. Stops once the estimated remainder drops below abs_tol.
OddSum odd_spectral_sum(const CNum& a, const Real& c, double abs_tol, long m_max, long skip) {
  const Precision wp = a.precision();
  const double alpha = a.re().to_double();
  const double beta = a.im().to_double();
  const double c_d = c.to_double();
  const double t_safe = 2.0 * (std::fabs(alpha) + std::fabs(beta) + 1.0);

  CNum sum(wp);
  if (skip != 0) sum = gamma_pair(a, Real(wp));
  long terms = 1;
  for (long m = 1;; ++m) {
    if (m > m_max) throw NoConvergence("spectral series: M cap reached before tolerance");
    const Real t = c * m;
    if (m == skip) continue;
    const CNum term = gamma_pair(a, t);
    const CNum twice(ldexp(term.re(), 1), ldexp(term.im(), 1));
    sum = (m % 2 == 0) ? sum + twice : sum - twice;
    ++terms;
    // |Gamma(a+it) Gamma(a-it)| ~ 2 pi t^(2 alpha - 1) e^(-pi t) once t >> |a|.
    if (c_d * m > t_safe) {
      const double r = std::exp(-M_PI * c_d) * std::pow((m + 1.0) / m, std::max(0.0, 2.0 * alpha - 1.0));
      const double tail = 4.0 * std::exp(log_abs(term)) * r / (1.0 - r);
      if (tail < abs_tol) return {sum, terms, tail};
    }
  }
}

// (s - s0) Gamma(z) where z + k = (s - s0)/2, via the recurrence.
CNum scaled_singular_gamma(const CNum& z, long k) {
  CNum den(Real(1L, z.precision()));
  for (long j = 0; j < k; ++j) den *= z + j;
  return gamma(z + (k + 1)) * 2L / den;
}

// Paired even-spectral summands beyond |m| = M:
//   Gamma(a-it)/Gamma(1-a-it) + Gamma(a+it)/Gamma(1-a+it) = 2 sin(pi a) g(t),
//   g(t) = Gamma(a+it) Gamma(a-it) / (Gamma(1/2+it) Gamma(1/2-it))
//        ~ t^(2a-1) exp(sum_j c_j t^-2j),  c_j = 2 (-1)^(j+1) B_{2j+1}(a) / (2j (2j+1)),
// from the Stirling expansion of each log Gamma. Writing the exponential as
// sum_j d_j t^-2j, the tail of sum_m g(c m) is sum_j d_j c^(2a-1-2j) zeta(1-2a+2j, M+1).
struct EvenTail {
  CNum sum;  // of g(c m), m > M
  long terms;
  double error;
};

EvenTail even_asymptotic_tail(const CNum& a, const Real& c, long M, double abs_tol) {
  const Precision wp = a.precision();
  const Precision cp = wp + 32;
  const CNum ac = a.with_precision(cp);
  const Real log_c = log(c.with_precision(cp));

  std::vector<CNum> coef{CNum(cp)};
  std::vector<CNum> d{CNum(Real(1L, cp))};
  CNum total(wp);
  double prev = std::numeric_limits<double>::infinity();
  constexpr long kMaxTerms = 400;
  for (long j = 0; j <= kMaxTerms; ++j) {
    if (j > 0) {
      const unsigned n = static_cast<unsigned>(2 * j + 1);
      CNum cj = special::bernoulli_poly(n, ac) * 2L / (2 * j * (2 * j + 1));
      coef.push_back(j % 2 == 1 ? cj : -cj);
      CNum dj(cp);
      for (long k = 1; k <= j; ++k) dj += coef[k] * d[j - k] * k;
      d.push_back(dj / j);
    }
    const CNum expo = ac * 2L - (1 + 2 * j);  // 2a - 1 - 2j
    const CNum term = d[j] * exp(expo * log_c) * special::hurwitz_zeta(-expo.with_precision(wp), M + 1);
    const double mag = std::exp(log_abs(term));
    if (mag > prev) return {total, j, prev};
    total += term.with_precision(wp);
    if (mag < abs_tol) return {total, j + 1, mag};
    prev = mag;
  }
  throw NoConvergence("even spectral tail: asymptotic expansion did not reach tolerance");
}

EvalResult finish(CNum value, Method method, Parity parity, long terms, double tail, const FieldContext& ctx,
                  const CNum& s) {
  EvalResult r{value.with_precision(ctx.precision_bits), method, parity, terms, tail, 0.0};
  r.nearest_pole_distance = nearest_pole(ctx, s).distance;
  return r;
}

EvalResult spectral_odd(const FieldContext& ctx, const CNum& s, double tol, long m_max) {
  const Precision wp = working_precision(ctx, s);
  const CNum sw = s.with_precision(wp);
  const Real L = ctx.log_eps_at(wp);
  const Real c = pi(wp) / ldexp(L, 1);
  const CNum pref = q_power_half(ctx, sw) * rgamma(sw) / ldexp(L, 3);
  const double pref_abs = std::max(std::exp(log_abs(pref)), 1e-300);
  const CNum a = sw / 2L;
  const OddSum os = odd_spectral_sum(a, c, tol / pref_abs, m_max, -1);
  return finish(pref * os.sum, Method::spectral, Parity::odd, os.terms, os.tail * pref_abs, ctx, s);
}

EvalResult spectral_even(const FieldContext& ctx, const CNum& s, double tol, long m_max) {
  if (!(s.re() < 0.0)) throw DomainError("even spectral formula requires Re s < 0");
  const Precision wp = working_precision(ctx, s);
  const CNum sw = s.with_precision(wp);
  const Real L = ctx.log_eps_at(wp);
  const Real c = pi(wp) / ldexp(L, 1);
  const CNum a = sw / 2L;
  const CNum one_minus_a = 1L - a;
  const CNum pref = q_power_half(ctx, sw) * gamma(1L - sw) / ldexp(L, 2);
  const CNum two_sin = sin(a * pi(wp)) * 2L;

  const double pref_abs = std::max(std::exp(log_abs(pref)), 1e-300);
  const double inner_tol = tol / (4.0 * pref_abs * std::max(std::exp(log_abs(two_sin)), 1e-300));
  const double beta = std::fabs(a.im().to_double());
  const double t_min = (std::log(1.0 / inner_tol) + 30.0) / M_PI + 2.0 * beta;
  const long M = static_cast<long>(std::ceil(t_min / c.to_double()));
  if (M > m_max) throw NoConvergence("even spectral series: required M exceeds cap");

  CNum sum = gamma(a) * rgamma(one_minus_a);
  for (long m = 1; m <= M; ++m) {
    const CNum it(Real(wp), c * m);
    sum += gamma(a - it) * rgamma(one_minus_a - it) + gamma(a + it) * rgamma(one_minus_a + it);
  }
  const EvenTail tail = even_asymptotic_tail(a, c, M, inner_tol);
  sum += two_sin * tail.sum;
  const double bound = pref_abs * std::exp(log_abs(two_sin)) * tail.error;
  return finish(pref * sum, Method::spectral, Parity::even, 2 * M + 1 + tail.terms, bound, ctx, s);
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::direct:
      return "direct";
    case Method::binomial:
      return "binomial";
    case Method::spectral:
      return "spectral";
  }
  return "?";
}

Method parse_method(const std::string& text) {
  if (text == "direct") return Method::direct;
  if (text == "binomial") return Method::binomial;
  if (text == "spectral") return Method::spectral;
  throw DomainError("unknown method '" + text + "'");
}

double near_pole_threshold(const FieldContext& ctx) {
  return std::ldexp(1.0, -static_cast<int>(ctx.precision_bits / 4));
}

PoleSpec make_pole(const FieldContext& ctx, long k, long m) {
  if (k < 0) throw DomainError("pole index k must be non-negative");
  const Precision p = ctx.precision_bits + kWorkGuard;
  const Real L = ctx.log_eps_at(p);
  return {k, m, CNum(Real(-2 * k, p), pi(p) * m / L)};
}

NearestPole nearest_pole(const FieldContext& ctx, const CNum& s) {
  const Precision p = working_precision(ctx, s);
  const Real L = ctx.log_eps_at(p);
  const long k = std::max(0L, std::lround(-s.re().to_double() / 2.0));
  const long m = std::lround((s.im() * L / pi(p)).to_double());
  PoleSpec pole = make_pole(ctx, k, m);
  const double dist = abs(s.with_precision(p) - pole.location.with_precision(p)).to_double();
  return {std::move(pole), dist};
}

double direct_tail_bound(const FieldContext& ctx, double sigma, Parity parity, long n_terms) {
  const double L = ctx.log_eps.to_double();
  const double half_log_q = 0.5 * std::log(static_cast<double>(ctx.q));
  // F_D(2n-1) >= eps^(2n-1)/sqrt q and F_D(2n) >= eps^(2n) (1 - eps^-4)/sqrt q.
  const double log_c = parity == Parity::odd ? half_log_q : half_log_q - std::log1p(-std::exp(-4.0 * L));
  const double next_index = parity == Parity::odd ? 2.0 * n_terms + 1.0 : 2.0 * n_terms + 2.0;
  const double log_bound = sigma * (log_c - next_index * L) - std::log(-std::expm1(-2.0 * sigma * L));
  return std::exp(log_bound);
}

EvalResult z_direct(const FieldContext& ctx, const CNum& s, Parity parity, double tol, long n_max) {
  if (!(s.re() > 0.0)) throw DomainError("direct series requires Re s > 0");
  const Precision wp = working_precision(ctx, s);
  const CNum minus_s = -s.with_precision(wp);
  const double sigma = s.re().to_double();
  const mpz_class trace1 = ctx.eps.trace();

  // F_D(0) = 0, F_D(1) = y(eps); walk the recurrence two indices at a time.
  mpz_class prev = 0;
  mpz_class cur = ctx.eps.y();
  auto advance = [&] {
    mpz_class next = trace1 * cur + prev;
    prev = std::move(cur);
    cur = std::move(next);
  };
  if (parity == Parity::even) advance();

  CNum sum(wp);
  for (long n = 1;; ++n) {
    sum += exp(minus_s * log(Real(cur, wp)));
    const double bound = direct_tail_bound(ctx, sigma, parity, n);
    if (bound < tol) return finish(sum, Method::direct, parity, n, bound, ctx, s);
    if (n >= n_max) throw NoConvergence("direct series: term cap reached before tolerance");
    advance();
    advance();
  }
}

EvalResult z_binomial(const FieldContext& ctx, const CNum& s, Parity parity, double tol, long k_max) {
  require_away_from_poles(ctx, s);
  const Precision wp = working_precision(ctx, s);
  const CNum sw = s.with_precision(wp);
  const Real L = ctx.log_eps_at(wp);
  const CNum pref = q_power_half(ctx, sw);
  const double L_d = L.to_double();
  const double sigma = s.re().to_double();
  const double s_minus_1 = abs(sw - 1L).to_double();
  const double log_pref = 0.5 * sigma * std::log(static_cast<double>(ctx.q));
  const bool odd = parity == Parity::odd;

  CNum coeff(Real(1L, wp));  // C(s+k-1, k)
  CNum sum(wp);
  for (long k = 0;; ++k) {
    const CNum w = sw + 2 * k;
    const CNum den = odd ? exp(w * L) - exp(-(w * L)) : exp(w * ldexp(L, 1)) - 1L;
    const CNum term = coeff / den;
    sum = (odd && k % 2 == 1) ? sum - term : sum + term;

    // Remainder after term k: |C(s+k+j-1, k+j)| <= |C(s+k-1,k)| rho^j with
    // rho = 1 + |s-1|/(k+1), and the denominators grow by eps^2 (odd) or
    // eps^4 (even) per step.
    const double sk = sigma + 2.0 * k;
    if (coeff.is_zero()) return finish(pref * sum, Method::binomial, parity, k + 1, 0.0, ctx, s);
    if (sk >= 1.0) {
      const double rho = 1.0 + s_minus_1 / (k + 1.0);
      const double x = rho * std::exp((odd ? -2.0 : -4.0) * L_d);
      if (x < 1.0) {
        const double lb = log_abs(coeff) - (odd ? 1.0 : 2.0) * sk * L_d - std::log(-std::expm1(-2.0 * sk * L_d)) +
                          std::log(x / (1.0 - x)) + log_pref;
        const double bound = std::exp(lb);
        if (bound < tol) return finish(pref * sum, Method::binomial, parity, k + 1, bound, ctx, s);
      }
    }
    if (k >= k_max) throw NoConvergence("binomial expansion: K cap reached before tolerance");
    coeff = coeff * (sw + k) / (k + 1);
  }
}

EvalResult z_spectral(const FieldContext& ctx, const CNum& s, Parity parity, double tol, long m_max) {
  if (parity == Parity::even && !(s.re() < 0.0)) throw DomainError("even spectral formula requires Re s < 0");
  require_away_from_poles(ctx, s);
  return parity == Parity::odd ? spectral_odd(ctx, s, tol, m_max) : spectral_even(ctx, s, tol, m_max);
}

EvalResult evaluate(const FieldContext& ctx, const CNum& s, Parity parity, Method method, double tol) {
  switch (method) {
    case Method::direct:
      return z_direct(ctx, s, parity, tol);
    case Method::binomial:
      return z_binomial(ctx, s, parity, tol);
    case Method::spectral:
      return z_spectral(ctx, s, parity, tol);
  }
  throw DomainError("unknown method");
}

std::vector<PoleSpec> pole_grid(const FieldContext& ctx, const Rect& rect) {
  std::vector<PoleSpec> out;
  if (!(rect.re_lo <= rect.re_hi) || !(rect.im_lo <= rect.im_hi)) return out;
  const double L = ctx.log_eps.to_double();
  const long k_lo = std::max(0L, static_cast<long>(std::ceil(-rect.re_hi / 2.0)));
  const long k_hi = static_cast<long>(std::floor(-rect.re_lo / 2.0));
  const long m_lo = static_cast<long>(std::ceil(rect.im_lo * L / M_PI));
  const long m_hi = static_cast<long>(std::floor(rect.im_hi * L / M_PI));
  for (long k = k_lo; k <= k_hi; ++k)
    for (long m = m_lo; m <= m_hi; ++m) out.push_back(make_pole(ctx, k, m));
  return out;
}

CNum odd_times_distance(const FieldContext& ctx, const CNum& s, const PoleSpec& pole) {
  const Precision wp = working_precision(ctx, s);
  const CNum sw = s.with_precision(wp);
  const Real L = ctx.log_eps_at(wp);
  const Real c = pi(wp) / ldexp(L, 1);
  const CNum a = sw / 2L;
  const CNum delta = sw - pole.location.with_precision(wp);
  const CNum pref = q_power_half(ctx, sw) / ldexp(L, 3);
  const double abs_tol = std::ldexp(1.0, -static_cast<int>(ctx.precision_bits + 8));
  const long mu = std::labs(pole.m);
  const OddSum rest = odd_spectral_sum(a, c, abs_tol, 100'000, mu);

  if (pole.m == 0) {
    // (s-s0) Gamma(s/2)^2 / Gamma(s) = [(s-s0) Gamma(s/2)]^2 * 1/((s-s0) Gamma(s)),
    // and (s+2k) Gamma(s) = Gamma(s+2k+1) / prod_{j<2k} (s+j).
    const CNum g = scaled_singular_gamma(a, pole.k);
    CNum prod(Real(1L, wp));
    for (long j = 0; j < 2 * pole.k; ++j) prod *= sw + j;
    const CNum inv_scaled_gamma_s = prod * rgamma(sw + (2 * pole.k + 1));
    return pref * (g * g * inv_scaled_gamma_s + delta * rgamma(sw) * rest.sum);
  }

  const CNum it(Real(wp), c * mu);
  const CNum singular_arg = pole.m > 0 ? a - it : a + it;
  const CNum other_arg = pole.m > 0 ? a + it : a - it;
  CNum singular = gamma(other_arg) * scaled_singular_gamma(singular_arg, pole.k) * 2L;
  if (mu % 2 == 1) singular = -singular;
  return pref * rgamma(sw) * (delta * rest.sum + singular);
}

CNum residue_at(const FieldContext& ctx, const PoleSpec& pole, Parity parity) {
  if (parity != Parity::odd) throw DomainError("residues are available for Z_odd only");
  const Precision wp = ctx.precision_bits + kWorkGuard;
  const double L = ctx.log_eps.to_double();
  const Real r0(0.25 * std::min(2.0, M_PI / L), wp);
  const CNum s0 = pole.location.with_precision(wp);

  // g(r) = mean over s0 + r{1, i, -1, -i} of (s - s0) Z(s) = R + a_4 r^4 + a_8 r^8 + ...
  constexpr int kDepth = 4;
  std::vector<std::vector<CNum>> table(kDepth + 1);
  for (int j = 0; j <= kDepth; ++j) {
    const Real r = ldexp(r0, -j);
    const Real zero(wp);
    CNum g = odd_times_distance(ctx, s0 + CNum(r, zero), pole) + odd_times_distance(ctx, s0 + CNum(zero, r), pole) +
             odd_times_distance(ctx, s0 - CNum(r, zero), pole) + odd_times_distance(ctx, s0 - CNum(zero, r), pole);
    table[j].push_back(g / 4L);
    for (int l = 1; l <= j; ++l) {
      const long f = 1L << (4 * l);
      table[j].push_back((table[j][l - 1] * f - table[j - 1][l - 1]) / (f - 1));
    }
  }
  return table[kDepth][kDepth].with_precision(ctx.precision_bits);
}

CNum residue_contour(const FieldContext& ctx, const PoleSpec& pole, int points) {
  const Precision wp = ctx.precision_bits + kWorkGuard;
  const double L = ctx.log_eps.to_double();
  const Real rho(0.5 * std::min(2.0, M_PI / L), wp);
  const CNum s0 = pole.location.with_precision(wp);
  const double tol = std::ldexp(1.0, -static_cast<int>(ctx.precision_bits));
  const Real two_pi = ldexp(pi(wp), 1);
  CNum acc(wp);
  for (int j = 0; j < points; ++j) {
    const CNum u = exp(CNum(Real(wp), two_pi * j / points));
    const CNum offset = u * rho;
    acc += z_spectral(ctx, s0 + offset, Parity::odd, tol).value.with_precision(wp) * offset;
  }
  return (acc / static_cast<long>(points)).with_precision(ctx.precision_bits);
}

namespace {

CrossCheckEntry check_point(const FieldContext& ctx, const CNum& s, double tol) {
  CrossCheckEntry e{s, false, {}, {}};
  const double inner = tol / 10.0;
  const bool right = s.re() > 0.0;
  const bool left_open = s.re() < 0.0;
  try {
    auto add = [&](Parity par, Method ma, const EvalResult& ra, Method mb, const EvalResult& rb) {
      const double d = abs(ra.value - rb.value).to_double();
      e.pairs.push_back({par, ma, mb, d, d < tol});
    };
    for (Parity par : {Parity::odd, Parity::even}) {
      const EvalResult bin = z_binomial(ctx, s, par, inner);
      if (right) add(par, Method::direct, z_direct(ctx, s, par, inner), Method::binomial, bin);
      if (par == Parity::odd || left_open) add(par, Method::spectral, z_spectral(ctx, s, par, inner), Method::binomial, bin);
    }
  } catch (const NearPoleError& err) {
    e.skipped = true;
    e.reason = err.what();
    e.pairs.clear();
  }
  return e;
}

}  // namespace

CrossCheckReport cross_check(const FieldContext& ctx, const std::vector<CNum>& grid, double tol) {
  CrossCheckReport report;
  report.tol = tol;
  report.entries.resize(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < grid.size();) {
      try {
        report.entries[i] = check_point(ctx, grid[i], tol);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n_threads =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), static_cast<unsigned>(grid.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);

  for (const auto& e : report.entries) {
    if (e.skipped) {
      ++report.skipped;
      continue;
    }
    for (const auto& p : e.pairs) {
      double& slot = e.s.re() > 0.0 ? report.max_delta_right : report.max_delta_left;
      slot = std::max(slot, p.delta);
      report.all_pass = report.all_pass && p.pass;
    }
  }
  return report;
}

nlohmann::json to_json_record(const FieldContext& ctx, const CNum& s, const EvalResult& r) {
  return {{"D", ctx.D},
          {"s_re", s.re().to_string()},
          {"s_im", s.im().to_string()},
          {"parity", seq::to_string(r.parity)},
          {"method", to_string(r.method)},
          {"value_re", r.value.re().to_string()},
          {"value_im", r.value.im().to_string()},
          {"tail_bound", r.tail_bound},
          {"terms_used", r.terms_used}};
}

void to_json(nlohmann::json& j, const PoleSpec& p) {
  j = {{"k", p.k}, {"m", p.m}, {"re", p.location.re().to_string()}, {"im", p.location.im().to_string()}};
}

void to_json(nlohmann::json& j, const CrossCheckReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : e.pairs)
      pairs.push_back({{"parity", seq::to_string(p.parity)},
                       {"a", to_string(p.a)},
                       {"b", to_string(p.b)},
                       {"delta", p.delta},
                       {"pass", p.pass}});
    nlohmann::json entry = {{"s_re", e.s.re().to_string(20)}, {"s_im", e.s.im().to_string(20)}, {"pairs", pairs}};
    if (e.skipped) entry["skipped"] = e.reason;
    entries.push_back(entry);
  }
  j = {{"tol", r.tol},
       {"max_delta_right", r.max_delta_right},
       {"max_delta_left", r.max_delta_left},
       {"skipped", r.skipped},
       {"all_pass", r.all_pass},
       {"entries", entries}};
}

}  // namespace fibzeta::cont
