#include "fibzeta/identities.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "fibzeta/errors.hpp"
#include "fibzeta/special.hpp"

namespace fibzeta::ident {

namespace {

constexpr Precision kGuard = 32;

Mat3 zeros(Precision p) {
  Mat3 m;
  for (auto& row : m)
    for (auto& e : row) e = CNum(p);
  return m;
}

CNum cr(const Real& x) { return CNum(x); }

CNum cr(long x, Precision p) { return CNum(Real(x, p)); }

double rel_residual(const CNum& lhs, const CNum& rhs) {
  const Real scale = max(abs(lhs), abs(rhs));
  const Real diff = abs(lhs - rhs);
  if (diff.is_zero()) return 0.0;
  return (scale.is_zero() ? diff : diff / scale).to_double();
}

IdentityReport single(std::string name, double residual, double tol, std::string sample) {
  IdentityReport r;
  r.name = std::move(name);
  r.samples = 1;
  r.max_residual = residual;
  r.tolerance = tol;
  r.worst_sample = std::move(sample);
  r.pass = residual < tol;
  return r;
}

double tol_bits(Precision prec, long slack) { return std::ldexp(1.0, -static_cast<int>(prec) + static_cast<int>(slack)); }

void require_chi(int chi) {
  if (chi != 1 && chi != -1) throw DomainError("chi must be +1 or -1");
}

std::string describe(double lambda, int chi) {
  std::ostringstream os;
  os.precision(17);
  os << "lambda=" << lambda << " chi=" << chi;
  return os.str();
}

// Distance from z to the nearest non-positive integer (infinity when Re z is
// well to the right of 0).
void require_gamma_regular(const CNum& z, const char* what) {
  const double re = z.re().to_double();
  const double im = z.im().to_double();
  const double n = std::round(re);
  if (n > 0.0) return;
  const double dist = std::hypot(re - n, im);
  const double thr = std::ldexp(1.0, -static_cast<int>(z.precision() / 4));
  if (dist < thr) {
    std::ostringstream os;
    os << "near pole of " << what << " at " << n;
    throw NearPoleError(os.str(), static_cast<long>(-n), 0);
  }
}

}  // namespace

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 c = zeros(a[0][0].precision());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Mat3 transpose(const Mat3& a) {
  Mat3 t = a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = a[j][i];
  return t;
}

Mat3 inverse(const Mat3& a) {
  auto cof = [&](int i, int j) {
    const int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
    return a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0];
  };
  const CNum det = a[0][0] * cof(0, 0) + a[0][1] * cof(0, 1) + a[0][2] * cof(0, 2);
  if (det.is_zero()) throw DomainError("inverse: singular matrix");
  Mat3 inv = a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) inv[i][j] = cof(j, i) / det;
  return inv;
}

Real max_abs_diff(const Mat3& a, const Mat3& b) {
  Real m(a[0][0].precision());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m = max(m, abs(a[i][j] - b[i][j]));
  return m;
}

Mat3 fricke_matrix(Precision p) {
  Mat3 w = zeros(p);
  w[0][2] = CNum(ldexp(Real(1L, p), -1));
  w[1][1] = cr(1, p);
  w[2][0] = cr(2, p);
  return w;
}

Mat3 t2_matrix(const Real& lambda, int chi) {
  const Precision p = lambda.precision();
  Mat3 t = zeros(p);
  t[0][0] = cr(lambda);
  t[0][1] = cr(1, p);
  t[1][0] = cr(-chi, p);
  t[1][2] = cr(1, p);
  return t;
}

Mat3 t2_adjoint_matrix(const Real& lambda, int chi) {
  const Precision p = lambda.precision();
  Mat3 t = zeros(p);
  t[1][0] = cr(2, p);
  t[1][2] = CNum(Real(-chi, p) / 2L);
  t[2][1] = cr(2, p);
  t[2][2] = cr(lambda);
  return t;
}

Mat3 gram_matrix(const Real& lambda, int chi, const Real& mu_norm) {
  const Precision p = lambda.precision();
  const Real two_chi(2L + chi, p);
  const Real off1 = lambda * 4L / two_chi;
  const Real off2 = lambda * 2L / two_chi;
  const Real corner = lambda * lambda * 2L / two_chi - chi;
  const Real quarter = mu_norm / 4L;
  Mat3 g = zeros(p);
  g[0][0] = cr(Real(4L, p) * quarter);
  g[0][1] = g[1][0] = cr(off1 * quarter);
  g[0][2] = g[2][0] = cr(corner * quarter);
  g[1][1] = cr(Real(2L, p) * quarter);
  g[1][2] = g[2][1] = cr(off2 * quarter);
  g[2][2] = cr(quarter);
  return g;
}

void IdentityReport::merge(const IdentityReport& other) {
  if (samples == 0) {
    *this = other;
    return;
  }
  samples += other.samples;
  tolerance = std::max(tolerance, other.tolerance);
  if (other.max_residual > max_residual) {
    max_residual = other.max_residual;
    worst_sample = other.worst_sample;
  }
  pass = pass && other.pass;
}

IdentityReport check_gram(double lambda, int chi, Precision prec) {
  require_chi(chi);
  const Real lam(lambda, prec);
  const Mat3 T = t2_matrix(lam, chi);
  const Mat3 Ts = t2_adjoint_matrix(lam, chi);
  const Mat3 G = gram_matrix(lam, chi, Real(1L, prec));
  const Mat3 W = fricke_matrix(prec);
  const Real ra = max_abs_diff(transpose(T) * G, G * Ts);
  const Real rb = max_abs_diff(W * T * inverse(W), Ts);
  return single("check_gram", max(ra, rb).to_double(), tol_bits(prec, 16), describe(lambda, chi));
}

std::array<Real, 3> basis_norm_ratios(const Real& lambda, int chi, const Real& mu_norm) {
  const Precision p = lambda.precision();
  const Mat3 G = gram_matrix(lambda, chi, mu_norm);
  const std::array<std::array<Real, 3>, 3> v{{
      {Real(1L, p), Real(p), Real(p)},
      {-lambda / Real(2L + chi, p), Real(1L, p), Real(p)},
      {Real(chi, p) / 4L, -lambda / 2L, Real(1L, p)},
  }};
  std::array<Real, 3> out{Real(p), Real(p), Real(p)};
  for (int k = 0; k < 3; ++k) {
    Real acc(p);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) acc += v[k][i] * G[i][j].re() * v[k][j];
    out[k] = acc / mu_norm;
  }
  return out;
}

IdentityReport check_orthogonal_basis(double lambda, int chi, Precision prec, double mu_norm) {
  require_chi(chi);
  const Real lam(lambda, prec);
  const Real nu(mu_norm, prec);
  const Mat3 G = gram_matrix(lam, chi, nu);
  const std::array<std::array<Real, 3>, 3> v{{
      {Real(1L, prec), Real(prec), Real(prec)},
      {-lam / Real(2L + chi, prec), Real(1L, prec), Real(prec)},
      {Real(chi, prec) / 4L, -lam / 2L, Real(1L, prec)},
  }};
  Real residual(prec);
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      Real acc(prec);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) acc += v[a][i] * G[i][j].re() * v[b][j];
      residual = max(residual, abs(acc / nu));
    }
  const std::array<Real, 3> ratios = basis_norm_ratios(lam, chi, nu);
  const Real l2 = lam * lam;
  const std::array<Real, 3> expected{
      Real(1L, prec),
      Real(1L, prec) / 2L - l2 / Real(5L + 4L * chi, prec),
      Real(3L, prec) / 16L - l2 * Real(2L - chi, prec) / Real(8L * (2L + chi), prec),
  };
  for (int k = 0; k < 3; ++k) residual = max(residual, abs(ratios[k] - expected[k]));
  return single("check_orthogonal_basis", residual.to_double(), tol_bits(prec, 16), describe(lambda, chi));
}

IdentityReport check_assembly_scalar(double lambda, int chi, Precision prec) {
  require_chi(chi);
  const Real lam(lambda, prec);
  const Real two_minus_chi(2L - chi, prec);
  const Real l2 = lam * lam;
  const Real lhs = l2 - chi + (3L - two_minus_chi * l2) / two_minus_chi;
  const Real residual = abs(lhs - 2L);
  return single("check_assembly_scalar", residual.to_double(), tol_bits(prec, 16), describe(lambda, chi));
}

IdentityReport check_gamma_identities(const CNum& s_in, double t_in) {
  const Precision prec = s_in.precision();
  const Precision wp = prec + kGuard;
  const CNum s = s_in.with_precision(wp);
  const Real t(t_in, wp);
  const CNum half(ldexp(Real(1L, wp), -1), Real(wp));
  const CNum a = s / 2L;
  const CNum it(Real(wp), t);

  require_gamma_regular(half - a, "Gamma(1/2 - s/2)");
  require_gamma_regular(a, "Gamma(s/2)");
  require_gamma_regular(1L - s, "Gamma(1 - s)");
  require_gamma_regular(a - it, "Gamma(s/2 - it)");
  require_gamma_regular(a + it, "Gamma(s/2 + it)");

  using special::gamma;
  using special::rgamma;
  const Real pi_w = pi(wp);
  const CNum sin_half = sin(a * pi_w);

  // (a)
  const CNum lhs_a = gamma(half - a) * rgamma(a);
  const CNum rhs_a = exp(s * ln2(wp)) * gamma(1L - s) * sin_half / sqrt(pi_w);
  // (b)
  const CNum g_minus = gamma(a - it);
  const CNum g_plus = gamma(a + it);
  const CNum lhs_b = g_minus * g_plus * sin_half * 2L * rgamma(half - it) * rgamma(half + it);
  const CNum rhs_b = g_minus * rgamma(1L - a - it) + g_plus * rgamma(1L - a + it);

  const double residual = std::max(rel_residual(lhs_a, rhs_a), rel_residual(lhs_b, rhs_b));
  std::ostringstream os;
  os << "s=" << s_in.to_string(17) << " t=" << t_in;
  return single("check_gamma_identities", residual, tol_bits(prec, 20), os.str());
}

IdentityReport check_duplication_assembly(const CNum& s_in, const qfield::FieldContext& ctx) {
  const Precision prec = ctx.precision_bits;
  const Precision wp = prec + kGuard;
  const CNum s = s_in.with_precision(wp);
  require_gamma_regular(s, "Gamma(s)");
  require_gamma_regular(s + CNum(ldexp(Real(1L, wp), -1)), "Gamma(s + 1/2)");
  require_gamma_regular(s * 2L, "Gamma(2s)");

  using special::gamma;
  using special::rgamma;
  const Real pi_w = pi(wp);
  const CNum half(ldexp(Real(1L, wp), -1), Real(wp));
  const CNum lhs = pow(Real(4L * ctx.D, wp) * pi_w, s) * sqrt(pi_w) * rgamma(s) * rgamma(s + half) /
                   (pow(Real(4L * ctx.ell, wp) * pi_w, s) * 4L);
  const CNum rhs = pow(Real(ctx.q, wp), s) * rgamma(s * 2L) / 8L;
  std::ostringstream os;
  os << "D=" << ctx.D << " s=" << s_in.to_string(17);
  return single("check_duplication_assembly", rel_residual(lhs, rhs), tol_bits(prec, 20), os.str());
}

IdentityReport check_eigenvalue_sign(long m, const qfield::FieldContext& ctx) {
  const Precision prec = ctx.precision_bits;
  const Real eps = ctx.eps_at(prec);
  const Real eps_conj = ctx.eps.conjugate().to_real(prec);
  const Real L = log(eps);
  const Real ratio = abs(-eps / eps_conj);
  const Real pi_p = pi(prec);
  const CNum via_ratio = pow(ratio, CNum(Real(prec), pi_p * m / ldexp(L, 1)));
  const CNum via_eps = exp(CNum(Real(prec), pi_p * m / L) * L);
  const CNum expected(Real(m % 2 == 0 ? 1L : -1L, prec));
  const double residual = std::max(abs(via_ratio - expected).to_double(), abs(via_eps - expected).to_double());
  std::ostringstream os;
  os << "D=" << ctx.D << " m=" << m;
  // m pi carries a relative rounding of 2^-prec, amplified by |m|.
  const double tol = tol_bits(prec, 16) * std::max(1.0, std::fabs(static_cast<double>(m)));
  return single("check_eigenvalue_sign", residual, tol, os.str());
}

std::vector<IdentityReport> run_identity_suite(const SuiteConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> lam_dist(-3.0, 3.0);
  std::uniform_real_distribution<double> box(-3.0, 3.0);
  std::uniform_real_distribution<double> right(0.1, 3.0);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<long> m_dist(-60, 60);

  std::vector<qfield::FieldContext> ctxs;
  for (long D : cfg.fields) ctxs.push_back(qfield::make_context(D, cfg.precision));
  std::uniform_int_distribution<std::size_t> pick(0, ctxs.empty() ? 0 : ctxs.size() - 1);

  std::vector<IdentityReport> out(6);
  for (long i = 0; i < cfg.samples; ++i) {
    const double lam = lam_dist(rng);
    const int chi = coin(rng) ? 1 : -1;
    out[0].merge(check_gram(lam, chi, cfg.precision));
    out[1].merge(check_orthogonal_basis(lam, chi, cfg.precision));
    out[2].merge(check_assembly_scalar(lam, chi, cfg.precision));

    // Redraw until clear of every Gamma pole and of sin(pi s/2) = 0.
    for (;;) {
      const CNum s(box(rng), box(rng), cfg.precision);
      const double t = box(rng);
      const double re = s.re().to_double(), im = s.im().to_double();
      if (std::fabs(im) < 0.05 && std::fabs(re - std::round(re)) < 0.05) continue;
      try {
        out[3].merge(check_gamma_identities(s, t));
        break;
      } catch (const NearPoleError&) {
      }
    }
    if (!ctxs.empty()) {
      const auto& ctx = ctxs[pick(rng)];
      const CNum s(right(rng), box(rng), cfg.precision);
      out[4].merge(check_duplication_assembly(s, ctx));
      out[5].merge(check_eigenvalue_sign(m_dist(rng), ctxs[pick(rng)]));
    }
  }
  return out;
}

void to_json(nlohmann::json& j, const IdentityReport& r) {
  j = {{"name", r.name},
       {"samples", r.samples},
       {"max_residual", r.max_residual},
       {"tolerance", r.tolerance},
       {"worst_sample", r.worst_sample},
       {"pass", r.pass}};
}

}  // namespace fibzeta::ident
