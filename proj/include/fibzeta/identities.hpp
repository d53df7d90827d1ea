#pragma once

// Numerical checks of the finite identities behind the spectral formulas:
// the T_2 / Fricke / Gram linear algebra on U_j = <mu, B_2 mu, B_4 mu>, the
// scalar collapse used when assembling the dihedral contribution, and the
// Gamma-function rewrites. lambda = lambda_j(2) is a free real parameter,
// chi = chi_D(2) is +-1.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "fibzeta/qfield.hpp"
#include "fibzeta/real.hpp"

namespace fibzeta::ident {

using Mat3 = std::array<std::array<CNum, 3>, 3>;

Mat3 operator*(const Mat3& a, const Mat3& b);
Mat3 transpose(const Mat3& a);
Mat3 inverse(const Mat3& a);  // throws DomainError when singular
// max |a_ij - b_ij|
Real max_abs_diff(const Mat3& a, const Mat3& b);

// Matrices in the basis {mu, B_2 mu, B_4 mu}; the Gram matrix carries the
// factor <mu, mu> = mu_norm.
Mat3 fricke_matrix(Precision prec);
Mat3 t2_matrix(const Real& lambda, int chi);
Mat3 t2_adjoint_matrix(const Real& lambda, int chi);
Mat3 gram_matrix(const Real& lambda, int chi, const Real& mu_norm);

struct IdentityReport {
  std::string name;
  long samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::string worst_sample;  // parameters of the largest residual
  bool pass = true;          // max_residual < tolerance

  // Folds another report for the same identity into this one.
  void merge(const IdentityReport& other);
};

// T2^t G = G T2* and T2* = W T2 W^-1; tolerance 2^(-prec+16).
IdentityReport check_gram(double lambda, int chi, Precision prec = kDefaultPrecision);

// G-orthogonality of mu_1 = mu, mu_2 = B_2 mu - lambda/(2+chi) mu,
// mu_3 = B_4 mu - lambda/2 B_2 mu + chi/4 mu, and the norm ratios
// 1, 1/2 - lambda^2/(5+4chi), 3/16 - (2-chi) lambda^2 / (8(2+chi)).
IdentityReport check_orthogonal_basis(double lambda, int chi, Precision prec = kDefaultPrecision,
                                      double mu_norm = 1.0);

// The three norm ratios, computed from G (not from the closed forms).
std::array<Real, 3> basis_norm_ratios(const Real& lambda, int chi, const Real& mu_norm);

// lambda^2 - chi + (3 - (2-chi) lambda^2)/(2-chi) = 2.
IdentityReport check_assembly_scalar(double lambda, int chi, Precision prec = kDefaultPrecision);

// (a) Gamma(1/2 - s/2)/Gamma(s/2) = 2^s Gamma(1-s) sin(pi s/2) / sqrt(pi)
// (b) 2 sin(pi s/2) Gamma(s/2-it) Gamma(s/2+it) / (Gamma(1/2-it) Gamma(1/2+it))
//       = Gamma(s/2-it)/Gamma(1-s/2-it) + Gamma(s/2+it)/Gamma(1-s/2+it).
// Relative residuals; tolerance 2^(-prec+20). NearPoleError near a pole of
// any factor.
IdentityReport check_gamma_identities(const CNum& s, double t);

// (4 D pi)^s sqrt(pi) / (4 Gamma(s) (4 pi ell)^s Gamma(s+1/2)) = q^s / (8 Gamma(2s)).
IdentityReport check_duplication_assembly(const CNum& s, const qfield::FieldContext& ctx);

// |-eps/conj(eps)|^(i m pi / (2 log eps)) = eps^(i m pi / log eps) = (-1)^m.
IdentityReport check_eigenvalue_sign(long m, const qfield::FieldContext& ctx);

struct SuiteConfig {
  std::uint64_t seed = 20240611;
  long samples = 100;
  Precision precision = kDefaultPrecision;
  std::vector<long> fields{2, 5, 13, 29};
};

// Each identity over `samples` random parameter draws; one merged report
// per identity, in a fixed order.
std::vector<IdentityReport> run_identity_suite(const SuiteConfig& cfg);

void to_json(nlohmann::json& j, const IdentityReport& r);

}  // namespace fibzeta::ident
