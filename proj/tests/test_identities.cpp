#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fibzeta/errors.hpp"
#include "fibzeta/identities.hpp"

using namespace fibzeta;
using namespace fibzeta::ident;

namespace {

const double k2m100 = std::ldexp(1.0, -100);

double real_diff(const Real& a, double num, double den) {
  return abs(a - Real(num, 128) / Real(den, 128)).to_double();
}

}  // namespace

TEST_CASE("check_gram examples") {
  CHECK(check_gram(0.0, 1).pass);
  CHECK(check_gram(1.37, -1).pass);
  CHECK(check_gram(2.0, 1).pass);
  CHECK(check_gram(1.37, -1).max_residual < k2m100);
  CHECK_THROWS_AS(check_gram(1.0, 0), DomainError);
}

TEST_CASE("the Gram matrix fails for a wrong T2*") {
  // A perturbed adjoint must not satisfy T2^t G = G T2*.
  const Real lam(0.8, 128);
  Mat3 Ts = t2_adjoint_matrix(lam, 1);
  Ts[2][2] = Ts[2][2] + CNum(Real(1e-6, 128));
  const Mat3 G = gram_matrix(lam, 1, Real(1L, 128));
  CHECK(max_abs_diff(transpose(t2_matrix(lam, 1)) * G, G * Ts).to_double() > 1e-8);
}

TEST_CASE("matrix helpers") {
  const Mat3 W = fricke_matrix(128);
  const Mat3 I = W * inverse(W);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(abs(I[i][j] - CNum(Real(i == j ? 1L : 0L, 128))).to_double() < 1e-37);
  // W is an involution up to the 1/2, 2 scaling: W^2 = I
  const Mat3 W2 = W * W;
  CHECK(abs(W2[0][0] - CNum(Real(1L, 128))).to_double() < 1e-37);
  Mat3 singular = W;
  singular[1][1] = CNum(128);
  CHECK_THROWS_AS(inverse(singular), DomainError);
}

TEST_CASE("check_orthogonal_basis examples") {
  const auto r0 = basis_norm_ratios(Real(0.0, 128), 1, Real(1L, 128));
  CHECK(real_diff(r0[0], 1, 1) < 1e-37);
  CHECK(real_diff(r0[1], 1, 2) < 1e-37);
  CHECK(real_diff(r0[2], 3, 16) < 1e-37);
  CHECK(check_orthogonal_basis(0.0, 1).pass);
  CHECK(check_orthogonal_basis(1.0, -1).pass);
  CHECK(check_orthogonal_basis(1.0, -1).max_residual < k2m100);

  const auto r = basis_norm_ratios(Real(0.5, 128), 1, Real(1L, 128));
  CHECK(abs(r[1] - (Real(1L, 128) / 2L - Real(0.25, 128) / 9L)).to_double() < 1e-37);
}

TEST_CASE("norm ratios do not depend on <mu, mu>") {
  for (double scale : {1e-5, 0.37, 1.0, 12.5, 3e7}) {
    CHECK(check_orthogonal_basis(1.9, -1, 128, scale).pass);
    const auto a = basis_norm_ratios(Real(1.9, 128), -1, Real(scale, 128));
    const auto b = basis_norm_ratios(Real(1.9, 128), -1, Real(1L, 128));
    for (int k = 0; k < 3; ++k) CHECK(abs(a[k] - b[k]).to_double() < 1e-35);
  }
}

TEST_CASE("check_assembly_scalar examples") {
  CHECK(check_assembly_scalar(0.0, 1).pass);
  CHECK(check_assembly_scalar(0.0, -1).pass);
  const auto r = check_assembly_scalar(1.9, 1);
  CHECK(r.pass);
  CHECK(r.max_residual < k2m100);
}

TEST_CASE("check_gamma_identities") {
  CHECK(check_gamma_identities(CNum(0.5, 0.0, 128), 0.0).pass);
  CHECK(check_gamma_identities(CNum(0.5, 0.0, 128), 1.7).pass);
  const auto r = check_gamma_identities(CNum(0.8, 1.1, 128), 0.6);
  CHECK(r.pass);
  CHECK(r.max_residual < k2m100);
  CHECK_THROWS_AS(check_gamma_identities(CNum(0.0, 0.0, 128), 0.3), NearPoleError);
  CHECK_THROWS_AS(check_gamma_identities(CNum(1.0, 0.0, 128), 0.3), NearPoleError);  // Gamma(1/2 - s/2), Gamma(1-s)
  CHECK_THROWS_AS(check_gamma_identities(CNum(-4.0, 0.0, 128), 0.3), NearPoleError);
}

TEST_CASE("check_duplication_assembly") {
  const auto c5 = qfield::make_context(5);
  const auto c13 = qfield::make_context(13);
  CHECK(check_duplication_assembly(CNum(1.0, 0.0, 128), c5).pass);
  CHECK(check_duplication_assembly(CNum(0.5, 0.0, 128), c5).pass);
  const auto r = check_duplication_assembly(CNum(0.7, 2.0, 128), c13);
  CHECK(r.pass);
  CHECK(r.max_residual < k2m100);
  CHECK_THROWS_AS(check_duplication_assembly(CNum(0.0, 0.0, 128), c5), NearPoleError);
  CHECK_THROWS_AS(check_duplication_assembly(CNum(-0.5, 0.0, 128), c5), NearPoleError);
}

TEST_CASE("check_eigenvalue_sign") {
  const auto c2 = qfield::make_context(2);
  const auto c5 = qfield::make_context(5);
  CHECK(check_eigenvalue_sign(0, c5).pass);
  const auto r = check_eigenvalue_sign(1, c5);
  CHECK(r.pass);
  CHECK(r.max_residual < std::ldexp(1.0, -120));
  CHECK(check_eigenvalue_sign(7, c2).pass);
  CHECK(check_eigenvalue_sign(-12, c2).pass);
}

TEST_CASE("merge keeps the worst sample") {
  IdentityReport a;
  a.merge(check_assembly_scalar(0.5, 1));
  IdentityReport bad;
  bad.name = "check_assembly_scalar";
  bad.samples = 1;
  bad.max_residual = 1.0;
  bad.tolerance = 1e-30;
  bad.worst_sample = "forced";
  bad.pass = false;
  a.merge(bad);
  CHECK(a.samples == 2);
  CHECK_FALSE(a.pass);
  CHECK(a.worst_sample == "forced");
}

TEST_CASE("suite: 100 samples each, residual below 2^-100, deterministic") {
  SuiteConfig cfg;
  const auto reports = run_identity_suite(cfg);
  REQUIRE(reports.size() == 6);
  const char* names[] = {"check_gram",          "check_orthogonal_basis",     "check_assembly_scalar",
                         "check_gamma_identities", "check_duplication_assembly", "check_eigenvalue_sign"};
  for (std::size_t i = 0; i < reports.size(); ++i) {
    CHECK(reports[i].name == names[i]);
    CHECK(reports[i].samples == 100);
    CHECK_MESSAGE(reports[i].pass, reports[i].name << " worst " << reports[i].worst_sample);
    CHECK(reports[i].max_residual < k2m100);
  }
  const auto again = run_identity_suite(cfg);
  for (std::size_t i = 0; i < reports.size(); ++i) CHECK(again[i].worst_sample == reports[i].worst_sample);

  const nlohmann::json j = reports.front();
  CHECK(j["name"] == "check_gram");
  CHECK(j["pass"] == true);
}
