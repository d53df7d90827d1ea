#pragma once

// Three independent evaluators of Z_D^odd(s) = sum F_D(2n-1)^-s and
// Z_D^even(s) = sum F_D(2n)^-s, the pole lattice s = -2k + pi i m / log eps,
// and residues of Z_D^odd.
//
// direct    partial sums of the defining series, Re s > 0 only.
// binomial  everywhere-convergent expansion obtained from the closed forms
//           F_D(2n-1) = (eps^(2n-1) + eps^-(2n-1)) / sqrt q and
//           F_D(2n)   = (eps^2n - eps^-2n) / sqrt q   (valid since N(eps) = -1):
//           expanding (1 +- eps^-2j)^-s binomially and summing the geometric
//           series over n gives
//             Z_odd(s)  = q^(s/2) sum_k (-1)^k C(s+k-1,k) / (eps^(s+2k) - eps^-(s+2k))
//             Z_even(s) = q^(s/2) sum_k C(s+k-1,k) / (eps^(2(s+2k)) - 1).
// spectral  the Gamma-product series over the dihedral spectral types
//           t_m = pi m / (2 log eps).

#include <string>
#include <vector>

#include "json.hpp"

#include "fibzeta/qfield.hpp"
#include "fibzeta/real.hpp"
#include "fibzeta/sequences.hpp"

namespace fibzeta::cont {

using seq::Parity;

enum class Method { direct, binomial, spectral };

const char* to_string(Method m);
Method parse_method(const std::string& text);

struct EvalResult {
  CNum value;
  Method method;
  Parity parity;
  long terms_used = 0;
  double tail_bound = 0.0;
  double nearest_pole_distance = 0.0;
};

struct PoleSpec {
  long k;  // >= 0
  long m;
  CNum location;  // -2k + pi i m / log eps
};

struct Rect {
  double re_lo, re_hi, im_lo, im_hi;
};

// Pole of the lattice closest to s, and its distance.
struct NearestPole {
  PoleSpec pole;
  double distance;
};
NearestPole nearest_pole(const qfield::FieldContext& ctx, const CNum& s);

// Evaluation points closer than 2^(-precision/4) to a pole are refused.
double near_pole_threshold(const qfield::FieldContext& ctx);

EvalResult z_direct(const qfield::FieldContext& ctx, const CNum& s, Parity parity, double tol,
                    long n_max = 10'000'000);

// Bound on sum_{n > n_terms} |F_D(2n-1 or 2n)^-s| for Re s = sigma > 0.
double direct_tail_bound(const qfield::FieldContext& ctx, double sigma, Parity parity, long n_terms);

EvalResult z_binomial(const qfield::FieldContext& ctx, const CNum& s, Parity parity, double tol,
                      long k_max = 100'000);

// Odd: valid on all of C away from poles. Even: Re s < 0 only; its terms
// decay like |m|^(Re s - 1), so the sum beyond |m| = M is taken from the
// large-t expansion of the paired summands and Hurwitz zeta values.
EvalResult z_spectral(const qfield::FieldContext& ctx, const CNum& s, Parity parity, double tol,
                      long m_max = 100'000);

EvalResult evaluate(const qfield::FieldContext& ctx, const CNum& s, Parity parity, Method method, double tol);

std::vector<PoleSpec> pole_grid(const qfield::FieldContext& ctx, const Rect& rect);

PoleSpec make_pole(const qfield::FieldContext& ctx, long k, long m);

// (s - s0) Z_odd(s) from the spectral series with the Gamma factor that is
// singular at s0 rewritten through the recurrence, so it stays finite at s0.
CNum odd_times_distance(const qfield::FieldContext& ctx, const CNum& s, const PoleSpec& pole);

// Richardson extrapolation (depth 4) of the mean of (s - s0) Z_odd(s) over
// four symmetric points on circles of shrinking radius.
CNum residue_at(const qfield::FieldContext& ctx, const PoleSpec& pole, Parity parity = Parity::odd);

// Trapezoidal contour integral (1 / 2 pi i) \oint Z_odd(s) ds around s0.
CNum residue_contour(const qfield::FieldContext& ctx, const PoleSpec& pole, int points = 64);

struct PairCheck {
  Parity parity;
  Method a;
  Method b;
  double delta;
  bool pass;
};

struct CrossCheckEntry {
  CNum s;
  bool skipped = false;
  std::string reason;
  std::vector<PairCheck> pairs;
};

struct CrossCheckReport {
  double tol = 0.0;
  std::vector<CrossCheckEntry> entries;
  double max_delta_right = 0.0;  // Re s > 0
  double max_delta_left = 0.0;   // Re s <= 0
  std::size_t skipped = 0;
  bool all_pass = true;
};

// Points are evaluated concurrently; entries keep grid order.
CrossCheckReport cross_check(const qfield::FieldContext& ctx, const std::vector<CNum>& grid, double tol);

nlohmann::json to_json_record(const qfield::FieldContext& ctx, const CNum& s, const EvalResult& r);
void to_json(nlohmann::json& j, const PoleSpec& p);
void to_json(nlohmann::json& j, const CrossCheckReport& r);

}  // namespace fibzeta::cont
