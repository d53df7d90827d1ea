#include "fibzeta/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fibzeta/arith.hpp"
#include "fibzeta/continuation.hpp"
#include "fibzeta/errors.hpp"
#include "fibzeta/identities.hpp"
#include "fibzeta/qfield.hpp"
#include "fibzeta/sequences.hpp"

namespace fibzeta::cli {

using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kUnsupported = 2;
constexpr int kVerifyFailed = 3;

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

std::string csv_escape(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string q = "\"";
  for (char c : v) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// Flat objects only; every row must share the first row's keys.
void emit_csv(std::ostream& out, const std::vector<std::string>& header, const std::vector<json>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      out << (i ? "," : "");
      if (row.contains(header[i]) && !row[header[i]].is_null()) out << csv_escape(scalar_text(row[header[i]]));
    }
    out << '\n';
  }
}

std::vector<double> grid_values(const Range& r) {
  if (!r.step) return {r.lo, r.hi};
  if (!(*r.step > 0)) throw DomainError("grid step must be positive");
  std::vector<double> v;
  const long n = static_cast<long>(std::floor((r.hi - r.lo) / *r.step + 1e-9));
  for (long i = 0; i <= n; ++i) v.push_back(r.lo + i * *r.step);
  return v;
}

// Sample grids of the acceptance runs: right half-plane (both parities),
// odd continuation, even continuation.
std::vector<CNum> default_crosscheck_grid(Precision p) {
  std::vector<CNum> g;
  for (double re : {0.5, 1.0, 1.5, 2.0, 3.0})
    for (double im : {0.0, 0.5, -0.5, 1.3, -1.3}) g.emplace_back(re, im, p);
  for (double re : {-3.1, -1.3, -0.7})
    for (double im : {0.3, 1.1}) g.emplace_back(re, im, p);
  for (double re : {-0.5, -1.5, -3.2})
    for (double im : {0.0, 0.9, -0.9}) g.emplace_back(re, im, p);
  return g;
}

json verify_identities(const RunConfig& cfg, bool& pass) {
  ident::SuiteConfig sc;
  sc.seed = cfg.seed;
  sc.precision = cfg.precision_bits;
  if (cfg.limit) sc.samples = *cfg.limit;
  const auto reports = ident::run_identity_suite(sc);
  json arr = json::array();
  for (const auto& r : reports) {
    arr.push_back(r);
    pass = pass && r.pass;
  }
  return {{"seed", cfg.seed}, {"samples", sc.samples}, {"reports", arr}};
}

json verify_pell(const RunConfig& cfg, bool& pass) {
  const long limit = cfg.limit.value_or(100'000);
  json arr = json::array();
  for (long D : cfg.D) {
    const auto ctx = qfield::make_context(D, cfg.precision_bits);
    // Enumerate F_D until it passes the limit, split by index parity.
    std::set<mpz_class> odd, even;
    const seq::SeqTable F(ctx, seq::Kind::fibonacci, 2);
    seq::SeqTable table = F;
    for (std::size_t n = 1;; ++n) {
      if (n > table.size()) table = table.extend(2 * table.size());
      const mpz_class& v = table.at(n);
      if (v > limit) break;
      (n % 2 == 1 ? odd : even).insert(v);
    }
    long mismatches = 0;
    std::string first;
    for (long n = 1; n <= limit; ++n) {
      const mpz_class N(n);
      const bool po = seq::is_odd_indexed_fib(ctx, N);
      const bool pe = seq::is_even_indexed_fib(ctx, N);
      if (po != (odd.count(N) > 0) || pe != (even.count(N) > 0)) {
        if (mismatches++ == 0) first = std::to_string(n);
      }
    }
    const bool ok = mismatches == 0;
    pass = pass && ok;
    json e = {{"D", D}, {"limit", limit}, {"odd_members", odd.size()}, {"even_members", even.size()},
              {"mismatches", mismatches}, {"pass", ok}};
    if (!ok) e["first_mismatch"] = first;
    arr.push_back(e);
  }
  return arr;
}

json verify_classnumber(const RunConfig& cfg, bool& pass) {
  const long limit = cfg.limit.value_or(200);
  const double tol = 1e-25;
  json arr = json::array();
  double worst = 0.0;
  for (long D = 2; D <= limit; ++D) {
    if (!arith::is_squarefree(mpz_class(D))) continue;
    const qfield::QuadInt eps = qfield::fundamental_unit(D);
    if (eps.norm() != -1) continue;
    const Precision p = cfg.precision_bits;
    const long q = D % 4 == 1 ? D : 4 * D;
    const mpz_class h = qfield::class_number(D);
    const Real formula = ldexp(Real(h, p + 32) * log(eps.to_real(p + 32)), 1) / sqrt(Real(q, p + 32));
    const double delta = abs(qfield::L1_direct(D, p) - formula).to_double();
    worst = std::max(worst, delta);
    const bool ok = delta < tol;
    pass = pass && ok;
    arr.push_back({{"D", D}, {"h", h.get_str()}, {"delta", delta}, {"pass", ok}});
  }
  return {{"tol", tol}, {"max_delta", worst}, {"fields", arr}};
}

json verify_crosscheck(const RunConfig& cfg, bool& pass) {
  std::vector<CNum> grid;
  if (cfg.re && cfg.im) {
    for (double re : grid_values(parse_range(*cfg.re)))
      for (double im : grid_values(parse_range(*cfg.im))) grid.emplace_back(re, im, cfg.precision_bits);
  } else {
    grid = default_crosscheck_grid(cfg.precision_bits);
  }
  json arr = json::array();
  for (long D : cfg.D) {
    const auto ctx = qfield::make_context(D, cfg.precision_bits);
    const auto report = cont::cross_check(ctx, grid, cfg.tol);
    json j = report;
    j["D"] = D;
    pass = pass && report.all_pass;
    arr.push_back(j);
  }
  return arr;
}

}  // namespace

void RunConfig::validate() const {
  if (precision_bits < 64) throw DomainError("precision must be at least 64 bits");
  if (!(tol > std::ldexp(1.0, -static_cast<int>(precision_bits) + 24)))
    throw DomainError("tol must exceed 2^(-precision + 24)");
  if (D.empty()) throw DomainError("--D is required");
}

long RunConfig::single_D() const {
  if (D.size() != 1) throw DomainError("this command takes a single --D");
  return D.front();
}

CNum parse_complex(const std::string& raw, Precision prec) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  if (text.empty()) throw DomainError("empty complex literal");
  auto part = [&](std::string v) {
    if (v.empty() || v == "+") return Real(1L, prec);
    if (v == "-") return Real(-1L, prec);
    return Real::parse(v, prec);
  };
  if (text.back() != 'i' && text.back() != 'j') return CNum(Real::parse(text, prec), Real(prec));
  text.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = text.size(); i-- > 1;) {
    if ((text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return CNum(Real(prec), part(text));
  return CNum(Real::parse(text.substr(0, split), prec), part(text.substr(split)));
}

Range parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw DomainError("range must look like lo..hi or lo..hi:step");
  Range r;
  std::string hi = text.substr(dots + 2);
  const auto colon = hi.find(':');
  try {
    r.lo = std::stod(text.substr(0, dots));
    if (colon != std::string::npos) {
      r.step = std::stod(hi.substr(colon + 1));
      hi = hi.substr(0, colon);
    }
    r.hi = std::stod(hi);
  } catch (const std::exception&) {
    throw DomainError("malformed range '" + text + "'");
  }
  return r;
}

int cmd_field(const RunConfig& cfg, std::ostream& out) {
  const auto ctx = qfield::make_context(cfg.single_D(), cfg.precision_bits);
  const json j = ctx;
  if (cfg.format == Format::csv) {
    std::vector<json> rows;
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() && v.contains("value"))
        rows.push_back({{"key", k}, {"value", v["value"]}});
      else if (v.is_object())
        for (const auto& [k2, v2] : v.items()) rows.push_back({{"key", k + "." + k2}, {"value", v2}});
      else
        rows.push_back({{"key", k}, {"value", v}});
    }
    emit_csv(out, {"key", "value"}, rows);
  } else {
    emit(out, j);
  }
  return kOk;
}

int cmd_table(const RunConfig& cfg, std::ostream& out) {
  const auto ctx = qfield::make_context(cfg.single_D(), cfg.precision_bits);
  const long n_max = cfg.limit.value_or(20);
  if (n_max < 1) throw DomainError("--limit must be positive");
  if (cfg.format == Format::csv) {
    seq::write_table_csv(out, ctx, static_cast<std::size_t>(n_max));
    return kOk;
  }
  const seq::SeqTable L(ctx, seq::Kind::lucas, n_max);
  const seq::SeqTable F(ctx, seq::Kind::fibonacci, n_max);
  json rows = json::array();
  for (long n = 1; n <= n_max; ++n) rows.push_back({{"n", n}, {"L", L.at(n).get_str()}, {"F", F.at(n).get_str()}});
  emit(out, {{"D", ctx.D}, {"rows", rows}});
  return kOk;
}

int cmd_zeta(const RunConfig& cfg, std::ostream& out) {
  const auto ctx = qfield::make_context(cfg.single_D(), cfg.precision_bits);
  const CNum s = parse_complex(cfg.s, cfg.precision_bits);
  const seq::Parity parity = seq::parse_parity(cfg.parity);

  std::vector<cont::Method> methods;
  if (cfg.method == "all") {
    if (s.re() > 0.0) methods.push_back(cont::Method::direct);
    methods.push_back(cont::Method::binomial);
    if (parity == seq::Parity::odd || s.re() < 0.0) methods.push_back(cont::Method::spectral);
  } else {
    methods.push_back(cont::parse_method(cfg.method));
  }

  std::vector<cont::EvalResult> results;
  for (auto m : methods) results.push_back(cont::evaluate(ctx, s, parity, m, cfg.tol));

  std::vector<json> records;
  for (const auto& r : results) records.push_back(cont::to_json_record(ctx, s, r));
  double discrepancy = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i)
    for (std::size_t j = i + 1; j < results.size(); ++j)
      discrepancy = std::max(discrepancy, abs(results[i].value - results[j].value).to_double());

  if (cfg.format == Format::csv) {
    emit_csv(out, {"D", "s_re", "s_im", "parity", "method", "value_re", "value_im", "tail_bound", "terms_used"},
             records);
  } else if (cfg.method == "all") {
    emit(out, {{"results", records}, {"discrepancy", discrepancy}, {"tol", cfg.tol}});
  } else {
    emit(out, records.front());
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  static const std::vector<std::string> kSuites{"identities", "pell", "classnumber", "crosscheck"};
  if (cfg.suite != "all" && std::find(kSuites.begin(), kSuites.end(), cfg.suite) == kSuites.end())
    throw DomainError("unknown suite '" + cfg.suite + "'");
  bool pass = true;
  json report = {{"seed", cfg.seed}, {"precision_bits", cfg.precision_bits}, {"D", cfg.D}};
  for (const auto& name : kSuites) {
    if (cfg.suite != "all" && cfg.suite != name) continue;
    bool ok = true;
    json body;
    if (name == "identities") body = verify_identities(cfg, ok);
    if (name == "pell") body = verify_pell(cfg, ok);
    if (name == "classnumber") body = verify_classnumber(cfg, ok);
    if (name == "crosscheck") body = verify_crosscheck(cfg, ok);
    report["suites"][name] = {{"pass", ok}, {"detail", body}};
    pass = pass && ok;
  }
  report["all_pass"] = pass;
  if (cfg.format == Format::csv) {
    std::vector<json> rows;
    for (const auto& [k, v] : report["suites"].items()) rows.push_back({{"suite", k}, {"pass", v["pass"]}});
    emit_csv(out, {"suite", "pass"}, rows);
  } else {
    emit(out, report);
  }
  return pass ? kOk : kVerifyFailed;
}

int cmd_poles(const RunConfig& cfg, std::ostream& out) {
  const auto ctx = qfield::make_context(cfg.single_D(), cfg.precision_bits);
  const Range re = parse_range(cfg.re.value_or("-5..1"));
  const Range im = parse_range(cfg.im.value_or("-1..1"));
  const auto poles = cont::pole_grid(ctx, {re.lo, re.hi, im.lo, im.hi});
  std::vector<json> rows;
  for (const auto& p : poles) {
    json row = p;
    if (p.m == 0) {
      const CNum r = cont::residue_at(ctx, p);
      row["residue_re"] = r.re().to_string(30);
      row["residue_im"] = r.im().to_string(30);
    } else {
      row["residue_re"] = nullptr;
      row["residue_im"] = nullptr;
    }
    rows.push_back(row);
  }
  if (cfg.format == Format::csv)
    emit_csv(out, {"k", "m", "re", "im", "residue_re", "residue_im"}, rows);
  else
    emit(out, {{"D", ctx.D}, {"poles", rows}});
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string format = "json";
  CLI::App app{"Zeta functions of O_D Fibonacci numbers"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--D", cfg.D, "squarefree D (verify: comma-separated list)")->delimiter(',');
    sub->add_option("--precision", cfg.precision_bits, "working precision in bits")->capture_default_str();
    sub->add_option("--tol", cfg.tol, "absolute tolerance")->capture_default_str();
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  };

  auto* field = app.add_subcommand("field", "field invariants of Q(sqrt D)");
  add_common(field);

  auto* table = app.add_subcommand("table", "L_D(n), F_D(n) for n <= limit");
  add_common(table);
  table->add_option("--limit", cfg.limit, "number of rows (default 20)");

  auto* zeta = app.add_subcommand("zeta", "evaluate Z_D^odd / Z_D^even");
  add_common(zeta);
  zeta->add_option("--s", cfg.s, "complex argument, e.g. 0.5+1.3i")->capture_default_str();
  zeta->add_option("--parity", cfg.parity, "odd or even")->capture_default_str();
  zeta->add_option("--method", cfg.method, "direct, binomial, spectral or all")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run verification suites");
  add_common(verify);
  verify->add_option("--suite", cfg.suite, "identities, pell, classnumber, crosscheck or all")->capture_default_str();
  verify->add_option("--limit", cfg.limit, "pell: n bound; classnumber: D bound; identities: samples");
  verify->add_option("--seed", cfg.seed, "sampling seed")->capture_default_str();
  verify->add_option("--re", cfg.re, "crosscheck grid lo..hi:step");
  verify->add_option("--im", cfg.im, "crosscheck grid lo..hi:step");

  auto* poles = app.add_subcommand("poles", "poles in a rectangle, residues on the real axis");
  add_common(poles);
  poles->add_option("--re", cfg.re, "lo..hi (default -5..1)");
  poles->add_option("--im", cfg.im, "lo..hi (default -1..1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  const bool is_verify = verify->parsed();
  if (is_verify && verify->count("--D") == 0) cfg.D = {2, 5, 13, 29};
  cfg.format = format == "csv" ? Format::csv : Format::json;

  try {
    cfg.validate();
    if (field->parsed()) return cmd_field(cfg, out);
    if (table->parsed()) return cmd_table(cfg, out);
    if (zeta->parsed()) return cmd_zeta(cfg, out);
    if (is_verify) return cmd_verify(cfg, out);
    if (poles->parsed()) return cmd_poles(cfg, out);
  } catch (const UnsupportedFieldError& e) {
    err << e.what() << '\n';
    return kUnsupported;
  } catch (const NearPoleError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NoConvergence& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace fibzeta::cli
