#pragma once

// Command-line front end. Each command writes its report to `out` and
// returns the process exit code:
//   0 success / all pass, 1 usage or domain error, 2 unsupported field,
//   3 verification failure.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fibzeta/real.hpp"

namespace fibzeta::cli {

enum class Format { json, csv };

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  std::optional<double> step;
};

struct RunConfig {
  std::vector<long> D{5};
  Precision precision_bits = 128;
  double tol = 1e-20;
  Format format = Format::json;
  std::string s = "2";
  std::string parity = "odd";
  std::string method = "all";
  std::string suite = "all";
  std::optional<long> limit;
  std::optional<std::string> re;
  std::optional<std::string> im;
  std::uint64_t seed = 20240611;

  // precision_bits >= 64 and tol > 2^(-precision_bits + 24); throws DomainError.
  void validate() const;
  long single_D() const;
};

// "a+bi", "a-bi", "a", "bi", "i", "-i" with decimal a, b.
CNum parse_complex(const std::string& text, Precision prec);

// "lo..hi" or "lo..hi:step".
Range parse_range(const std::string& text);

int cmd_field(const RunConfig& cfg, std::ostream& out);
int cmd_table(const RunConfig& cfg, std::ostream& out);
int cmd_zeta(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_poles(const RunConfig& cfg, std::ostream& out);

// Parses argv, dispatches, and maps exceptions to exit codes (messages go
// to `err`).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fibzeta::cli
