#pragma once

#include <stdexcept>
#include <string>

namespace fibzeta {

// Precondition violated by the caller (non-squarefree D, Re s <= 0 for the
// direct series, negative isqrt argument, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The field exists but its fundamental unit has norm +1.
class UnsupportedFieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument lies on (or numerically indistinguishable from) a pole of Gamma.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Evaluation point too close to a pole of the zeta continuation.
class NearPoleError : public std::domain_error {
 public:
  NearPoleError(const std::string& what, long k, long m)
      : std::domain_error(what), k_(k), m_(m) {}
  long k() const noexcept { return k_; }
  long m() const noexcept { return m_; }

 private:
  long k_;
  long m_;
};

// A truncated series did not reach the requested tolerance within its cap.
class NoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fibzeta
