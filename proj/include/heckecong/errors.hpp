#pragma once

#include <stdexcept>
#include <string>

namespace heckecong {

// Base class for every error raised by the library. `kind()` is a stable
// machine-readable tag; the CLI maps some kinds to exit codes.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define HECKECONG_DEFINE_ERROR(Name)                                \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(#Name, what) {}  \
  };

HECKECONG_DEFINE_ERROR(InvalidArgument)
HECKECONG_DEFINE_ERROR(NotSquarefree)
HECKECONG_DEFINE_ERROR(PrecisionExhausted)
HECKECONG_DEFINE_ERROR(UnsupportedWeight)
HECKECONG_DEFINE_ERROR(PrecisionMismatch)
HECKECONG_DEFINE_ERROR(PreconditionViolated)
HECKECONG_DEFINE_ERROR(InsufficientPrecision)
HECKECONG_DEFINE_ERROR(CountMismatch)
HECKECONG_DEFINE_ERROR(SignMismatch)
HECKECONG_DEFINE_ERROR(MalformedRecord)
HECKECONG_DEFINE_ERROR(InternalError)

#undef HECKECONG_DEFINE_ERROR

// Raised when a characteristic polynomial does not split over Z_p, i.e. the
// Hecke field has a prime above p of residue degree (or ramification) > 1.
class AssumptionViolation : public Error {
 public:
  AssumptionViolation(int degree, const std::string& what)
      : Error("AssumptionViolation", what), degree_(degree) {}
  int degree() const noexcept { return degree_; }

 private:
  int degree_;
};

}  // namespace heckecong
