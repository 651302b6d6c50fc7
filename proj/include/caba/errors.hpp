#pragma once

#include <stdexcept>
#include <string>

namespace caba {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept = 0;
  // 1 = input problem, 2 = resource limit hit
  virtual int exit_code() const noexcept { return 1; }
};

#define CABA_DEFINE_ERROR(Name, Code)                                   \
  class Name : public Error {                                           \
  public:                                                               \
    explicit Name(const std::string& what) : Error(what) {}             \
    const char* kind() const noexcept override { return #Name; }        \
    int exit_code() const noexcept override { return Code; }            \
  };

CABA_DEFINE_ERROR(ParseError, 1)
CABA_DEFINE_ERROR(ValidationError, 1)
CABA_DEFINE_ERROR(InconsistentInput, 1)
CABA_DEFINE_ERROR(NonGroundInput, 1)
CABA_DEFINE_ERROR(InconsistentInstance, 1)
CABA_DEFINE_ERROR(PreconditionViolated, 1)
CABA_DEFINE_ERROR(CardinalityLimit, 2)
CABA_DEFINE_ERROR(BasisNotCompliant, 1)
CABA_DEFINE_ERROR(DepthExceeded, 2)
CABA_DEFINE_ERROR(IterationLimit, 2)
CABA_DEFINE_ERROR(UniverseTooLarge, 2)

#undef CABA_DEFINE_ERROR

}  // namespace caba
