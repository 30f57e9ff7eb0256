#pragma once

#include <stdexcept>
#include <string>

namespace ofa {

// Every failure surfaced by the library carries a stable machine-readable
// code (the class name) alongside the human message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define OFA_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  }

OFA_DEFINE_ERROR(OutOfBounds);
OFA_DEFINE_ERROR(InfeasibleSequence);
OFA_DEFINE_ERROR(InfeasibleBatch);
OFA_DEFINE_ERROR(InfeasibleFlow);
OFA_DEFINE_ERROR(InfeasibleRequestCount);
OFA_DEFINE_ERROR(NoAvailableFacility);
OFA_DEFINE_ERROR(PolicyViolation);
OFA_DEFINE_ERROR(TooLargeForEnumeration);
OFA_DEFINE_ERROR(GeometryDoesNotFit);
OFA_DEFINE_ERROR(OddSeparation);
OFA_DEFINE_ERROR(MixedConfigs);
OFA_DEFINE_ERROR(ConfigInvalid);
OFA_DEFINE_ERROR(InvariantViolation);

#undef OFA_DEFINE_ERROR

// Parse failures remember the 1-based line they were detected on (0 when the
// source has no line structure).
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error("ParseError", source + (line ? ":" + std::to_string(line) : std::string()) +
                                ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ofa
