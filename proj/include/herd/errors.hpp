#pragma once

#include <stdexcept>
#include <string>

namespace herd {

/// Base of every error raised by the library. `category()` is the stable
/// prefix the CLI prints in front of the message.
class Error : public std::runtime_error {
 public:
  Error(std::string category, const std::string& message)
      : std::runtime_error(message), category_(std::move(category)) {}

  const std::string& category() const noexcept { return category_; }

 private:
  std::string category_;
};

#define HERD_DEFINE_ERROR(Name, prefix)                                   \
  class Name : public Error {                                             \
   public:                                                                \
    explicit Name(const std::string& message) : Error(prefix, message) {} \
  }

HERD_DEFINE_ERROR(StructuralError, "structural error");
HERD_DEFINE_ERROR(RealizationMismatchError, "realization mismatch");
HERD_DEFINE_ERROR(MissingRealizationError, "missing realization");
HERD_DEFINE_ERROR(NumericError, "numeric error");
HERD_DEFINE_ERROR(UndecidedError, "undecided");
HERD_DEFINE_ERROR(SizeError, "size error");
HERD_DEFINE_ERROR(UnmatchableError, "unmatchable");
HERD_DEFINE_ERROR(SynthesisImpossibleError, "synthesis impossible");
HERD_DEFINE_ERROR(UnreachableTargetError, "unreachable target");
HERD_DEFINE_ERROR(DivergenceError, "divergence");
HERD_DEFINE_ERROR(SpecError, "spec error");
HERD_DEFINE_ERROR(ParseError, "parse error");
HERD_DEFINE_ERROR(ConsistencyError, "consistency error");
HERD_DEFINE_ERROR(InvalidArgumentError, "invalid argument");

#undef HERD_DEFINE_ERROR

}  // namespace herd
