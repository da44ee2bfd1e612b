#pragma once

#include <stdexcept>
#include <string>

namespace ffsalem {

// Error conditions surfaced by the library. Each maps to one named
// precondition or invariant failure; CLI translates them to exit code 2.
enum class ErrorCode {
    NotPrime,
    DegreeZero,
    FieldTooLarge,
    DivisionByZero,
    ContextMismatch,
    DimensionMismatch,
    DimensionZero,
    BadDimensionSplit,
    TooManySubspaces,
    BadDimensions,
    ZeroFrequency,
    EvenCharacteristic,
    BadDimension,
    TooMany,
    EmptyFamily,
    DuplicateSubspace,
    EmptySet,
    EmptySupport,
    TooLarge,
    NotKakeya,
    Overflow,
    InvalidArgument,
    IoError,
    ParseError,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

} // namespace ffsalem
