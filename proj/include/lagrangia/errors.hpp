#pragma once

#include <stdexcept>
#include <string>

namespace lagrangia {

enum class Err {
    DivisionByZero,
    IncompatibleFields,
    InvalidField,
    DegreeOverflow,
    OddDegreeWrongCharacteristic,
    NotComplementary,
    DegenerateForm,
    UnsupportedShape,
    SizeCap,
    NonHomogeneous,
    NonMinimalComplex,
    NotLiftable,
    CharZero,
    WrongShape,
    DimensionMismatch,
    OddParityViolation,
    PointNotOnLocus,
    NotDivisibleBy4,
    Undecidable,
    ParseError,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
  public:
    Error(Err code, const std::string& what)
        : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
    Err code() const { return code_; }

  private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Err code, const std::string& what) {
    if (!cond) fail(code, what);
}

} // namespace lagrangia
