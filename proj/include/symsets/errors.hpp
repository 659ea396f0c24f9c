#pragma once

#include <stdexcept>
#include <string>

namespace symsets {

/// Base of every error raised by the library. The CLI maps each subclass to
/// its own diagnostic prefix.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

#define SYMSETS_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                      \
    public:                                                          \
        using Error::Error;                                          \
        const char* kind() const noexcept override { return #Name; } \
    };

SYMSETS_DEFINE_ERROR(InvalidSequence)
SYMSETS_DEFINE_ERROR(InvalidInput)
SYMSETS_DEFINE_ERROR(SizeLimitExceeded)
SYMSETS_DEFINE_ERROR(MixedDegree)
SYMSETS_DEFINE_ERROR(NotSymmetric)
SYMSETS_DEFINE_ERROR(NotStandard)
SYMSETS_DEFINE_ERROR(ShapeMismatch)
SYMSETS_DEFINE_ERROR(ArithmeticOverflow)
SYMSETS_DEFINE_ERROR(SplitHypothesisViolated)
SYMSETS_DEFINE_ERROR(ClassExhausted)
SYMSETS_DEFINE_ERROR(Unrealizable)
SYMSETS_DEFINE_ERROR(ConstructionBug)
SYMSETS_DEFINE_ERROR(OutOfRange)
SYMSETS_DEFINE_ERROR(UsageError)
SYMSETS_DEFINE_ERROR(ParseError)

#undef SYMSETS_DEFINE_ERROR

}  // namespace symsets
