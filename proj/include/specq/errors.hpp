#pragma once

#include <stdexcept>
#include <string>

namespace specq {

// Base class for all library errors. The .name() is the stable identifier
// surfaced verbatim by the CLI.
class error : public std::runtime_error {
public:
    error(std::string name, const std::string& msg)
        : std::runtime_error(name + ": " + msg), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define SPECQ_ERROR(Name)                                              \
    class Name : public error {                                        \
    public:                                                            \
        explicit Name(const std::string& msg) : error(#Name, msg) {}   \
    }

SPECQ_ERROR(SyntaxError);
SPECQ_ERROR(NonIntegerCoefficient);
SPECQ_ERROR(EmptyInput);
SPECQ_ERROR(ContextMismatch);
SPECQ_ERROR(DivisionByZero);
SPECQ_ERROR(NoRootInInterval);
SPECQ_ERROR(NotGreaterThanOne);
SPECQ_ERROR(InvalidDigits);
SPECQ_ERROR(BoundNonPositive);
SPECQ_ERROR(TooFewPoints);
SPECQ_ERROR(AllZero);
SPECQ_ERROR(LambdaZero);
SPECQ_ERROR(OutOfRange);
SPECQ_ERROR(DeltaNotInB);
SPECQ_ERROR(IncompleteGraph);
SPECQ_ERROR(TooLarge);

#undef SPECQ_ERROR

} // namespace specq
