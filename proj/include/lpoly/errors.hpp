#pragma once

#include <stdexcept>
#include <string>

namespace lpoly {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define LPOLY_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                    \
    public:                                                        \
        explicit Name(const std::string& what) : Error(what) {}    \
    }

LPOLY_DEFINE_ERROR(ParseError);
LPOLY_DEFINE_ERROR(ZeroPolynomial);
LPOLY_DEFINE_ERROR(DegreeTooSmall);
LPOLY_DEFINE_ERROR(DegreeDecrease);
LPOLY_DEFINE_ERROR(BadNesting);
LPOLY_DEFINE_ERROR(IntervalMismatch);
LPOLY_DEFINE_ERROR(ZeroInsideDisk);
LPOLY_DEFINE_ERROR(NonPositiveP);
LPOLY_DEFINE_ERROR(ClassViolation);
LPOLY_DEFINE_ERROR(RejectionBudgetExceeded);
LPOLY_DEFINE_ERROR(InvalidArgument);

#undef LPOLY_DEFINE_ERROR

}  // namespace lpoly
