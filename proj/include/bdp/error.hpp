#pragma once

#include <stdexcept>
#include <string>

namespace bdp {

// Every failure the library can signal. The C API maps these 1:1 to
// negative return codes, so keep the order stable.
enum class ErrorCode {
    None = 0,
    NonPositiveWeight,
    SelfLoop,
    VertexOutOfRange,
    EdgeOutOfRange,
    InvalidPoint,
    DistanceOutOfRange,
    Unreachable,
    EmptyReach,
    MismatchedGraphs,
    NotATree,
    VariantUnsupported,
    InvalidOrder,
    TooManyAgents,
    NeedTwoAgents,
    UnknownAgent,
    InvalidGamma,
    MalformedCnf,
    EpsilonOutOfRange,
    UnsatisfiedClause,
    AmbiguousRoute,
    BudgetTooSmall,
    ParseError,
    InvariantViolation,
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

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace bdp
