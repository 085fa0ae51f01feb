#include "bdp/rational.hpp"

#include <ostream>

#include "bdp/error.hpp"

namespace bdp {

Rational::Rational(long n, long d) {
    if (d == 0) fail(ErrorCode::ParseError, "rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) fail(ErrorCode::ParseError, "empty rational literal");
    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
        fail(ErrorCode::ParseError, "malformed rational literal '" + text + "'");
    if (sgn(mpq_class(q.get_den())) == 0)
        fail(ErrorCode::ParseError, "zero denominator in '" + text + "'");
    q.canonicalize();
    return Rational(q);
}

std::string Rational::str() const {
    return v_.get_str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) fail(ErrorCode::ParseError, "division by zero rational");
    v_ /= o.v_;
    return *this;
}

long Rational::floor_long() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    if (!q.fits_slong_p()) fail(ErrorCode::InvariantViolation, "floor does not fit a long");
    return q.get_si();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::None: return "ok";
        case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
        case ErrorCode::SelfLoop: return "SelfLoop";
        case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
        case ErrorCode::EdgeOutOfRange: return "EdgeOutOfRange";
        case ErrorCode::InvalidPoint: return "InvalidPoint";
        case ErrorCode::DistanceOutOfRange: return "DistanceOutOfRange";
        case ErrorCode::Unreachable: return "Unreachable";
        case ErrorCode::EmptyReach: return "EmptyReach";
        case ErrorCode::MismatchedGraphs: return "MismatchedGraphs";
        case ErrorCode::NotATree: return "NotATree";
        case ErrorCode::VariantUnsupported: return "VariantUnsupported";
        case ErrorCode::InvalidOrder: return "InvalidOrder";
        case ErrorCode::TooManyAgents: return "TooManyAgents";
        case ErrorCode::NeedTwoAgents: return "NeedTwoAgents";
        case ErrorCode::UnknownAgent: return "UnknownAgent";
        case ErrorCode::InvalidGamma: return "InvalidGamma";
        case ErrorCode::MalformedCnf: return "MalformedCnf";
        case ErrorCode::EpsilonOutOfRange: return "EpsilonOutOfRange";
        case ErrorCode::UnsatisfiedClause: return "UnsatisfiedClause";
        case ErrorCode::AmbiguousRoute: return "AmbiguousRoute";
        case ErrorCode::BudgetTooSmall: return "BudgetTooSmall";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
    }
    return "unknown";
}

} // namespace bdp
