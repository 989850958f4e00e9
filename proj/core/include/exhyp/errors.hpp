#ifndef EXHYP_ERRORS_HPP
#define EXHYP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace exhyp {

// Stable error identities; the CLI maps categories to exit codes.
enum class ErrorCode {
    NotPrime,
    DegreeZero,
    FieldTooLarge,
    DivisionByZero,
    NotDivisor,
    NoPrimeInRange,
    BadArity,
    VertexOutOfRange,
    PartiteViolation,
    DuplicateShift,
    BadParameters,
    PatternTooLarge,
    BudgetExceeded,
    Io,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::DegreeZero: return "DegreeZero";
        case ErrorCode::FieldTooLarge: return "FieldTooLarge";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::NotDivisor: return "NotDivisor";
        case ErrorCode::NoPrimeInRange: return "NoPrimeInRange";
        case ErrorCode::BadArity: return "BadArity";
        case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
        case ErrorCode::PartiteViolation: return "PartiteViolation";
        case ErrorCode::DuplicateShift: return "DuplicateShift";
        case ErrorCode::BadParameters: return "BadParameters";
        case ErrorCode::PatternTooLarge: return "PatternTooLarge";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::Io: return "Io";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

} // namespace exhyp

#endif
