#pragma once

#include <stdexcept>
#include <string>

namespace wmlab {

enum class ErrorKind {
    NotLefschetzType,
    WrongDegree,
    DualityViolated,
    HypothesisFailed,
    ValidationFailed,
    DecompositionFailed,
    NotNilpotent,
    CommutationFailed,
    NoRoom,
    MinPolyMismatch,
    ProductMismatch,
    NotCoprime,
    SelectorInvalid,
    SchemaError,
};

inline const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::NotLefschetzType: return "NotLefschetzType";
        case ErrorKind::WrongDegree: return "WrongDegree";
        case ErrorKind::DualityViolated: return "DualityViolated";
        case ErrorKind::HypothesisFailed: return "HypothesisFailed";
        case ErrorKind::ValidationFailed: return "ValidationFailed";
        case ErrorKind::DecompositionFailed: return "DecompositionFailed";
        case ErrorKind::NotNilpotent: return "NotNilpotent";
        case ErrorKind::CommutationFailed: return "CommutationFailed";
        case ErrorKind::NoRoom: return "NoRoom";
        case ErrorKind::MinPolyMismatch: return "MinPolyMismatch";
        case ErrorKind::ProductMismatch: return "ProductMismatch";
        case ErrorKind::NotCoprime: return "NotCoprime";
        case ErrorKind::SelectorInvalid: return "SelectorInvalid";
        case ErrorKind::SchemaError: return "SchemaError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace wmlab
