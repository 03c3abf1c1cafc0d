#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace laxgrid {

// Every failure the library reports carries one of these kinds; the CLI
// prints the kind name verbatim in its JSON error object.
enum class ErrorKind {
    CapacityExceeded,
    GridMismatch,
    DomainError,
    NoCycle,
    NotAPermutation,
    NoPerfectMatching,
    NotCyclic,
    OddOrder,
    NotExact,
    NotCoprime,
    TooSmall,
    CycleTooShort,
    EqualSizeInfeasible,
    NotAPartition,
    UnsupportedGeometry,
    GapTooSmall,
    PathsIntersect,
    PointsOnBoundary,
    Overflow,
    ConfigError,
    IoError,
};

constexpr std::string_view error_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::CapacityExceeded: return "CapacityExceeded";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NoCycle: return "NoCycle";
    case ErrorKind::NotAPermutation: return "NotAPermutation";
    case ErrorKind::NoPerfectMatching: return "NoPerfectMatching";
    case ErrorKind::NotCyclic: return "NotCyclic";
    case ErrorKind::OddOrder: return "OddOrder";
    case ErrorKind::NotExact: return "NotExact";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::CycleTooShort: return "CycleTooShort";
    case ErrorKind::EqualSizeInfeasible: return "EqualSizeInfeasible";
    case ErrorKind::NotAPartition: return "NotAPartition";
    case ErrorKind::UnsupportedGeometry: return "UnsupportedGeometry";
    case ErrorKind::GapTooSmall: return "GapTooSmall";
    case ErrorKind::PathsIntersect: return "PathsIntersect";
    case ErrorKind::PointsOnBoundary: return "PointsOnBoundary";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    std::string_view name() const noexcept { return error_name(kind_); }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

} // namespace laxgrid
