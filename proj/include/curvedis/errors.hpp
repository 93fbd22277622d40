#pragma once

#include <stdexcept>
#include <string>

namespace curvedis {

enum class ErrorKind {
    InvalidArgument,
    ManifoldMismatch,
    NonUnitInput,
    CutLocus,
    NonsmoothPoint,
    ZeroDirection,
    NotDescentDirection,
    LineSearchFailed,
    NotInvertible,
    Unsupported,
    GraphInvalid,
    Io,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::ManifoldMismatch: return "manifold mismatch";
    case ErrorKind::NonUnitInput: return "non-unit input";
    case ErrorKind::CutLocus: return "cut locus";
    case ErrorKind::NonsmoothPoint: return "nonsmooth point";
    case ErrorKind::ZeroDirection: return "zero direction";
    case ErrorKind::NotDescentDirection: return "not a descent direction";
    case ErrorKind::LineSearchFailed: return "line search failed";
    case ErrorKind::NotInvertible: return "not invertible";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::GraphInvalid: return "graph invalid";
    case ErrorKind::Io: return "io";
    }
    return "error";
}

} // namespace curvedis
