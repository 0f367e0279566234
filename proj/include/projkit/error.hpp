#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace projkit {

enum class ErrorKind {
    NonUnitDivisor,
    NonZeroConstantTerm,
    NotInvertible,
    NonSquareConstant,
    SyntaxError,
    UnboundParameter,
    UnsupportedExponent,
    DegenerateJacobian,
    NotInNormalForm,
    PreconditionViolated,
    VerticalAtOrigin,
    DegenerateWedge,
    UnknownCase,
    InadmissibleParameters,
};

std::string_view to_string(ErrorKind kind);

// Every recoverable failure in the library is reported through this type.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, const std::string &message);

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace projkit
