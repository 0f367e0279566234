#include "projkit/error.hpp"

namespace projkit {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::NonUnitDivisor: return "NonUnitDivisor";
    case ErrorKind::NonZeroConstantTerm: return "NonZeroConstantTerm";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NonSquareConstant: return "NonSquareConstant";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnboundParameter: return "UnboundParameter";
    case ErrorKind::UnsupportedExponent: return "UnsupportedExponent";
    case ErrorKind::DegenerateJacobian: return "DegenerateJacobian";
    case ErrorKind::NotInNormalForm: return "NotInNormalForm";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::VerticalAtOrigin: return "VerticalAtOrigin";
    case ErrorKind::DegenerateWedge: return "DegenerateWedge";
    case ErrorKind::UnknownCase: return "UnknownCase";
    case ErrorKind::InadmissibleParameters: return "InadmissibleParameters";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
{
}

SyntaxError::SyntaxError(std::size_t offset, const std::string &message)
    : Error(ErrorKind::SyntaxError, "at offset " + std::to_string(offset) + ": " + message),
      offset_(offset)
{
}

} // namespace projkit
