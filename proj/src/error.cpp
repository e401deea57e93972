#include "charfact/error.hpp"

namespace charfact {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::PoleAt: return "PoleAt";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotEnoughZeros: return "NotEnoughZeros";
    case ErrorKind::PositivityRequired: return "PositivityRequired";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Error";
}

}  // namespace charfact
