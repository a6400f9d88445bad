#include "vsp/error.hpp"

namespace vsp {

std::string_view kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::NotPrime: return "NotPrime";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::MalformedScalar: return "MalformedScalar";
        case ErrorKind::NotInF: return "NotInF";
        case ErrorKind::NotOnAxis: return "NotOnAxis";
        case ErrorKind::NoGenericWitness: return "NoGenericWitness";
        case ErrorKind::InvalidDescriptor: return "InvalidDescriptor";
        case ErrorKind::InvalidElement: return "InvalidElement";
        case ErrorKind::ArityMismatch: return "ArityMismatch";
        case ErrorKind::NotQfEquivalent: return "NotQfEquivalent";
        case ErrorKind::TargetNotRich: return "TargetNotRich";
        case ErrorKind::NotSameType: return "NotSameType";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::UnknownConstant: return "UnknownConstant";
        case ErrorKind::UnboundSymbol: return "UnboundSymbol";
        case ErrorKind::NotQuantifierFree: return "NotQuantifierFree";
        case ErrorKind::FreeSymbols: return "FreeSymbols";
        case ErrorKind::FieldNotInfinite: return "FieldNotInfinite";
        case ErrorKind::FieldNotFinite: return "FieldNotFinite";
        case ErrorKind::ContextFormat: return "ContextFormat";
        case ErrorKind::ResourceLimit: return "ResourceLimit";
        case ErrorKind::Usage: return "Usage";
    }
    return "Unknown";
}

}  // namespace vsp
