#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vsp {

enum class ErrorKind {
    DimensionMismatch,
    FieldMismatch,
    NotPrime,
    DivisionByZero,
    MalformedScalar,
    NotInF,
    NotOnAxis,
    NoGenericWitness,
    InvalidDescriptor,
    InvalidElement,
    ArityMismatch,
    NotQfEquivalent,
    TargetNotRich,
    NotSameType,
    ParseError,
    UnknownConstant,
    UnboundSymbol,
    NotQuantifierFree,
    FreeSymbols,
    FieldNotInfinite,
    FieldNotFinite,
    ContextFormat,
    ResourceLimit,
    Usage,
};

std::string_view kind_name(ErrorKind kind);

/// Every failure raised by the library carries a stable kind, which the CLI
/// renders as `ERROR:<kind>:`.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Parse failures additionally record the byte offset into the input.
class ParseError : public Error {
public:
    ParseError(ErrorKind kind, const std::string& message, std::size_t position)
        : Error(kind, message + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace vsp
