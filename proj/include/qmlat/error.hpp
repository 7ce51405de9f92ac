#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qmlat {

enum class Errc {
    ParseError,
    InvalidArgument,
    NotAPoset,
    NotALattice,
    NotBounded,
    IndexOutOfRange,
    UnknownBuiltin,
    FactorNotIdeal,
    FactorNotPrincipal,
    CarrierTooLarge,
    NotInCarrier,
    EnumerationBudgetExceeded,
    NotZeroDistributive,
    NotClosedInput,
    NotClosed,
    FactorizationFailed,
    UnknownInstance,
    Io,
    Internal,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above; the C
/// API maps them one-to-one onto status values.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace qmlat
