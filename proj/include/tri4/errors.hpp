#pragma once

#include <stdexcept>
#include <string>

namespace tri4 {

enum class Err {
    InconsistentGluing,
    IndexOutOfRange,
    SelfIdentification,
    NotInternal,
    NotBoundary,
    WouldCreateSelfIdentification,
    InvalidSite,
    SameEndpoints,
    InvalidCollapse,
    BoundarySite,
    IsomorphicInputs,
    NotAChainGluing,
    InvalidInput,
    ParseError,
};

const char* err_name(Err e);

/// Domain error carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& msg)
        : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}

    Err code() const noexcept { return code_; }

private:
    Err code_;
};

} // namespace tri4
