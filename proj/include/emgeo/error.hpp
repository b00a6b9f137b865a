#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace emgeo {

enum class ErrorKind {
    Io,         // unreadable/unwritable files, transport failures
    Format,     // malformed input content
    Config,     // bad options, unknown columns, invalid regions
    Validation, // data violates an invariant (duplicate ids, degenerate rings)
    Quota,      // geocoding service budget exhausted
};

std::string_view to_string(ErrorKind kind);

// Exit code used by the CLI for each kind.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace emgeo
