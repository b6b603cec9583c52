#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace cayley {

/// Exception carrying a stable machine-readable code alongside the
/// human-readable message.  Codes are short snake_case tags such as
/// "dim_mismatch" or "singular_shift"; tests and the CLI dispatch on them.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace cayley
