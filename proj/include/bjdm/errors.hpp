#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bjdm {

/// Malformed input: bad parameters, bad file contents, contract violations
/// by the caller. Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parse failure with the 1-based line (transactional) or token position
/// (sequence) at which it was detected.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& what, std::size_t location)
        : ValidationError(what + " (at " + std::to_string(location) + ")"), location_(location) {}

    std::size_t location() const noexcept { return location_; }

private:
    std::size_t location_;
};

/// Filesystem failure. Maps to CLI exit code 3.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A chain broke one of its structural invariants (BJDM or margin drift,
/// inconsistent duplicate groups). Maps to CLI exit code 4.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace bjdm
