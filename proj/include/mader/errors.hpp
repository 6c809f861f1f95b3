#pragma once

#include <stdexcept>
#include <string>

namespace mader {

/// Raised when a construction that must succeed fails to materialize. Always
/// a bug in this library; the CLI maps it to exit code 3.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error("internal consistency failure: " + what) {}
};

/// Raised when an input violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace mader
