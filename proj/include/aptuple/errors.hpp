#pragma once

#include <stdexcept>
#include <string>

namespace aptuple {

// Every library failure derives from error so callers (and the CLI) can
// map the concrete kind to an exit status.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

// Caller passed a value outside the operation's contract.
class argument_error : public error {
public:
    using error::error;
    const char* kind() const noexcept override { return "argument"; }
};

// A query reaches past the end of an Omega table.
class bound_error : public error {
public:
    using error::error;
    const char* kind() const noexcept override { return "bound"; }
};

// x is outside the regime where an asymptotic formula is evaluated.
class domain_error : public error {
public:
    using error::error;
    const char* kind() const noexcept override { return "domain"; }
};

class format_error : public error {
public:
    using error::error;
    const char* kind() const noexcept override { return "format"; }
};

class corruption_error : public error {
public:
    using error::error;
    const char* kind() const noexcept override { return "corruption"; }
};

class resource_error : public error {
public:
    using error::error;
    const char* kind() const noexcept override { return "resource"; }
};

// Counts too small for a ratio to mean anything.
class insufficient_data_error : public error {
public:
    using error::error;
    const char* kind() const noexcept override { return "insufficient_data"; }
};

}  // namespace aptuple
