#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cantor {

enum class ErrorKind {
    malformed_input,
    invalid_interval,
    no_predecessor,
    limit_carry_undefined,
    metric_axiom_violation,
    precondition,
    non_repeating_violation,
    budget_exceeded,
    invariant_violation,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the toolkit carries a kind so that front ends can
/// map it onto a stable exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace cantor
