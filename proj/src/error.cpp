#include <cantor/error.hpp>

namespace cantor {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::malformed_input: return "malformed-input";
        case ErrorKind::invalid_interval: return "invalid-interval";
        case ErrorKind::no_predecessor: return "no-predecessor";
        case ErrorKind::limit_carry_undefined: return "limit-carry-undefined";
        case ErrorKind::metric_axiom_violation: return "metric-axiom-violation";
        case ErrorKind::precondition: return "precondition";
        case ErrorKind::non_repeating_violation: return "non-repeating-violation";
        case ErrorKind::budget_exceeded: return "budget-exceeded";
        case ErrorKind::invariant_violation: return "invariant-violation";
    }
    return "unknown";
}

}  // namespace cantor
