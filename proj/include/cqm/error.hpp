#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cqm {

enum class ErrorCode {
    dim_mismatch,
    semiring_mismatch,
    not_unitary,
    axiom_failure,
    invalid_arity,
    not_abelian,
    not_group,
    not_endo,
    classification_failure,
    boolean_unsupported,
    not_a_relation,
    not_classical,
    budget_exceeded,
    index_mismatch,
    not_stochastic,
    type_mismatch,
    syntax_error,
    type_error,
    invalid_input,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it to an exit status without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace cqm
