#pragma once
/**
 * @file error.hpp
 * @brief Error taxonomy for the enclosure library.
 *
 * Two kinds of failure exist and are kept apart deliberately:
 *  - misuse of a total operation (zero denominator, bad parse input):
 *    plain std:: exceptions;
 *  - a semi-decidable search that ran out of refinement budget or a
 *    precondition whose falsity became witnessed during refinement:
 *    dedekind::error with a stable machine-readable name, so the CLI can
 *    report e.g. "DomainError: BaseNotAboveOne" and tests can match codes.
 */

#include <stdexcept>
#include <string>

namespace dedekind {

/// Stable identifiers for domain/witness failures.
enum class errc {
    non_positive_step,            ///< step of an Archimedean/Bernoulli search was <= 0
    negative_base,                ///< rational power of a negative base
    empty_gap,                    ///< sandwich search over an empty interval (q >= r)
    negative_operand,             ///< mul_nonneg saw an operand proven negative
    not_bounded_away_from_zero,   ///< inv_pos could not witness positivity
    base_not_positive,            ///< pow_real could not witness base > 0
    budget_exhausted,             ///< refinement budget ran out before the goal
    base_below_one,               ///< one-sided power saw base proven < 1
    non_neg_exponent_required,    ///< one-sided base power saw exponent proven < 0
    base_not_above_one,           ///< log could not witness base > 1
    arg_not_positive,             ///< log could not witness argument > 0
    base_not_below_one,           ///< log_small_base could not witness base < 1
};

/// CamelCase name used in diagnostics; matches the CLI's error vocabulary.
inline const char* errc_name(errc c) {
    switch (c) {
        case errc::non_positive_step:          return "NonPositiveStep";
        case errc::negative_base:              return "NegativeBase";
        case errc::empty_gap:                  return "EmptyGap";
        case errc::negative_operand:           return "NegativeOperand";
        case errc::not_bounded_away_from_zero: return "NotBoundedAwayFromZero";
        case errc::base_not_positive:          return "BaseNotPositive";
        case errc::budget_exhausted:           return "BudgetExhausted";
        case errc::base_below_one:             return "BaseBelowOne";
        case errc::non_neg_exponent_required:  return "NonNegExponentRequired";
        case errc::base_not_above_one:         return "BaseNotAboveOne";
        case errc::arg_not_positive:           return "ArgNotPositive";
        case errc::base_not_below_one:         return "BaseNotBelowOne";
    }
    return "UnknownError";
}

/// Base class for every domain/witness failure raised by the library.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

    errc code() const noexcept { return code_; }
    const char* name() const noexcept { return errc_name(code_); }

private:
    errc code_;
};

}  // namespace dedekind
