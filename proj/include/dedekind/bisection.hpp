#pragma once
/**
 * @file bisection.hpp
 * @brief Finitary bracketing searches on the rationals: placing a perfect
 *        a-th power strictly inside a gap, and two-sided brackets for b-th
 *        roots. Every comparison is exact rational trichotomy, so these
 *        searches always terminate — no budgets involved.
 */

#include <stdexcept>

#include "dedekind/error.hpp"
#include "dedekind/interval.hpp"
#include "dedekind/rational.hpp"

namespace dedekind {

/**
 * @brief Find s in Q+ with q < s^a < r.
 *
 * Inputs must satisfy 0 <= q < r and a >= 1. Works by bisection on s,
 * maintaining l^a <= q and u^a >= r; since a-th powers of rationals are
 * dense in (q, r), some midpoint power must land strictly inside.
 *
 * Throws errc::empty_gap when q >= r; std::domain_error on q < 0;
 * std::invalid_argument on a < 1.
 */
inline Rat sandwich(const Rat& q, const Rat& r, const Int& a) {
    if (a < 1) throw std::invalid_argument("sandwich: exponent must be >= 1");
    if (q.sign() < 0) throw std::domain_error("sandwich: lower bound must be >= 0");
    if (!(q < r))
        throw error(errc::empty_gap,
                    "sandwich: empty gap (" + q.to_string() + ", " + r.to_string() + ")");
    Rat l = 0;
    Rat u = max(Rat(1), r);  // u >= 1 and u >= r, so u^a >= r
    for (;;) {
        const Rat m = (l + u) / 2;
        const Rat p = nat_pow(m, a);
        if (p <= q)
            l = m;
        else if (p >= r)
            u = m;
        else
            return m;
    }
}

/**
 * @brief Two-sided bracket [l, u] for the b-th root of x: l^b <= x <= u^b,
 *        0 <= l and u - l <= eps.
 *
 * Bisection from [0, max(1, x)]; each probe compares m^b with x exactly.
 *
 * Throws errc::negative_base on x < 0, errc::non_positive_step on eps <= 0,
 * std::invalid_argument on b < 1.
 */
inline RInterval rat_root_bracket(const Rat& x, const Int& b, const Rat& eps) {
    if (b < 1) throw std::invalid_argument("rat_root_bracket: degree must be >= 1");
    if (x.sign() < 0)
        throw error(errc::negative_base, "rat_root_bracket: radicand " + x.to_string() + " is negative");
    if (eps.sign() <= 0)
        throw error(errc::non_positive_step, "rat_root_bracket: eps " + eps.to_string() + " is not positive");
    Rat l = 0;
    Rat u = max(Rat(1), x);  // u^b >= u >= x since u >= 1
    while (u - l > eps) {
        const Rat m = (l + u) / 2;
        if (nat_pow(m, b) <= x)
            l = m;
        else
            u = m;
    }
    return RInterval(l, u);
}

}  // namespace dedekind
