#pragma once
/**
 * @file logarithm.hpp
 * @brief log_b(y) on enclosure reals, for bases above one (log) and bases
 *        strictly between zero and one (log_small_base).
 *
 * Key design decisions:
 *  - the rational core (detail::log_q_enclosure) extracts binary digits of
 *    log_B(Y) by residual squaring: first the exact integer bracket
 *    B^n <= Y < B^(n+1), then k rounds of squaring the residual Y/B^n and
 *    dividing out B whenever the square crosses it — the classical radix-2
 *    logarithm recurrence. Intermediates are integer mantissas at a fixed
 *    dyadic scale (no rational gcd reduction on the hot path), every
 *    rounding is outward, and the final enclosure is certified by exact
 *    integer-power comparisons against the tracked residual interval —
 *    independent of the digit choices, so rounding can never make the
 *    answer unsound, only wide enough to trigger a retry at a finer scale
 *  - exact hits (Y a perfect power of B) collapse to point enclosures: the
 *    residual starts at exactly one and squaring preserves that
 *  - log witnesses base > 1 and argument > 0 eagerly within the budget
 *    (errc::base_not_above_one / errc::arg_not_positive). Refinement hulls
 *    the four corner evaluations: log_B(Y) is increasing in Y for fixed B,
 *    and along each fixed-Y edge it is monotone in B (the sign of its slope
 *    depends only on whether Y is above or below one), so the extreme
 *    values over a box sit at its corners. A budget that runs out raises
 *    budget_exhausted_error carrying the best intersected enclosure
 *  - log_small_base(b, y) witnesses base < 1 (errc::base_not_below_one) and
 *    evaluates as neg(log(inv_pos(b), y)), since log_{1/B}(Y) = -log_B(Y)
 */

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dedekind/error.hpp"
#include "dedekind/exponentiation.hpp"
#include "dedekind/interval.hpp"
#include "dedekind/rational.hpp"
#include "dedekind/real.hpp"

namespace dedekind {

namespace detail {

/**
 * @brief Sound enclosure of log_B(Y) for rational B > 1, Y > 0, of width
 *        <= delta whenever that is affordable. The result is an enclosure
 *        unconditionally; the exact final width check keeps the outward
 *        roundings honest.
 */
inline RInterval log_q_enclosure(const Rat& B, const Rat& Y, const Rat& delta) {
    if (!(B > Rat(1))) throw std::logic_error("log_q_enclosure: base must be > 1");
    if (Y.sign() <= 0) throw std::logic_error("log_q_enclosure: argument must be positive");
    if (delta.sign() <= 0) throw std::logic_error("log_q_enclosure: delta must be positive");
    if (Y == Rat(1)) return RInterval(Rat(0), Rat(0));
    if (Y < Rat(1)) {  // log_B(Y) = -log_B(1/Y)
        const RInterval r = log_q_enclosure(B, Rat(1) / Y, delta);
        return RInterval(-r.hi, -r.lo);
    }

    // Exact integer bracket B^n <= Y < B^(n+1): double the exponent until
    // B^(2^j) overshoots Y, then descend the ladder of saved squares. The
    // powers are kept as raw numerator/denominator integers, so nothing is
    // ever reduced; every power compared stays below Y * B in magnitude.
    const Int& p = B.num();
    const Int& q = B.den();
    const Int& yn = Y.num();
    const Int& yd = Y.den();
    std::vector<std::pair<Int, Int>> sq;  // sq[i] = (p, q)^(2^i)
    sq.emplace_back(p, q);
    while (sq.back().first * yd <= yn * sq.back().second)
        sq.emplace_back(sq.back().first * sq.back().first,
                        sq.back().second * sq.back().second);
    Int n = 0, pn = 1, qn = 1;  // B^n = pn / qn, invariant B^n <= Y
    for (std::size_t i = sq.size() - 1; i-- > 0;) {
        const Int pc = pn * sq[i].first, qc = qn * sq[i].second;
        if (pc * yd <= yn * qc) {
            pn = pc;
            qn = qc;
            n += Int(1) << i;
        }
    }

    // Residual Z0 = Y / B^n lies in [1, B); log_B(Y) = n + log_B(Z0).
    const Int z0num = yn * qn, z0den = yd * pn;

    long k = width_bits(delta) + 3;  // binary digits of log_B(Z0) to extract
    long m = 2 * k + 64;             // mantissa scale: values live at x / 2^m
    if (B - Rat(1) < Rat(1)) m += -floor_log2(B - Rat(1));  // resolve bases near 1
    for (int attempt = 0; attempt < 48; ++attempt, m += 64 + k) {
        const Int one = Int(1) << m;
        Int zlo = floor_div(z0num << m, z0den);
        Int zhi = ceil_div(z0num << m, z0den);
        Int acc = 0;
        for (long i = 0; i < k; ++i) {
            zlo = (zlo * zlo) >> m;
            zhi = ceil_div(zhi * zhi, one);
            acc <<= 1;
            // Divide out B when the bracket midpoint crossed it. The digit
            // choice never affects soundness — both endpoints transform the
            // same way — only how tight the final certification comes out.
            if ((zlo + zhi) * q >= (p * one) << 1) {
                zlo = floor_div(zlo * q, p);
                zhi = ceil_div(zhi * q, p);
                acc |= 1;
            }
        }
        if (zlo <= 0) continue;  // rounding slop swallowed the lower end

        // Certify independently of the digit choices: the true residual
        // after k squarings lies in [zlo, zhi] / 2^m, so its log_B lies in
        // [c1, c2] for the integer powers of B bracketing that interval.
        const auto pow_le = [&](long c, const Int& mant) {  // B^c <= mant/2^m
            return c >= 0 ? int_pow(p, Int(c)) * one <= mant * int_pow(q, Int(c))
                          : int_pow(q, Int(-c)) * one <= mant * int_pow(p, Int(-c));
        };
        const auto pow_ge = [&](long c, const Int& mant) {  // B^c >= mant/2^m
            return c >= 0 ? int_pow(p, Int(c)) * one >= mant * int_pow(q, Int(c))
                          : int_pow(q, Int(-c)) * one >= mant * int_pow(p, Int(-c));
        };
        const long limit = 2 * k + 8;
        long c1 = 0;
        while (c1 > -limit && !pow_le(c1, zlo)) --c1;
        while (c1 < limit && pow_le(c1 + 1, zlo)) ++c1;
        long c2 = 0;
        while (c2 > -limit && pow_ge(c2 - 1, zhi)) --c2;
        while (c2 < limit && !pow_ge(c2, zhi)) ++c2;
        if (!pow_le(c1, zlo) || !pow_ge(c2, zhi)) continue;  // scan cap hit

        const Int den_k = Int(1) << k;
        const RInterval out(Rat(n) + Rat(acc + Int(c1), den_k),
                            Rat(n) + Rat(acc + Int(c2), den_k));
        if (out.width() <= delta) return out;
    }
    throw std::logic_error("log_q_enclosure: precision retry runaway");
}

}  // namespace detail

/**
 * @brief log_b(y) for enclosure reals, base above one.
 *
 * Requires b > 1 and y > 0, both witnessed eagerly at construction within
 * the budget (errc::base_not_above_one / errc::arg_not_positive on
 * refutation or exhaustion). Refinement hulls the four corner evaluations
 * of the rational core; if the hull cannot reach the requested width within
 * the budget, budget_exhausted_error carries the best achieved enclosure.
 */
inline DReal log(const DReal& b, const DReal& y, Budget budget = {}) {
    const long n_b = detail::witness_gt(b, Rat(1), budget, errc::base_not_above_one, "log: base");
    const long n_y = detail::witness_gt(y, Rat(0), budget, errc::arg_not_positive, "log: argument");
    return DReal([b, y, n_b, n_y, budget](const Rat& eps) {
        detail::Refiner rb(b), ry(y);
        rb.at(n_b);  // pin base > 1 and argument > 0 into the histories
        ry.at(n_y);
        const long start =
            std::max({n_b, n_y, std::max<long>(0, detail::precision_rung(eps))});
        std::optional<RInterval> best;
        for (unsigned j = 0; j <= budget.doublings; ++j) {
            const RInterval bi = rb.at(start + static_cast<long>(j));
            const RInterval yi = ry.at(start + static_cast<long>(j));
            const Rat corner_delta = eps / 8;
            std::optional<RInterval> cand;
            for (const Rat& bc : {bi.lo, bi.hi}) {
                for (const Rat& yc : {yi.lo, yi.hi}) {
                    const RInterval corner = detail::log_q_enclosure(bc, yc, corner_delta);
                    cand = cand ? hull(*cand, corner) : corner;
                    if (yi.is_point()) break;
                }
                if (bi.is_point()) break;
            }
            if (cand->width() <= eps) return *cand;
            best = best ? intersect(*best, *cand) : *cand;
        }
        throw budget_exhausted_error("log: width " + best->width().to_string() +
                                         " still above eps " + eps.to_string(),
                                     *best);
    });
}

/**
 * @brief log_b(y) for a base strictly between zero and one.
 *
 * Requires b < 1 witnessed within the budget (errc::base_not_below_one on
 * refutation or exhaustion) and b > 0 via inv_pos; evaluates as
 * neg(log(inv_pos(b), y)).
 */
inline DReal log_small_base(const DReal& b, const DReal& y, Budget budget = {}) {
    detail::witness_lt(b, Rat(1), budget, errc::base_not_below_one, "log_small_base: base");
    return neg(log(inv_pos(b, budget), y, budget));
}

}  // namespace dedekind
