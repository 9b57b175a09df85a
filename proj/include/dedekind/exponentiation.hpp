#pragma once
/**
 * @file exponentiation.hpp
 * @brief The exponentiation ladder on enclosure reals: natural powers,
 *        roots, rational powers, real powers, and the one-sided variants.
 *
 * Key design decisions:
 *  - pow_nat / root / pow_rat are total on their domains and carry no
 *    budget: their refinement loops are guaranteed to converge, with an
 *    accelerating precision schedule so slow cases (values at zero, high
 *    root degrees) still finish
 *  - pow_rat with a small denominator is literally root(pow_nat(x, a), b);
 *    larger denominators (as produced by refining a real exponent into
 *    dyadic bounds) go through a corner engine that evaluates rational
 *    powers of rational endpoints at bounded working precision instead of
 *    building astronomically exact numerators
 *  - the corner engine (detail::pow_q_enclosure) brackets base^e by exact
 *    integer part times a binary-fraction product of iterated square roots,
 *    computed on integer mantissas at a fixed dyadic scale (exact integer
 *    roots, outward-rounded shifts) so no step pays rational gcd reduction;
 *    the final width check is exact, so rounding never compromises
 *    soundness, only triggers a retry at higher precision
 *  - pow_real witnesses base > 0 eagerly (errc::base_not_positive) and then
 *    hulls the four corner enclosures; per-variable monotonicity puts the
 *    extreme values of base^expo at box corners, so the hull is sound
 *  - one-sided powers are bound streams: each element evaluates a rational
 *    power at one precision rung; preconditions that cannot be witnessed
 *    (base >= 1, exponent >= 0) are refuted lazily when an enclosure proves
 *    them false
 */

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

#include "dedekind/bisection.hpp"
#include "dedekind/error.hpp"
#include "dedekind/interval.hpp"
#include "dedekind/onesided.hpp"
#include "dedekind/rational.hpp"
#include "dedekind/real.hpp"

namespace dedekind {

namespace detail {

/// Precision schedule for budget-free refinement loops: linear for the
/// first rungs, then geometric, so loops that need rung ~ b * bits(eps)
/// (roots of values at zero) finish in O(log) attempts.
inline long grow_schedule(long start, long j) {
    if (j <= 32) return start + j;
    return start + 32 + (1L << std::min<long>(j - 32, 21));
}

/// Attempt index beyond which grow_schedule has saturated; hitting it means
/// a refinement loop that mathematically must converge did not.
inline constexpr long kScheduleLimit = 56;

inline Rat floor_to_grid(const Rat& q, long bits) {
    const Rat scaled = q * pow2(bits);
    return Rat(floor(scaled)) * pow2(-bits);
}

inline Rat ceil_to_grid(const Rat& q, long bits) {
    const Rat scaled = q * pow2(bits);
    return Rat(ceil(scaled)) * pow2(-bits);
}

/// Bits of absolute precision a target width asks for (0 for widths >= 1).
inline long width_bits(const Rat& w) { return std::max<long>(0, -floor_log2(w)); }

/**
 * @brief Exact integer floor of the d-th root of n >= 0.
 *
 * Integer Newton from above: x <- ((d-1)x + n/x^{d-1}) / d with floor
 * division decreases monotonically to floor(n^{1/d}); the final adjustment
 * loop runs at most a couple of steps.
 */
inline Int iroot_floor(const Int& n, long d) {
    if (n < 0) throw std::logic_error("iroot_floor: negative radicand");
    if (n == 0) return 0;
    if (d == 1) return n;
    if (d == 2) return sqrt(n);
    const long bits = static_cast<long>(msb(n)) + 1;
    Int x = Int(1) << ((bits + d - 1) / d);  // 2^ceil(bits/d) >= the root
    for (;;) {
        const Int y = (Int(d - 1) * x + n / int_pow(x, Int(d - 1))) / d;
        if (y >= x) break;
        x = y;
    }
    while (int_pow(x, Int(d)) > n) --x;
    return x;
}

/**
 * @brief Fixed-point interval at a shared dyadic scale: the value lies in
 *        [lo, hi] / 2^scale. All engine arithmetic happens on these raw
 *        integer mantissas — shifts, multiplies, exact integer roots — so
 *        no step pays rational (gcd) canonicalization at high precision.
 */
struct FixIv {
    Int lo, hi;
};

inline FixIv fix_of_rat(const Rat& q, long scale) {
    const Int sn = q.num() << scale;
    return {floor_div(sn, q.den()), ceil_div(sn, q.den())};
}

inline RInterval fix_to_interval(const FixIv& a, long scale) {
    const Int den = Int(1) << scale;
    return RInterval(Rat(a.lo, den), Rat(a.hi, den));
}

/// Outward product of non-negative fixed-point intervals.
inline FixIv fix_mul(const FixIv& a, const FixIv& b, long scale) {
    return {(a.lo * b.lo) >> scale, ceil_div(a.hi * b.hi, Int(1) << scale)};
}

/// Outward scaling by an exact positive rational.
inline FixIv fix_scale(const FixIv& a, const Rat& q) {
    return {floor_div(a.lo * q.num(), q.den()), ceil_div(a.hi * q.num(), q.den())};
}

/// Outward small natural power.
inline FixIv fix_pow_small(const FixIv& a, long n, long scale) {
    if (n == 0) return {Int(1) << scale, Int(1) << scale};
    const Int down = Int(1) << (scale * (n - 1));
    return {floor_div(int_pow(a.lo, Int(n)), down), ceil_div(int_pow(a.hi, Int(n)), down)};
}

/// Outward d-th root: (m/2^s)^{1/d} = (m * 2^{s(d-1)})^{1/d} / 2^s, with the
/// integer root exact to one ulp in each direction.
inline FixIv fix_root(const FixIv& a, long d, long scale) {
    const Int lo = iroot_floor(a.lo << (scale * (d - 1)), d);
    const Int shifted_hi = a.hi << (scale * (d - 1));
    Int hi = iroot_floor(shifted_hi, d);
    if (int_pow(hi, Int(d)) != shifted_hi) ++hi;
    return {lo, hi};
}

/// Magnitudes whose binary exponent passes this cap make sub-delta
/// enclosures unaffordable; the engine then returns coarse-but-sound bounds
/// and lets the caller's width check deal with it.
inline constexpr long kMagnitudeCapBits = 65536;

/// Largest exponent integer part / power degree expanded exactly.
inline constexpr long kIntExponentCap = 1000000;

/**
 * @brief Sound enclosure of base^expo (base > 0, expo rational), of width
 *        <= delta whenever that is affordable at bounded working precision.
 *        The result is an enclosure unconditionally; only its width is
 *        best-effort, and the exact width check makes that visible.
 */
inline RInterval pow_q_enclosure(const Rat& base, const Rat& expo, const Rat& delta) {
    if (base.sign() <= 0) throw std::logic_error("pow_q_enclosure: base must be positive");
    if (delta.sign() <= 0) throw std::logic_error("pow_q_enclosure: delta must be positive");
    if (expo.is_zero() || base == Rat(1)) return RInterval(Rat(1), Rat(1));

    if (expo.sign() < 0) {
        // Invert an enclosure of base^{-expo}; retarget the inner width so
        // the inversion lands under delta once the magnitude is known.
        Rat want = delta;
        std::optional<RInterval> sound;
        for (int t = 0; t < 64; ++t) {
            const RInterval p = pow_q_enclosure(base, -expo, want);
            if (p.lo.sign() > 0) {
                const RInterval inv(Rat(1) / p.hi, Rat(1) / p.lo);
                if (inv.width() <= delta) return inv;
                sound = inv;
                want = min(want / 4, delta * p.lo * p.lo / 2);
            } else {
                want = want / 16;
            }
        }
        if (sound) return *sound;  // wide but correct: magnitude past affordability
        throw std::logic_error("pow_q_enclosure: inverse refinement failed to converge");
    }

    // Exponents with a large odd denominator factor are widened to a dyadic
    // exponent bracket first: base^e is monotone in e for fixed base, so
    // hulling the two dyadic corner powers encloses every e between them.
    Int odd = expo.den();
    while ((odd & 1) == 0) odd >>= 1;
    if (odd > 64) {
        long j = width_bits(delta) + 8;
        std::optional<RInterval> sound;
        for (int attempt = 0; attempt < 48; ++attempt) {
            const Rat e1 = floor_to_grid(expo, j);
            const Rat e2 = e1 + pow2(-j);
            const RInterval out =
                hull(pow_q_enclosure(base, e1, delta / 4), pow_q_enclosure(base, e2, delta / 4));
            if (out.width() <= delta) return out;
            sound = sound ? intersect(*sound, out) : out;
            j += 32;
        }
        return *sound;  // wide but correct
    }

    const Int c = floor(expo);
    if (c > kIntExponentCap)
        throw std::range_error("pow_q_enclosure: exponent integer part " + c.str() +
                               " too large to evaluate");
    const Rat int_part = nat_pow(base, c);  // exact: c >= 0 since expo > 0
    const Rat f = expo - Rat(c);            // in [0, 1)
    if (f.is_zero()) return RInterval(int_part, int_part);

    // f = p / (d * 2^k) with d odd: base^f = (base^{1/d})^{p/2^k}.
    Int den = f.den();
    long k = 0;
    while ((den & 1) == 0) {
        den >>= 1;
        ++k;
    }
    const Int d = den;
    const Int p = f.num();
    const Int c2 = p >> k;         // floor(p / 2^k), in [0, d)
    const Int p2 = p - (c2 << k);  // p mod 2^k: the binary fraction bits

    // Every partial product stays within int_part * max(1, base)^2; the
    // per-step error tolerance divides by that magnitude so absolute error
    // stays under delta. Past the cap, fall back to the trivial bracket
    // int_part * [min(1, base), max(1, base)] (sound since 0 <= f < 1).
    const Rat mag = max(Rat(1), int_part) * max(Rat(1), base) * max(Rat(1), base);
    if (floor_log2(mag) > kMagnitudeCapBits || -floor_log2(int_part) > kMagnitudeCapBits) {
        return base >= Rat(1) ? RInterval(int_part, int_part * base)
                              : RInterval(int_part * base, int_part);
    }

    long scale = width_bits(delta) + floor_log2(mag) + 2 * k + 64;
    if (base < Rat(1)) scale += -floor_log2(base) + 8;  // keep base resolvable
    const long dl = static_cast<long>(d);
    const long c2l = static_cast<long>(c2);
    for (int attempt = 0; attempt < 48; ++attempt) {
        const FixIv B = fix_of_rat(base, scale);
        const FixIv R = fix_root(B, dl, scale);
        FixIv acc = fix_scale(fix_pow_small(R, c2l, scale), int_part);
        FixIv S = R;  // after i halvings S brackets base^{1/(d*2^i)}
        for (long i = 1; i <= k; ++i) {
            S = fix_root(S, 2, scale);
            if (bit_test(p2, static_cast<unsigned>(k - i))) acc = fix_mul(acc, S, scale);
        }
        const RInterval out = fix_to_interval(acc, scale);
        if (out.width() <= delta) return out;
        scale += 96 + k;
    }
    throw std::logic_error("pow_q_enclosure: precision retry runaway");
}

}  // namespace detail

/**
 * @brief x^a for a natural exponent; x is treated as a non-negative real
 *        (enclosure lows are clamped at 0). x^0 is the constant 1,
 *        including at x = 0.
 */
inline DReal pow_nat(const DReal& x, const Int& a) {
    if (a < 0) throw std::invalid_argument("pow_nat: exponent must be >= 0");
    if (a > detail::kIntExponentCap)
        throw std::range_error("pow_nat: exponent " + a.str() + " too large to evaluate");
    if (a == 0) return from_rat(Rat(1));
    return DReal([x, a](const Rat& eps) {
        detail::Refiner rx(x);
        const long start = std::max<long>(0, detail::precision_rung(eps));
        for (long j = 0; j <= detail::kScheduleLimit; ++j) {
            const RInterval& iv = rx.at(detail::grow_schedule(start, j));
            const RInterval cand(nat_pow(max(iv.lo, Rat(0)), a), nat_pow(max(iv.hi, Rat(0)), a));
            if (cand.width() <= eps) return cand;
        }
        throw std::logic_error("pow_nat: refinement failed to converge");
    });
}

/**
 * @brief The b-th root of a non-negative real, by bracketing each endpoint
 *        with the exact rational root search.
 */
inline DReal root(const DReal& x, const Int& b) {
    if (b < 1) throw std::invalid_argument("root: degree must be >= 1");
    if (b > detail::kIntExponentCap)
        throw std::range_error("root: degree " + b.str() + " too large to evaluate");
    if (b == 1) return x;
    return DReal([x, b](const Rat& eps) {
        detail::Refiner rx(x);
        const long start = std::max<long>(0, detail::precision_rung(eps));
        for (long j = 0; j <= detail::kScheduleLimit; ++j) {
            const RInterval& iv = rx.at(detail::grow_schedule(start, j));
            const Rat lo = rat_root_bracket(max(iv.lo, Rat(0)), b, eps / 4).lo;
            const Rat hi = rat_root_bracket(max(iv.hi, Rat(0)), b, eps / 4).hi;
            const RInterval cand(lo, hi);
            if (cand.width() <= eps) return cand;
        }
        throw std::logic_error("root: refinement failed to converge");
    });
}

/**
 * @brief x^q for rational q on a non-negative real x.
 *
 * q = 0 gives the constant 1; integer q is the exact natural power;
 * negative q inverts through inv_pos (so x must be witnessably positive,
 * else errc::not_bounded_away_from_zero). Every other exponent is
 * evaluated per endpoint by the fixed-point engine, which agrees with the
 * root(pow_nat(...)) composition everywhere but stays on integer
 * mantissas, so its cost does not blow up when the base endpoints are
 * wide rationals (as they are for composed arguments).
 */
inline DReal pow_rat(const DReal& x, const Rat& q, Budget budget = {}) {
    if (q.is_zero()) return from_rat(Rat(1));
    if (q.sign() < 0) return inv_pos(pow_rat(x, -q, budget), budget);
    if (q.den() == 1) return pow_nat(x, q.num());
    return DReal([x, q](const Rat& eps) {
        detail::Refiner rx(x);
        const long start = std::max<long>(0, detail::precision_rung(eps));
        for (long j = 0; j <= detail::kScheduleLimit; ++j) {
            const RInterval& iv = rx.at(detail::grow_schedule(start, j));
            const Rat xl = max(iv.lo, Rat(0)), xh = max(iv.hi, Rat(0));
            const Rat lo = xl.is_zero() ? Rat(0) : detail::pow_q_enclosure(xl, q, eps / 8).lo;
            const Rat hi = xh.is_zero() ? Rat(0) : detail::pow_q_enclosure(xh, q, eps / 8).hi;
            const RInterval cand(lo, hi);  // base^q is monotone up in base for q > 0
            if (cand.width() <= eps) return cand;
        }
        throw std::logic_error("pow_rat: refinement failed to converge");
    });
}

/**
 * @brief x^zeta for real base and exponent.
 *
 * Requires base > 0, witnessed eagerly at construction within the budget
 * (errc::base_not_positive on refutation or exhaustion). Refinement hulls
 * the enclosures of the four corner powers; each corner is evaluated by the
 * bounded-precision engine. If the hull cannot reach the requested width
 * within the budget, budget_exhausted_error carries the best achieved.
 */
inline DReal pow_real(const DReal& x, const DReal& zeta, Budget budget = {}) {
    const long n_pos =
        detail::witness_gt(x, Rat(0), budget, errc::base_not_positive, "pow_real: base");
    return DReal([x, zeta, n_pos, budget](const Rat& eps) {
        detail::Refiner rx(x), rz(zeta);
        rx.at(n_pos);  // pin base > 0 into the refinement history
        const long start = std::max(n_pos, std::max<long>(0, detail::precision_rung(eps)));
        std::optional<RInterval> best;
        for (unsigned j = 0; j <= budget.doublings; ++j) {
            const RInterval bi = rx.at(start + static_cast<long>(j));
            const RInterval ei = rz.at(start + static_cast<long>(j));
            const Rat corner_delta = eps / 8;
            std::optional<RInterval> cand;
            for (const Rat& b : {bi.lo, bi.hi}) {
                for (const Rat& e : {ei.lo, ei.hi}) {
                    const RInterval corner = detail::pow_q_enclosure(b, e, corner_delta);
                    cand = cand ? hull(*cand, corner) : corner;
                    if (ei.is_point()) break;
                }
                if (bi.is_point()) break;
            }
            if (cand->width() <= eps) return *cand;
            best = best ? intersect(*best, *cand) : *cand;
        }
        throw budget_exhausted_error("pow_real: width " + best->width().to_string() +
                                         " still above eps " + eps.to_string(),
                                     *best);
    });
}

/**
 * @brief x^zeta for x >= 1 and a lower-real exponent: the supremum of
 *        x^q over rational lower bounds q of zeta.
 *
 * The marker exponent (minus infinity, the empty bound set) yields the
 * empty bound set again. x < 1, once an enclosure proves it, raises
 * errc::base_below_one from the offending bound.
 */
inline LowerReal pow_onesided_exp(const DReal& x, const LowerReal& zeta, Budget budget = {}) {
    if (zeta.is_minus_infinity()) return LowerReal::minus_infinity();
    return LowerReal::from_bounds([x, zeta, budget](std::size_t n) {
        const Rat eps = pow2(-static_cast<long>(n));
        const RInterval xi = x.approximate(eps);
        if (xi.hi < Rat(1))
            throw error(errc::base_below_one,
                        "pow_onesided_exp: base proven below one (enclosure " + xi.to_string() + ")");
        return pow_rat(x, zeta.bound(n), budget).approximate(eps).lo;
    });
}

/// Upper-real-exponent variant: the infimum of x^q over rational upper
/// bounds q of zeta; the plus-infinity marker maps to itself.
inline UpperReal pow_onesided_exp(const DReal& x, const UpperReal& zeta, Budget budget = {}) {
    if (zeta.is_plus_infinity()) return UpperReal::plus_infinity();
    return UpperReal::from_bounds([x, zeta, budget](std::size_t n) {
        const Rat eps = pow2(-static_cast<long>(n));
        const RInterval xi = x.approximate(eps);
        if (xi.hi < Rat(1))
            throw error(errc::base_below_one,
                        "pow_onesided_exp: base proven below one (enclosure " + xi.to_string() + ")");
        return pow_rat(x, zeta.bound(n), budget).approximate(eps).hi;
    });
}

/**
 * @brief x^zeta for a lower-real base x > 0 and a real exponent zeta >= 0:
 *        the supremum of s^zeta over rational lower bounds s of x.
 *
 * Bounds s <= 0 contribute the trivial lower bound 0; bounds in (0, 1) are
 * routed through the reciprocal, s^zeta = 1 / (1/s)^zeta, so the underlying
 * power always has base >= 1. An exponent proven negative raises
 * errc::non_neg_exponent_required.
 */
inline LowerReal pow_onesided_base(const LowerReal& x, const DReal& zeta, Budget budget = {}) {
    if (x.is_minus_infinity()) return LowerReal::minus_infinity();
    return LowerReal::from_bounds([x, zeta, budget](std::size_t n) {
        const Rat eps = pow2(-static_cast<long>(n));
        const RInterval zi = zeta.approximate(eps);
        if (zi.hi < Rat(0))
            throw error(errc::non_neg_exponent_required,
                        "pow_onesided_base: exponent proven negative (enclosure " + zi.to_string() +
                            ")");
        const Rat s = x.bound(n);
        if (s.sign() <= 0) return Rat(0);
        if (s >= Rat(1)) return pow_real(from_rat(s), zeta, budget).approximate(eps).lo;
        const RInterval p = pow_real(from_rat(Rat(1) / s), zeta, budget).approximate(eps);
        return Rat(1) / p.hi;  // hi >= (1/s)^zeta > 0, so this is a sound lower bound
    });
}

/// Upper-real-base variant: the infimum of s^zeta over rational upper
/// bounds s of x; a bound proving the base non-positive is a hard error.
inline UpperReal pow_onesided_base(const UpperReal& x, const DReal& zeta, Budget budget = {}) {
    if (x.is_plus_infinity()) return UpperReal::plus_infinity();
    return UpperReal::from_bounds([x, zeta, budget](std::size_t n) {
        const Rat eps = pow2(-static_cast<long>(n));
        const RInterval zi = zeta.approximate(eps);
        if (zi.hi < Rat(0))
            throw error(errc::non_neg_exponent_required,
                        "pow_onesided_base: exponent proven negative (enclosure " + zi.to_string() +
                            ")");
        const Rat s = x.bound(n);
        if (s.sign() <= 0)
            throw error(errc::base_not_positive,
                        "pow_onesided_base: upper bound " + s.to_string() + " proves base <= 0");
        if (s >= Rat(1)) return pow_real(from_rat(s), zeta, budget).approximate(eps).hi;
        const DReal p = pow_real(from_rat(Rat(1) / s), zeta, budget);
        for (unsigned t = 0; t <= budget.doublings; ++t) {
            const RInterval pi = p.approximate(pow2(-static_cast<long>(n + t)));
            if (pi.lo.sign() > 0) return Rat(1) / pi.lo;  // lo <= (1/s)^zeta: sound upper bound
        }
        throw budget_exhausted_error("pow_onesided_base: reciprocal power not separated from zero",
                                     p.approximate(eps));
    });
}

}  // namespace dedekind
