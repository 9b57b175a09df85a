#pragma once
/**
 * @file real.hpp
 * @brief Reals as enclosure generators: ask one for any eps > 0 and it
 *        answers with a rational interval of width <= eps containing the
 *        value. All answers for one real pairwise intersect, so refining
 *        never contradicts an earlier answer.
 *
 * Key design decisions:
 *  - a DReal wraps a generator function plus a per-eps memo; memoization is
 *    observationally pure (same eps always returns the same interval) and
 *    thread-safe (map under a mutex, first writer wins)
 *  - arithmetic that is total (add/neg/sub) carries no budget; anything that
 *    must witness a strict fact (positivity, separation) takes a Budget
 *    bounding how many precision doublings it may spend before giving up
 *  - witness scans run eagerly at construction where a precondition is
 *    needed to define the result at all (inv_pos), and lazily inside
 *    refinement where only refutation is possible (mul_nonneg)
 */

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "dedekind/error.hpp"
#include "dedekind/interval.hpp"
#include "dedekind/rational.hpp"

namespace dedekind {

/// Refinement-step limit for semi-decidable searches: how many times a
/// search may halve its working precision before reporting failure.
struct Budget {
    unsigned doublings = 64;
};

/// Raised when a refinement loop hits its budget before reaching the
/// requested width; carries the tightest enclosure achieved.
class budget_exhausted_error : public error {
public:
    budget_exhausted_error(const std::string& detail, RInterval best)
        : error(errc::budget_exhausted, detail + "; best enclosure " + best.to_string()),
          best_(std::move(best)) {}

    const RInterval& best() const noexcept { return best_; }

private:
    RInterval best_;
};

/**
 * @brief A real number presented as an enclosure generator.
 *
 * approximate(eps) returns [lo, hi] with lo <= value <= hi and
 * hi - lo <= eps. Copies share the underlying generator and memo.
 */
class DReal {
public:
    using Generator = std::function<RInterval(const Rat& eps)>;

    explicit DReal(Generator gen) : state_(std::make_shared<State>(std::move(gen))) {}

    RInterval approximate(const Rat& eps) const {
        if (eps.sign() <= 0)
            throw error(errc::non_positive_step, "approximate: eps " + eps.to_string() + " is not positive");
        State& st = *state_;
        {
            std::lock_guard<std::mutex> lock(st.mu);
            if (auto it = st.memo.find(eps); it != st.memo.end()) return it->second;
        }
        RInterval out = st.gen(eps);  // computed outside the lock; generators are deterministic
        if (out.width() > eps)
            throw std::logic_error("DReal: generator returned width " + out.width().to_string() +
                                   " for eps " + eps.to_string());
        std::lock_guard<std::mutex> lock(st.mu);
        auto [it, inserted] = st.memo.emplace(eps, std::move(out));
        return it->second;  // first writer wins: one answer per eps, ever
    }

private:
    struct State {
        explicit State(Generator g) : gen(std::move(g)) {}
        Generator gen;
        std::mutex mu;
        std::map<Rat, RInterval> memo;
    };
    std::shared_ptr<State> state_;
};

namespace detail {

/// Smallest n with 2^-n <= eps — the precision rung refinement starts at.
inline long precision_rung(const Rat& eps) {
    return -floor_log2(eps);
}

/// Successively refines one DReal, intersecting every answer with the
/// history so facts already witnessed (like lo > 0) are never lost.
class Refiner {
public:
    explicit Refiner(DReal x) : x_(std::move(x)) {}

    const RInterval& at(long n) {
        RInterval iv = x_.approximate(pow2(-n));
        best_ = best_ ? intersect(*best_, iv) : iv;
        return *best_;
    }

    const RInterval& current() const { return *best_; }

private:
    DReal x_;
    std::optional<RInterval> best_;
};

/// Witness x > bound: returns the rung n at which lo > bound first held.
/// Throws `code` either when hi <= bound (refuted) or when the budget runs
/// out (not witnessed).
inline long witness_gt(const DReal& x, const Rat& bound, const Budget& budget, errc code,
                       const std::string& ctx) {
    for (unsigned n = 0; n <= budget.doublings; ++n) {
        const RInterval iv = x.approximate(pow2(-static_cast<long>(n)));
        if (iv.lo > bound) return static_cast<long>(n);
        if (iv.hi <= bound)
            throw error(code, ctx + ": proven not above " + bound.to_string() +
                                  " (enclosure " + iv.to_string() + ")");
    }
    throw error(code, ctx + ": not witnessed above " + bound.to_string() + " within " +
                          std::to_string(budget.doublings) + " doublings");
}

/// Mirror of witness_gt for x < bound.
inline long witness_lt(const DReal& x, const Rat& bound, const Budget& budget, errc code,
                       const std::string& ctx) {
    for (unsigned n = 0; n <= budget.doublings; ++n) {
        const RInterval iv = x.approximate(pow2(-static_cast<long>(n)));
        if (iv.hi < bound) return static_cast<long>(n);
        if (iv.lo >= bound)
            throw error(code, ctx + ": proven not below " + bound.to_string() +
                                  " (enclosure " + iv.to_string() + ")");
    }
    throw error(code, ctx + ": not witnessed below " + bound.to_string() + " within " +
                          std::to_string(budget.doublings) + " doublings");
}

}  // namespace detail

/// The rational q embedded as a point enclosure.
inline DReal from_rat(const Rat& q) {
    return DReal([q](const Rat&) { return RInterval(q, q); });
}

inline DReal add(const DReal& x, const DReal& y) {
    return DReal([x, y](const Rat& eps) {
        const Rat half = eps / 2;
        const RInterval a = x.approximate(half), b = y.approximate(half);
        return RInterval(a.lo + b.lo, a.hi + b.hi);
    });
}

inline DReal neg(const DReal& x) {
    return DReal([x](const Rat& eps) {
        const RInterval a = x.approximate(eps);
        return RInterval(-a.hi, -a.lo);
    });
}

inline DReal sub(const DReal& x, const DReal& y) { return add(x, neg(y)); }

/**
 * @brief Product of two non-negative reals.
 *
 * Enclosure lows are clamped at 0 (harmless for truly non-negative values);
 * an operand proven negative (hi < 0 at some precision) raises
 * errc::negative_operand during refinement.
 */
inline DReal mul_nonneg(const DReal& x, const DReal& y, Budget budget = {}) {
    return DReal([x, y, budget](const Rat& eps) {
        detail::Refiner rx(x), ry(y);
        const long start = std::max<long>(0, detail::precision_rung(eps));
        std::optional<RInterval> best;
        for (unsigned j = 0; j <= budget.doublings; ++j) {
            const RInterval& a = rx.at(start + j);
            const RInterval& b = ry.at(start + j);
            if (a.hi.sign() < 0 || b.hi.sign() < 0)
                throw error(errc::negative_operand,
                            "mul_nonneg: operand proven negative (enclosures " + a.to_string() +
                                ", " + b.to_string() + ")");
            const RInterval cand(max(a.lo, Rat(0)) * max(b.lo, Rat(0)),
                                 max(a.hi, Rat(0)) * max(b.hi, Rat(0)));
            if (cand.width() <= eps) return cand;
            best = best ? intersect(*best, cand) : cand;
        }
        throw budget_exhausted_error("mul_nonneg: width " + best->width().to_string() +
                                         " still above eps " + eps.to_string(),
                                     *best);
    });
}

/**
 * @brief Reciprocal of a real that can be witnessed strictly positive.
 *
 * The positivity witness is searched eagerly at construction (throws
 * errc::not_bounded_away_from_zero on refutation or budget exhaustion), so
 * a successfully constructed inverse always refines.
 */
inline DReal inv_pos(const DReal& x, Budget budget = {}) {
    const long n_pos =
        detail::witness_gt(x, Rat(0), budget, errc::not_bounded_away_from_zero, "inv_pos");
    return DReal([x, n_pos, budget](const Rat& eps) {
        detail::Refiner rx(x);
        rx.at(n_pos);  // pin the positivity witness into the history
        const Rat lo_w = rx.current().lo;
        // 1/x magnifies width by 1/lo^2; skip rungs that cannot possibly work.
        const long start = std::max(n_pos, detail::precision_rung(eps) +
                                               2 * std::max<long>(0, -floor_log2(lo_w)));
        std::optional<RInterval> best;
        for (unsigned j = 0; j <= budget.doublings; ++j) {
            const RInterval& a = rx.at(start + j);
            const RInterval cand(Rat(1) / a.hi, Rat(1) / a.lo);
            if (cand.width() <= eps) return cand;
            best = best ? intersect(*best, cand) : cand;
        }
        throw budget_exhausted_error("inv_pos: width " + best->width().to_string() +
                                         " still above eps " + eps.to_string(),
                                     *best);
    });
}

/// Outcome of trying to separate two reals by refinement.
struct Separation {
    enum class Kind { less, greater, indistinguishable };
    Kind kind;
    /// For less/greater: the witnessed gap between the enclosures.
    /// For indistinguishable: the smallest enclosure overlap achieved.
    Rat best_gap;

    bool decided() const noexcept { return kind != Kind::indistinguishable; }
};

/**
 * @brief Try to order two reals by refining both until their enclosures
 *        separate. Equality is not decidable, so running out of budget is
 *        an answer (Kind::indistinguishable), not an error.
 */
inline Separation cmp_apart(const DReal& x, const DReal& y, Budget budget = {}) {
    detail::Refiner rx(x), ry(y);
    std::optional<Rat> best_overlap;
    for (unsigned n = 0; n <= budget.doublings; ++n) {
        const RInterval& a = rx.at(static_cast<long>(n));
        const RInterval& b = ry.at(static_cast<long>(n));
        if (a.hi < b.lo) return {Separation::Kind::less, b.lo - a.hi};
        if (b.hi < a.lo) return {Separation::Kind::greater, a.lo - b.hi};
        const Rat overlap = min(a.hi, b.hi) - max(a.lo, b.lo);
        best_overlap = best_overlap ? min(*best_overlap, overlap) : overlap;
    }
    return {Separation::Kind::indistinguishable, *best_overlap};
}

/**
 * @brief Decimal rendering of an enclosure at a fixed digit count:
 *        lo rounds toward -infinity, hi toward +infinity; if both round to
 *        the same string that value is returned alone, otherwise the
 *        bracket "[lo, hi]".
 */
inline std::string render_decimal(const RInterval& iv, unsigned digits) {
    const std::string lo = decimal_string(iv.lo, digits, round_dir::down);
    const std::string hi = decimal_string(iv.hi, digits, round_dir::up);
    if (lo == hi) return lo;
    return "[" + lo + ", " + hi + "]";
}

}  // namespace dedekind
