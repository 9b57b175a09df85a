#pragma once
/**
 * @file onesided.hpp
 * @brief One-sided reals: monotone streams of rational bounds.
 *
 * A LowerReal is a non-decreasing stream of lower bounds (its value is the
 * supremum); an UpperReal is a non-increasing stream of upper bounds (its
 * value is the infimum). Each type also has a distinguished marker element
 * with no bounds at all: LowerReal::minus_infinity() and
 * UpperReal::plus_infinity(). Markers support no arithmetic beyond printing
 * and the is_* query; asking a marker for a bound throws std::logic_error.
 *
 * Key design decisions:
 *  - streams are monotonized on the fly (running max / running min), so a
 *    raw bound function only needs to be sound, not monotone
 *  - computed bounds are memoized in a vector under a mutex: bound(n) is
 *    stable across calls and threads
 *  - unboundedness needs no marker: a LowerReal whose bounds grow without
 *    limit already denotes +infinity, and dually for UpperReal
 */

#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "dedekind/rational.hpp"
#include "dedekind/real.hpp"

namespace dedekind {

class LowerReal {
public:
    using BoundFn = std::function<Rat(std::size_t)>;

    /// The bottom element: no rational is below it.
    static LowerReal minus_infinity() { return LowerReal(nullptr); }

    /// Wraps a sound bound stream; bounds are forced non-decreasing by
    /// taking running maxima.
    static LowerReal from_bounds(BoundFn raw) {
        if (!raw) throw std::invalid_argument("LowerReal::from_bounds: null function");
        return LowerReal(std::make_shared<State>(std::move(raw)));
    }

    bool is_minus_infinity() const noexcept { return state_ == nullptr; }

    /// n-th lower bound; non-decreasing in n.
    Rat bound(std::size_t n) const {
        if (!state_) throw std::logic_error("LowerReal: minus_infinity has no bounds");
        State& st = *state_;
        std::lock_guard<std::mutex> lock(st.mu);
        while (st.memo.size() <= n) {
            Rat v = st.raw(st.memo.size());
            if (!st.memo.empty()) v = max(v, st.memo.back());
            st.memo.push_back(std::move(v));
        }
        return st.memo[n];
    }

    /// "-inf" for the marker, else the first `terms` bounds joined by " <= ".
    std::string to_string(std::size_t terms = 3) const {
        if (is_minus_infinity()) return "-inf";
        std::string out;
        for (std::size_t i = 0; i < terms; ++i) {
            if (i) out += " <= ";
            out += bound(i).to_string();
        }
        return out;
    }

private:
    struct State {
        explicit State(BoundFn f) : raw(std::move(f)) {}
        BoundFn raw;
        std::mutex mu;
        std::vector<Rat> memo;
    };
    explicit LowerReal(std::shared_ptr<State> s) : state_(std::move(s)) {}
    std::shared_ptr<State> state_;
};

class UpperReal {
public:
    using BoundFn = std::function<Rat(std::size_t)>;

    /// The top element: no rational is above it.
    static UpperReal plus_infinity() { return UpperReal(nullptr); }

    /// Wraps a sound bound stream; bounds are forced non-increasing by
    /// taking running minima.
    static UpperReal from_bounds(BoundFn raw) {
        if (!raw) throw std::invalid_argument("UpperReal::from_bounds: null function");
        return UpperReal(std::make_shared<State>(std::move(raw)));
    }

    bool is_plus_infinity() const noexcept { return state_ == nullptr; }

    /// n-th upper bound; non-increasing in n.
    Rat bound(std::size_t n) const {
        if (!state_) throw std::logic_error("UpperReal: plus_infinity has no bounds");
        State& st = *state_;
        std::lock_guard<std::mutex> lock(st.mu);
        while (st.memo.size() <= n) {
            Rat v = st.raw(st.memo.size());
            if (!st.memo.empty()) v = min(v, st.memo.back());
            st.memo.push_back(std::move(v));
        }
        return st.memo[n];
    }

    /// "+inf" for the marker, else the first `terms` bounds joined by " >= ".
    std::string to_string(std::size_t terms = 3) const {
        if (is_plus_infinity()) return "+inf";
        std::string out;
        for (std::size_t i = 0; i < terms; ++i) {
            if (i) out += " >= ";
            out += bound(i).to_string();
        }
        return out;
    }

private:
    struct State {
        explicit State(BoundFn f) : raw(std::move(f)) {}
        BoundFn raw;
        std::mutex mu;
        std::vector<Rat> memo;
    };
    explicit UpperReal(std::shared_ptr<State> s) : state_(std::move(s)) {}
    std::shared_ptr<State> state_;
};

/// The stream of enclosure lows of x at eps = 2^-n: a LowerReal with the
/// same value.
inline LowerReal lower_of(const DReal& x) {
    return LowerReal::from_bounds(
        [x](std::size_t n) { return x.approximate(pow2(-static_cast<long>(n))).lo; });
}

/// The stream of enclosure highs of x at eps = 2^-n: an UpperReal with the
/// same value.
inline UpperReal upper_of(const DReal& x) {
    return UpperReal::from_bounds(
        [x](std::size_t n) { return x.approximate(pow2(-static_cast<long>(n))).hi; });
}

}  // namespace dedekind
