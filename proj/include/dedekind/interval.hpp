#pragma once
/**
 * @file interval.hpp
 * @brief Closed rational intervals — the currency every enclosure
 *        generator trades in.
 */

#include <ostream>
#include <stdexcept>
#include <string>

#include "dedekind/rational.hpp"

namespace dedekind {

/// Closed interval [lo, hi] with rational endpoints, lo <= hi.
struct RInterval {
    Rat lo;
    Rat hi;

    RInterval() = default;
    RInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (hi < lo)
            throw std::logic_error("RInterval: lo " + lo.to_string() + " exceeds hi " + hi.to_string());
    }

    Rat width() const { return hi - lo; }
    bool contains(const Rat& q) const { return lo <= q && q <= hi; }
    bool contains(const RInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool is_point() const { return lo == hi; }

    friend bool operator==(const RInterval& a, const RInterval& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }

    std::string to_string() const { return "[" + lo.to_string() + ", " + hi.to_string() + "]"; }

    friend std::ostream& operator<<(std::ostream& os, const RInterval& iv) {
        return os << iv.to_string();
    }
};

inline bool intersects(const RInterval& a, const RInterval& b) {
    return a.lo <= b.hi && b.lo <= a.hi;
}

/// Intersection of two overlapping intervals; throws if they are disjoint
/// (an enclosure pair for one value can never be disjoint).
inline RInterval intersect(const RInterval& a, const RInterval& b) {
    if (!intersects(a, b))
        throw std::logic_error("intersect: disjoint intervals " + a.to_string() + " and " + b.to_string());
    return RInterval(max(a.lo, b.lo), min(a.hi, b.hi));
}

/// Smallest interval containing both arguments.
inline RInterval hull(const RInterval& a, const RInterval& b) {
    return RInterval(min(a.lo, b.lo), max(a.hi, b.hi));
}

/// Outward rounding to the dyadic grid with denominator 2^bits: lo is pushed
/// down, hi pushed up. Caps endpoint bit growth at a width cost < 2^(1-bits).
inline RInterval round_out_dyadic(const RInterval& iv, unsigned bits) {
    const Int scale = Int(1) << bits;
    Rat lo(floor_div(iv.lo.num() * scale, iv.lo.den()), scale);
    Rat hi(ceil_div(iv.hi.num() * scale, iv.hi.den()), scale);
    return RInterval(std::move(lo), std::move(hi));
}

}  // namespace dedekind
