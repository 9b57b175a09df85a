#pragma once
/**
 * @file rational.hpp
 * @brief Arbitrary-precision rationals in canonical form, plus the finitary
 *        searches (Archimedean bound, Bernoulli growth index) that the
 *        enclosure algorithms lean on.
 *
 * Key design decisions:
 *  - numerator/denominator are boost::multiprecision::cpp_int (header-only,
 *    exact); the rational layer itself is hand-rolled so canonical form,
 *    parsing and printing are under our control
 *  - canonical form is maintained eagerly: den > 0, gcd(|num|, den) == 1,
 *    and 0 is stored as 0/1 — equality is then plain field equality
 *  - comparisons use cross-multiplication, never division
 *  - misuse (zero denominator, malformed text) throws std:: exceptions;
 *    witness-search failures throw dedekind::error with a stable code
 */

#include <compare>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "dedekind/error.hpp"

namespace dedekind {

using Int = boost::multiprecision::cpp_int;

/// Floor division (quotient rounded toward -infinity). Requires b != 0.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;              // cpp_int division truncates toward zero
    if (q * b != a && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Ceiling division (quotient rounded toward +infinity). Requires b != 0.
inline Int ceil_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (q * b != a && ((a < 0) == (b < 0))) ++q;
    return q;
}

/// base^e for a non-negative integer exponent, by binary exponentiation.
inline Int int_pow(Int base, Int e) {
    if (e < 0) throw std::invalid_argument("int_pow: negative exponent");
    Int acc = 1;
    while (e > 0) {
        if (bit_test(e, 0)) acc *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return acc;
}

/**
 * @brief Exact rational number p/q in canonical form.
 *
 * Invariants: den() > 0, gcd(|num()|, den()) == 1, zero is 0/1.
 */
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(int n) : num_(n), den_(1) {}                 // NOLINT: implicit by design
    Rat(const Int& n) : num_(n), den_(1) {}          // NOLINT: implicit by design
    Rat(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

    const Int& num() const noexcept { return num_; }
    const Int& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_ == 0; }
    bool is_integer() const noexcept { return den_ == 1; }
    /// -1, 0, or +1.
    int sign() const noexcept { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

    Rat operator-() const { return Rat(detail_tag{}, -num_, den_); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
        return Rat(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;  // canonical form
    }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        const Int lhs = a.num_ * b.den_, rhs = b.num_ * a.den_;
        return lhs < rhs   ? std::strong_ordering::less
               : lhs > rhs ? std::strong_ordering::greater
                           : std::strong_ordering::equal;
    }

    /**
     * Parse "p/q", "n", or a decimal "d.ddd" (exact: "0.1" is 1/10).
     * A leading '-' or '+' is accepted. Throws std::invalid_argument on
     * malformed text and std::domain_error on a zero denominator.
     */
    static Rat parse(std::string_view text);

    /// "p/q", or just "n" when the denominator is 1.
    std::string to_string() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
        return os << r.to_string();
    }

private:
    struct detail_tag {};  // bypass reduce() when canonical by construction
    Rat(detail_tag, Int n, Int d) : num_(std::move(n)), den_(std::move(d)) {}

    void reduce() {
        if (den_ == 0) throw std::domain_error("Rat: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        if (num_ == 0) { den_ = 1; return; }
        Int g = gcd(num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    Int num_;
    Int den_;
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }
inline const Rat& min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }

/// Three-way comparison as an int: -1 if a < b, 0 if equal, +1 if a > b.
inline int rat_cmp(const Rat& a, const Rat& b) {
    const auto c = a <=> b;
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

/// Largest integer <= r.
inline Int floor(const Rat& r) { return floor_div(r.num(), r.den()); }
/// Smallest integer >= r.
inline Int ceil(const Rat& r) { return ceil_div(r.num(), r.den()); }

/// 2^e as an exact rational; e may be negative.
inline Rat pow2(long e) {
    if (e >= 0) return Rat(Int(1) << e);
    return Rat(Int(1), Int(1) << (-e));
}

/// Largest e with 2^e <= r. Requires r > 0.
inline long floor_log2(const Rat& r) {
    if (r.sign() <= 0) throw std::domain_error("floor_log2: argument must be > 0");
    long e = static_cast<long>(msb(r.num())) - static_cast<long>(msb(r.den()));
    while (pow2(e) > r) --e;
    while (pow2(e + 1) <= r) ++e;
    return e;
}

/**
 * @brief x^a for natural a, exactly.
 *
 * Throws errc::negative_base if x < 0; x^0 == 1 for every x >= 0
 * (including x == 0).
 */
inline Rat nat_pow(const Rat& x, const Int& a) {
    if (x.sign() < 0) throw error(errc::negative_base, "nat_pow: base " + x.to_string() + " is negative");
    if (a < 0) throw std::invalid_argument("nat_pow: exponent must be a natural number");
    return Rat(int_pow(x.num(), a), int_pow(x.den(), a));
}

/**
 * @brief Least natural N with N*x > y.
 *
 * The least such N (not merely some N) is returned so callers can rely on
 * N-1 failing; in particular y <= 0 gives N == 0 when 0 > y, else N == 1.
 * Throws errc::non_positive_step if x <= 0.
 */
inline Int archimedean_bound(const Rat& x, const Rat& y) {
    if (x.sign() <= 0)
        throw error(errc::non_positive_step, "archimedean_bound: step " + x.to_string() + " is not positive");
    // N > y/x, minimal: floor(y/x) + 1, clamped to the naturals.
    Int n = floor_div(y.num() * x.den(), y.den() * x.num()) + 1;
    if (n < 0) n = 0;
    return n;
}

/**
 * @brief Least natural k with x_hi < 1 + k*delta.
 *
 * Because (1+delta)^k >= 1 + k*delta, this k certifies (1+delta)^k > x_hi
 * without computing the power. Throws errc::non_positive_step if delta <= 0.
 */
inline Int bernoulli_k(const Rat& x_hi, const Rat& delta) {
    if (delta.sign() <= 0)
        throw error(errc::non_positive_step, "bernoulli_k: step " + delta.to_string() + " is not positive");
    if (x_hi < Rat(1)) return 0;
    const Rat ratio = (x_hi - Rat(1)) / delta;
    return floor_div(ratio.num(), ratio.den()) + 1;
}

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

// Reads a run of decimal digits as an Int.  Leading zeros are stripped first
// because the big-integer string constructor would treat "0..." as an octal
// prefix.
inline Int digits_to_int(std::string_view s) {
    const std::size_t nz = s.find_first_not_of('0');
    if (nz == std::string_view::npos) return Int(0);
    return Int(std::string(s.substr(nz)));
}

}  // namespace detail

inline Rat Rat::parse(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw std::invalid_argument("Rat::parse: empty input \"" + std::string(text) + "\"");

    Rat value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view p = s.substr(0, slash), q = s.substr(slash + 1);
        if (!detail::all_digits(p) || !detail::all_digits(q))
            throw std::invalid_argument("Rat::parse: malformed fraction \"" + std::string(text) + "\"");
        value = Rat(detail::digits_to_int(p), detail::digits_to_int(q));
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot), frac = s.substr(dot + 1);
        if (!detail::all_digits(whole) || !detail::all_digits(frac))
            throw std::invalid_argument("Rat::parse: malformed decimal \"" + std::string(text) + "\"");
        const Int scale = int_pow(10, Int(frac.size()));
        value = Rat(detail::digits_to_int(whole) * scale + detail::digits_to_int(frac), scale);
    } else {
        if (!detail::all_digits(s))
            throw std::invalid_argument("Rat::parse: malformed number \"" + std::string(text) + "\"");
        value = Rat(detail::digits_to_int(s));
    }
    return negative ? -value : value;
}

/// Rounding direction for decimal rendering.
enum class round_dir { down, up };  // toward -infinity / toward +infinity

/**
 * @brief Fixed-point decimal rendering with `digits` places after the point.
 *
 * round_dir::down rounds toward -infinity, round_dir::up toward +infinity,
 * so rendering an interval's lo down and hi up never loses containment.
 */
inline std::string decimal_string(const Rat& r, unsigned digits, round_dir dir) {
    const Int scaled_num = r.num() * int_pow(10, Int(digits));
    const Int v = dir == round_dir::down ? floor_div(scaled_num, r.den())
                                         : ceil_div(scaled_num, r.den());
    std::string body = (v < 0 ? Int(-v) : v).str();
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    if (digits > 0) body.insert(body.size() - digits, ".");
    if (v < 0) body.insert(0, "-");
    return body;
}

}  // namespace dedekind
