#pragma once
/**
 * @file expr.hpp
 * @brief Expression language: lexer, parser, AST, printer, and evaluator
 *        turning text like "2^(1/2) + log(10, 2)" into enclosure reals.
 *
 * Key design decisions:
 *  - precedence (loosest to tightest): '+'/'-', then '*'/'/', then unary
 *    minus, then right-associative '^'. So "-2^2" is -(2^2) and "2^-3" is
 *    2^(-3); "1/2" is ordinary division (which the evaluator recognizes as
 *    a literal rational where that matters, e.g. in exponents)
 *  - decimal literals are exact rationals (d * 10^-k), never binary floats
 *  - '^' with a literal integer or literal rational exponent (a literal,
 *    possibly negated or written as a literal quotient) evaluates via
 *    pow_rat; any other exponent shape evaluates via pow_real
 *  - signed multiplication and division are front-end conveniences: the
 *    evaluator witnesses a sign for each factor (enclosure lo >= 0 or
 *    hi <= 0, refining within the budget) and reduces to mul_nonneg and
 *    inv_pos plus negations; a factor whose sign cannot be witnessed raises
 *    a domain error rather than guessing
 *  - every domain error raised during evaluation (including lazily, while
 *    an enclosure is refined) is rethrown as eval_error carrying the byte
 *    span of the offending subexpression; the innermost span wins
 *  - print() emits minimal parentheses; parsing the printed form of any
 *    parsed tree yields a structurally identical tree. (Hand-built trees
 *    can contain literals no parse produces — negative or non-decimal
 *    rationals — which print as "-3" or "p/q" and reparse as Neg or Div.)
 */

#include <cctype>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dedekind/error.hpp"
#include "dedekind/exponentiation.hpp"
#include "dedekind/logarithm.hpp"
#include "dedekind/rational.hpp"
#include "dedekind/real.hpp"

namespace dedekind {

enum class ExprKind { literal, negate, add, sub, mul, div, pow, sqrt_fn, root_fn, log_fn };

/**
 * @brief A node of the expression tree, with the byte span [begin, end) of
 *        the source text it came from (zero for hand-built trees).
 *
 * children layout: negate/sqrt_fn hold one child; add/sub/mul/div/pow hold
 * {left, right}; root_fn holds {radicand, degree literal}; log_fn holds
 * {base, argument}. root_fn's degree child is always a positive integer
 * literal — the parser enforces it.
 */
struct ExprNode {
    ExprKind kind = ExprKind::literal;
    Rat value;  // literal payload; unused for other kinds
    std::vector<ExprNode> children;
    std::size_t begin = 0, end = 0;
};

/// Structural tree equality, ignoring source spans.
inline bool structurally_equal(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
    if (a.kind == ExprKind::literal && a.value != b.value) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!structurally_equal(a.children[i], b.children[i])) return false;
    return true;
}

/// Parse failure: position (0-based byte offset) and what was expected there.
class syntax_error : public std::runtime_error {
public:
    syntax_error(std::size_t position, std::string expected)
        : std::runtime_error("syntax error at byte " + std::to_string(position) + ": expected " +
                             expected),
          position_(position),
          expected_(std::move(expected)) {}

    std::size_t position() const noexcept { return position_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

/// A domain error raised during evaluation, carrying the byte span of the
/// subexpression that caused it.
class eval_error : public error {
public:
    eval_error(std::size_t begin, std::size_t end, errc code, const std::string& detail)
        : error(code, "at bytes [" + std::to_string(begin) + ", " + std::to_string(end) +
                          "): " + detail),
          begin_(begin),
          end_(end) {}

    std::size_t begin() const noexcept { return begin_; }
    std::size_t end() const noexcept { return end_; }

private:
    std::size_t begin_, end_;
};

namespace detail {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
    Tok kind;
    std::size_t begin, end;
};

inline std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    const auto digit = [&](std::size_t j) {
        return j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]));
    };
    while (i < s.size()) {
        const char c = s[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i + 1;
            while (digit(j)) ++j;
            if (j < s.size() && s[j] == '.' && digit(j + 1)) {
                j += 2;
                while (digit(j)) ++j;
            }
            out.push_back({Tok::number, i, j});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i + 1;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            out.push_back({Tok::ident, i, j});
            i = j;
            continue;
        }
        Tok k;
        switch (c) {
            case '+': k = Tok::plus; break;
            case '-': k = Tok::minus; break;
            case '*': k = Tok::star; break;
            case '/': k = Tok::slash; break;
            case '^': k = Tok::caret; break;
            case '(': k = Tok::lparen; break;
            case ')': k = Tok::rparen; break;
            case ',': k = Tok::comma; break;
            default: throw syntax_error(i, "a number, name, operator, or parenthesis");
        }
        out.push_back({k, i, i + 1});
        ++i;
    }
    out.push_back({Tok::end, s.size(), s.size()});
    return out;
}

/// Exact rational value of a number token: "123" or "12.75" (= 1275/100).
inline Rat number_value(std::string_view text) {
    const std::size_t dot = text.find('.');
    if (dot == std::string_view::npos) return Rat(digits_to_int(text));
    const std::string digits =
        std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
    const std::size_t frac_len = text.size() - dot - 1;
    return Rat(digits_to_int(digits), int_pow(Int(10), Int(frac_len)));
}

class Parser {
public:
    Parser(std::string_view text) : text_(text), toks_(lex(text)) {}

    ExprNode parse_all() {
        ExprNode n = parse_sum();
        if (peek().kind != Tok::end) throw syntax_error(peek().begin, "end of input");
        return n;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_++]; }
    bool eat(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    Token expect(Tok k, const char* what) {
        if (peek().kind != k) throw syntax_error(peek().begin, what);
        return take();
    }

    static ExprNode binary(ExprKind kind, ExprNode l, ExprNode r) {
        ExprNode n;
        n.kind = kind;
        n.begin = l.begin;
        n.end = r.end;
        n.children.push_back(std::move(l));
        n.children.push_back(std::move(r));
        return n;
    }

    ExprNode parse_sum() {
        ExprNode n = parse_prod();
        for (;;) {
            if (eat(Tok::plus)) n = binary(ExprKind::add, std::move(n), parse_prod());
            else if (eat(Tok::minus)) n = binary(ExprKind::sub, std::move(n), parse_prod());
            else return n;
        }
    }

    ExprNode parse_prod() {
        ExprNode n = parse_unary();
        for (;;) {
            if (eat(Tok::star)) n = binary(ExprKind::mul, std::move(n), parse_unary());
            else if (eat(Tok::slash)) n = binary(ExprKind::div, std::move(n), parse_unary());
            else return n;
        }
    }

    ExprNode parse_unary() {
        if (peek().kind == Tok::minus) {
            const Token m = take();
            ExprNode n;
            n.kind = ExprKind::negate;
            n.begin = m.begin;
            n.children.push_back(parse_unary());
            n.end = n.children[0].end;
            return n;
        }
        return parse_power();
    }

    ExprNode parse_power() {
        ExprNode base = parse_primary();
        if (!eat(Tok::caret)) return base;
        return binary(ExprKind::pow, std::move(base), parse_unary());
    }

    ExprNode parse_primary() {
        const Token t = peek();
        if (t.kind == Tok::number) {
            take();
            ExprNode n;
            n.kind = ExprKind::literal;
            n.value = number_value(text_.substr(t.begin, t.end - t.begin));
            n.begin = t.begin;
            n.end = t.end;
            return n;
        }
        if (t.kind == Tok::ident) return parse_call();
        if (t.kind == Tok::lparen) {
            const Token open = take();
            ExprNode n = parse_sum();
            const Token close = expect(Tok::rparen, "')'");
            // The node's span covers the parentheses, so diagnostics for the
            // grouped subexpression point at the whole "(...)" text.
            n.begin = open.begin;
            n.end = close.end;
            return n;
        }
        throw syntax_error(t.begin, "a number, function, or '('");
    }

    ExprNode parse_call() {
        const Token name = take();
        const std::string_view id = text_.substr(name.begin, name.end - name.begin);
        ExprKind kind;
        std::size_t arity;
        if (id == "sqrt") {
            kind = ExprKind::sqrt_fn;
            arity = 1;
        } else if (id == "root") {
            kind = ExprKind::root_fn;
            arity = 2;
        } else if (id == "log") {
            kind = ExprKind::log_fn;
            arity = 2;
        } else if (id == "pow") {
            kind = ExprKind::pow;
            arity = 2;
        } else {
            throw syntax_error(name.begin, "one of the functions sqrt, root, log, pow");
        }
        expect(Tok::lparen, "'(' after function name");
        ExprNode n;
        n.kind = kind;
        n.begin = name.begin;
        n.children.push_back(parse_sum());
        if (arity == 2) {
            expect(Tok::comma, "',' between function arguments");
            n.children.push_back(parse_sum());
        }
        const Token close = peek();
        expect(Tok::rparen, "')' closing the function call");
        n.end = close.end;
        if (kind == ExprKind::root_fn) {
            const ExprNode& deg = n.children[1];
            if (deg.kind != ExprKind::literal || deg.value.den() != 1 || deg.value.sign() <= 0)
                throw syntax_error(deg.begin, "a positive integer literal root degree");
        }
        return n;
    }

    std::string_view text_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse an expression; throws syntax_error at the first offending byte.
inline ExprNode parse(std::string_view text) { return detail::Parser(text).parse_all(); }

namespace detail {

// Binding strength used by the printer to decide where parentheses are
// required to reparse into the same tree. Negative literals print with a
// leading '-', so they bind like unary minus.
inline int print_prec(const ExprNode& n) {
    switch (n.kind) {
        case ExprKind::add:
        case ExprKind::sub: return 1;
        case ExprKind::mul:
        case ExprKind::div: return 2;
        case ExprKind::negate: return 3;
        case ExprKind::pow: return 4;
        case ExprKind::literal: return n.value.sign() < 0 ? 3 : 5;
        default: return 5;
    }
}

/// Literal rendering: integers plainly, denominators of the form 2^a * 5^b
/// as exact decimals (the only fractional literals parsing produces), any
/// other rational as "p/q".
inline std::string literal_text(const Rat& q) {
    Int d = q.den();
    long twos = 0, fives = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++twos;
    }
    while (d % 5 == 0) {
        d /= 5;
        ++fives;
    }
    if (d != 1) return q.to_string();
    if (twos == 0 && fives == 0) return q.num().str();
    const long k = std::max(twos, fives);
    const Int scaled = q.num() * int_pow(Int(10), Int(k)) / q.den();  // exact by construction
    const Int magnitude = abs(scaled);
    std::string digits = magnitude.str();
    if (digits.size() <= static_cast<std::size_t>(k))
        digits.insert(0, static_cast<std::size_t>(k) + 1 - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(k), ".");
    while (digits.back() == '0') digits.pop_back();
    if (digits.back() == '.') digits.pop_back();
    return (q.sign() < 0 ? "-" : "") + digits;
}

inline void print_into(const ExprNode& n, std::string& out) {
    const auto child = [&](const ExprNode& c, bool parens) {
        if (parens) out += '(';
        print_into(c, out);
        if (parens) out += ')';
    };
    switch (n.kind) {
        case ExprKind::literal: out += literal_text(n.value); return;
        case ExprKind::negate:
            out += '-';
            child(n.children[0], print_prec(n.children[0]) < 3);
            return;
        case ExprKind::add:
        case ExprKind::sub:
        case ExprKind::mul:
        case ExprKind::div: {
            const int p = print_prec(n);
            const char op = n.kind == ExprKind::add   ? '+'
                            : n.kind == ExprKind::sub ? '-'
                            : n.kind == ExprKind::mul ? '*'
                                                      : '/';
            child(n.children[0], print_prec(n.children[0]) < p);
            out += ' ';
            out += op;
            out += ' ';
            child(n.children[1], print_prec(n.children[1]) <= p);
            return;
        }
        case ExprKind::pow:
            child(n.children[0], print_prec(n.children[0]) <= 4);
            out += '^';
            child(n.children[1], print_prec(n.children[1]) < 3);
            return;
        case ExprKind::sqrt_fn:
            out += "sqrt(";
            print_into(n.children[0], out);
            out += ')';
            return;
        case ExprKind::root_fn:
            out += "root(";
            print_into(n.children[0], out);
            out += ", ";
            print_into(n.children[1], out);
            out += ')';
            return;
        case ExprKind::log_fn:
            out += "log(";
            print_into(n.children[0], out);
            out += ", ";
            print_into(n.children[1], out);
            out += ')';
            return;
    }
}

}  // namespace detail

/// Render the tree with minimal parentheses; reparsing yields a
/// structurally identical tree for any parser-produced input.
inline std::string print(const ExprNode& n) {
    std::string out;
    detail::print_into(n, out);
    return out;
}

namespace detail {

inline std::string strip_errc_prefix(const error& e) {
    const std::string name = std::string(e.name()) + ": ";
    const std::string what = e.what();
    return what.rfind(name, 0) == 0 ? what.substr(name.size()) : what;
}

/// Rethrow enclosure-refinement errors from x with this node's span; spans
/// attached deeper in the tree pass through untouched, so the innermost
/// offending subexpression is the one reported.
inline DReal span_wrapped(const DReal& x, std::size_t begin, std::size_t end) {
    return DReal([x, begin, end](const Rat& eps) {
        try {
            return x.approximate(eps);
        } catch (const eval_error&) {
            throw;
        } catch (const error& e) {
            throw eval_error(begin, end, e.code(), strip_errc_prefix(e));
        }
    });
}

/// The exponent shapes that evaluate via pow_rat: a literal, a negated
/// literal shape, or a quotient of literal shapes (with nonzero divisor —
/// a zero divisor falls through to the general path and its domain error).
inline std::optional<Rat> literal_rational(const ExprNode& n) {
    switch (n.kind) {
        case ExprKind::literal: return n.value;
        case ExprKind::negate: {
            const auto c = literal_rational(n.children[0]);
            return c ? std::optional<Rat>(-*c) : std::nullopt;
        }
        case ExprKind::div: {
            const auto l = literal_rational(n.children[0]);
            const auto r = literal_rational(n.children[1]);
            if (l && r && r->sign() != 0) return *l / *r;
            return std::nullopt;
        }
        default: return std::nullopt;
    }
}

/// Witness a sign for x within the budget: true means nonpositive (so the
/// factor enters mul_nonneg negated). Neither sign witnessed => the
/// expression is not evaluable under this budget.
inline bool witness_nonpos(const DReal& x, const Budget& budget, const char* ctx) {
    for (unsigned n = 0; n <= budget.doublings; ++n) {
        const RInterval iv = x.approximate(pow2(-static_cast<long>(n)));
        if (iv.lo >= Rat(0)) return false;
        if (iv.hi <= Rat(0)) return true;
    }
    throw error(errc::budget_exhausted,
                std::string(ctx) + ": sign of a factor not witnessed within budget");
}

inline DReal signed_mul(const DReal& x, const DReal& y, Budget budget) {
    const bool xn = witness_nonpos(x, budget, "mul");
    const bool yn = witness_nonpos(y, budget, "mul");
    const DReal prod = mul_nonneg(xn ? neg(x) : x, yn ? neg(y) : y, budget);
    return xn == yn ? prod : neg(prod);
}

inline DReal signed_div(const DReal& x, const DReal& y, Budget budget) {
    for (unsigned n = 0; n <= budget.doublings; ++n) {
        const RInterval iv = y.approximate(pow2(-static_cast<long>(n)));
        if (iv.lo > Rat(0)) return signed_mul(x, inv_pos(y, budget), budget);
        if (iv.hi < Rat(0)) return neg(signed_mul(x, inv_pos(neg(y), budget), budget));
        if (iv.lo.sign() >= 0 && iv.hi.sign() <= 0)
            throw error(errc::not_bounded_away_from_zero, "div: divisor proven zero");
    }
    throw error(errc::not_bounded_away_from_zero,
                "div: divisor not witnessed away from zero within budget");
}

/// Choose between log (base above one) and log_small_base (base below one)
/// by witnessing which side of one the base lies on.
inline DReal log_dispatch(const DReal& b, const DReal& y, Budget budget) {
    for (unsigned n = 0; n <= budget.doublings; ++n) {
        const RInterval iv = b.approximate(pow2(-static_cast<long>(n)));
        if (iv.lo > Rat(1)) return log(b, y, budget);
        if (iv.hi < Rat(1)) return log_small_base(b, y, budget);
        if (iv.lo >= Rat(1) && iv.hi <= Rat(1))
            throw error(errc::base_not_above_one, "log: base proven equal to one");
    }
    throw error(errc::base_not_above_one,
                "log: base not witnessed on either side of one within budget");
}

}  // namespace detail

/**
 * @brief Evaluate the tree to an enclosure real. Domain errors — both the
 *        eager witness failures raised here and the lazy ones raised later
 *        while the result refines — surface as eval_error with the byte
 *        span of the offending subexpression.
 */
inline DReal eval_real(const ExprNode& node, Budget budget = {}) {
    const auto guarded = [&](auto&& make) -> DReal {
        try {
            return detail::span_wrapped(make(), node.begin, node.end);
        } catch (const eval_error&) {
            throw;
        } catch (const error& e) {
            throw eval_error(node.begin, node.end, e.code(), detail::strip_errc_prefix(e));
        }
    };
    switch (node.kind) {
        case ExprKind::literal: return from_rat(node.value);
        case ExprKind::negate: return neg(eval_real(node.children[0], budget));
        case ExprKind::add:
            return add(eval_real(node.children[0], budget), eval_real(node.children[1], budget));
        case ExprKind::sub:
            return sub(eval_real(node.children[0], budget), eval_real(node.children[1], budget));
        case ExprKind::mul: {
            const DReal l = eval_real(node.children[0], budget);
            const DReal r = eval_real(node.children[1], budget);
            return guarded([&] { return detail::signed_mul(l, r, budget); });
        }
        case ExprKind::div: {
            const DReal l = eval_real(node.children[0], budget);
            const DReal r = eval_real(node.children[1], budget);
            return guarded([&] { return detail::signed_div(l, r, budget); });
        }
        case ExprKind::pow: {
            const DReal base = eval_real(node.children[0], budget);
            if (const auto q = detail::literal_rational(node.children[1]))
                return guarded([&] { return pow_rat(base, *q, budget); });
            const DReal zeta = eval_real(node.children[1], budget);
            return guarded([&] { return pow_real(base, zeta, budget); });
        }
        case ExprKind::sqrt_fn: {
            const DReal x = eval_real(node.children[0], budget);
            return guarded([&] { return root(x, 2); });
        }
        case ExprKind::root_fn: {
            const DReal x = eval_real(node.children[0], budget);
            const Int degree = node.children[1].value.num();
            return guarded([&] { return root(x, degree); });
        }
        case ExprKind::log_fn: {
            const DReal b = eval_real(node.children[0], budget);
            const DReal y = eval_real(node.children[1], budget);
            return guarded([&] { return detail::log_dispatch(b, y, budget); });
        }
    }
    throw std::logic_error("eval_real: unhandled node kind");
}

/// Evaluate to an enclosure of width <= eps (eps > 0).
inline RInterval eval(const ExprNode& node, const Rat& eps, Budget budget = {}) {
    return eval_real(node, budget).approximate(eps);
}

}  // namespace dedekind
