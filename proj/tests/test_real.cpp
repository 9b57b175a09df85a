// Tests for the enclosure-generator reals and the one-sided bound streams.

#include <gtest/gtest.h>

#include <atomic>
#include <vector>

#include "dedekind/bisection.hpp"
#include "dedekind/onesided.hpp"
#include "dedekind/real.hpp"
#include "test_util.hpp"

using namespace dedekind;

namespace {

// An irrational workhorse: the square root of two, straight from the
// rational bracketing primitive. Every answer satisfies lo^2 <= 2 <= hi^2.
DReal make_sqrt2() {
    return DReal([](const Rat& eps) { return rat_root_bracket(Rat(2), 2, eps); });
}

bool encloses_sqrt2(const RInterval& iv) {
    return iv.lo * iv.lo <= Rat(2) && iv.hi * iv.hi >= Rat(2);
}

}  // namespace

TEST(DRealBasics, FromRatIsAPointAtEveryPrecision) {
    const DReal x = from_rat(Rat(22, 7));
    for (const Rat& eps : {Rat(1), Rat(1, 1000), pow2(-40)}) {
        const RInterval iv = x.approximate(eps);
        EXPECT_EQ(iv.lo, Rat(22, 7));
        EXPECT_EQ(iv.hi, Rat(22, 7));
    }
}

TEST(DRealBasics, NonPositiveEpsRejected) {
    const DReal x = from_rat(Rat(1));
    try {
        x.approximate(Rat(0));
        FAIL() << "expected error";
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::non_positive_step);
    }
    EXPECT_THROW(x.approximate(Rat(-1, 2)), error);
}

TEST(DRealBasics, MemoizationComputesEachEpsOnce) {
    auto calls = std::make_shared<std::atomic<int>>(0);
    const DReal x([calls](const Rat& eps) {
        ++*calls;
        return RInterval(Rat(0), min(eps, Rat(1)));
    });
    (void)x.approximate(Rat(1, 8));
    (void)x.approximate(Rat(1, 8));
    EXPECT_EQ(calls->load(), 1);
    (void)x.approximate(Rat(1, 4));
    EXPECT_EQ(calls->load(), 2);
    // Copies share the memo.
    const DReal y = x;
    (void)y.approximate(Rat(1, 8));
    EXPECT_EQ(calls->load(), 2);
}

TEST(DRealBasics, WidthContractEnforced) {
    const DReal bad([](const Rat&) { return RInterval(Rat(0), Rat(1)); });
    EXPECT_NO_THROW(bad.approximate(Rat(2)));
    EXPECT_THROW(bad.approximate(Rat(1, 2)), std::logic_error);
}

TEST(DRealBasics, SqrtTwoRefines) {
    const DReal s = make_sqrt2();
    for (long n : {0L, 5L, 20L, 60L}) {
        const RInterval iv = s.approximate(pow2(-n));
        EXPECT_TRUE(encloses_sqrt2(iv)) << iv.to_string();
        EXPECT_LE(iv.width(), pow2(-n));
    }
}

TEST(LinearOps, RationalEmbedsAddExactly) {
    const DReal x = from_rat(Rat(3, 4)), y = from_rat(Rat(-5, 6));
    const RInterval iv = add(x, y).approximate(pow2(-10));
    EXPECT_EQ(iv.lo, Rat(-1, 12));
    EXPECT_EQ(iv.hi, Rat(-1, 12));
}

TEST(LinearOps, NegFlipsEndpoints) {
    const DReal s = make_sqrt2();
    const RInterval iv = s.approximate(Rat(1, 64));
    const RInterval niv = neg(s).approximate(Rat(1, 64));
    EXPECT_EQ(niv.lo, -iv.hi);
    EXPECT_EQ(niv.hi, -iv.lo);
}

TEST(LinearOps, DifferenceWithItselfEnclosesZero) {
    const DReal s = make_sqrt2();
    const RInterval iv = sub(s, s).approximate(pow2(-30));
    EXPECT_LE(iv.lo, Rat(0));
    EXPECT_GE(iv.hi, Rat(0));
    EXPECT_LE(iv.width(), pow2(-30));
}

TEST(LinearOps, AssociativityOnRationalEmbedsIsExact) {
    std::mt19937_64 rng(2026);
    for (int i = 0; i < 100; ++i) {
        const Rat a = testutil::random_rat(rng, 50, 20), b = testutil::random_rat(rng, 50, 20),
                  c = testutil::random_rat(rng, 50, 20);
        const DReal lhs = add(add(from_rat(a), from_rat(b)), from_rat(c));
        const DReal rhs = add(from_rat(a), add(from_rat(b), from_rat(c)));
        const RInterval li = lhs.approximate(Rat(1, 97)), ri = rhs.approximate(Rat(1, 97));
        EXPECT_EQ(li.lo, a + b + c);
        EXPECT_TRUE(li == ri);
    }
}

TEST(MulNonneg, RationalPointsMultiplyExactly) {
    const RInterval iv = mul_nonneg(from_rat(Rat(2)), from_rat(Rat(3))).approximate(Rat(1, 1000));
    EXPECT_EQ(iv.lo, Rat(6));
    EXPECT_EQ(iv.hi, Rat(6));
}

TEST(MulNonneg, SqrtTwoSquaredEnclosesTwo) {
    const DReal s = make_sqrt2();
    const RInterval iv = mul_nonneg(s, s).approximate(pow2(-40));
    EXPECT_LE(iv.lo, Rat(2));
    EXPECT_GE(iv.hi, Rat(2));
    EXPECT_LE(iv.width(), pow2(-40));
}

TEST(MulNonneg, ZeroAbsorbs) {
    const RInterval iv = mul_nonneg(from_rat(Rat(0)), make_sqrt2()).approximate(Rat(1, 8));
    EXPECT_EQ(iv.lo, Rat(0));
    EXPECT_EQ(iv.hi, Rat(0));
}

TEST(MulNonneg, ProvenNegativeOperandRejected) {
    const DReal p = mul_nonneg(from_rat(Rat(-1)), from_rat(Rat(2)));
    try {
        p.approximate(Rat(1, 4));
        FAIL() << "expected error";
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::negative_operand);
    }
}

TEST(InvPos, RationalPointInvertsExactly) {
    const RInterval iv = inv_pos(from_rat(Rat(2))).approximate(pow2(-20));
    EXPECT_EQ(iv.lo, Rat(1, 2));
    EXPECT_EQ(iv.hi, Rat(1, 2));
}

TEST(InvPos, InverseOfSqrtTwo) {
    const RInterval iv = inv_pos(make_sqrt2()).approximate(pow2(-30));
    // lo <= 1/sqrt(2) <= hi, i.e. 2*lo^2 <= 1 <= 2*hi^2.
    EXPECT_LE(Rat(2) * iv.lo * iv.lo, Rat(1));
    EXPECT_GE(Rat(2) * iv.hi * iv.hi, Rat(1));
    EXPECT_LE(iv.width(), pow2(-30));
}

TEST(InvPos, DoubleInverseEnclosesOriginal) {
    const RInterval iv = inv_pos(inv_pos(make_sqrt2())).approximate(pow2(-25));
    EXPECT_TRUE(encloses_sqrt2(iv)) << iv.to_string();
}

TEST(InvPos, ProvenNonPositiveRejectedImmediately) {
    for (const Rat& q : {Rat(0), Rat(-3)}) {
        try {
            inv_pos(from_rat(q));
            FAIL() << "expected error for " << q.to_string();
        } catch (const error& e) {
            EXPECT_EQ(e.code(), errc::not_bounded_away_from_zero);
        }
    }
}

TEST(InvPos, UnwitnessablePositivityExhaustsBudget) {
    const DReal zeroish = sub(make_sqrt2(), make_sqrt2());  // value 0, never provably <= 0
    try {
        inv_pos(zeroish, Budget{8});
        FAIL() << "expected error";
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::not_bounded_away_from_zero);
    }
}

TEST(CmpApart, SeparablePairsDecide) {
    const DReal s = make_sqrt2();
    const Separation a = cmp_apart(s, from_rat(Rat(3, 2)));
    EXPECT_EQ(a.kind, Separation::Kind::less);
    EXPECT_GT(a.best_gap, Rat(0));

    const Separation b = cmp_apart(s, from_rat(Rat(7, 5)));
    EXPECT_EQ(b.kind, Separation::Kind::greater);
    EXPECT_GT(b.best_gap, Rat(0));
}

TEST(CmpApart, EqualValuesAreIndistinguishable) {
    const DReal s = make_sqrt2();
    const Separation r = cmp_apart(s, s, Budget{16});
    EXPECT_EQ(r.kind, Separation::Kind::indistinguishable);
    EXPECT_GE(r.best_gap, Rat(0));
    EXPECT_LE(r.best_gap, pow2(-16));

    const Separation p = cmp_apart(from_rat(Rat(1)), from_rat(Rat(1)), Budget{4});
    EXPECT_EQ(p.kind, Separation::Kind::indistinguishable);
    EXPECT_EQ(p.best_gap, Rat(0));
}

TEST(CmpApart, BudgetBoundsTheSearch) {
    // An enclosure of zero whose width shrinks with the rung, against the
    // point 2^-20: a 4-doubling scan still sees overlap, 64 doublings
    // separate them.
    const DReal s = make_sqrt2();
    const DReal x = sub(s, s), y = from_rat(pow2(-20));
    EXPECT_EQ(cmp_apart(x, y, Budget{4}).kind, Separation::Kind::indistinguishable);
    EXPECT_EQ(cmp_apart(x, y, Budget{64}).kind, Separation::Kind::less);
}

TEST(Consistency, MixedExpressionsStayConsistentAcrossPrecisions) {
    const DReal s = make_sqrt2();
    const std::vector<DReal> values = {
        from_rat(Rat(7, 3)),
        s,
        add(s, from_rat(Rat(1, 2))),
        mul_nonneg(s, from_rat(Rat(5, 4))),
        inv_pos(add(s, from_rat(Rat(1)))),
        sub(mul_nonneg(s, s), from_rat(Rat(2))),
    };
    const std::vector<Rat> epses = {Rat(1), Rat(1, 7), pow2(-10), pow2(-33), Rat(1, 1000)};
    for (const DReal& v : values) {
        std::vector<RInterval> got;
        for (const Rat& eps : epses) {
            const RInterval iv = v.approximate(eps);
            EXPECT_LE(iv.width(), eps);
            got.push_back(iv);
        }
        for (std::size_t i = 0; i < got.size(); ++i)
            for (std::size_t j = i + 1; j < got.size(); ++j)
                EXPECT_TRUE(intersects(got[i], got[j]))
                    << got[i].to_string() << " vs " << got[j].to_string();
    }
}

TEST(RenderDecimal, OutwardRoundingAndCollapse) {
    EXPECT_EQ(render_decimal(RInterval(Rat(1, 3), Rat(1, 3)), 4), "[0.3333, 0.3334]");
    EXPECT_EQ(render_decimal(RInterval(Rat(-1, 3), Rat(-1, 3)), 4), "[-0.3334, -0.3333]");
    EXPECT_EQ(render_decimal(RInterval(Rat(1, 4), Rat(1, 4)), 2), "0.25");
    EXPECT_EQ(render_decimal(RInterval(Rat(1, 10), Rat(1, 10)), 2), "0.10");
    EXPECT_EQ(render_decimal(RInterval(Rat(1, 1000), Rat(1, 999)), 2), "[0.00, 0.01]");
    // Narrow enclosures that straddle a grid point still collapse when both
    // endpoints round to the same string.
    EXPECT_EQ(render_decimal(RInterval(Rat(2499, 10000), Rat(2501, 10000)), 1), "[0.2, 0.3]");
    EXPECT_EQ(render_decimal(RInterval(Rat(13, 100), Rat(17, 100)), 0), "[0, 1]");
}

TEST(OneSided, LowerBoundsOfSqrtTwoClimb) {
    const LowerReal l = lower_of(make_sqrt2());
    ASSERT_FALSE(l.is_minus_infinity());
    Rat prev = l.bound(0);
    EXPECT_LE(prev * prev, Rat(2));
    for (std::size_t n = 1; n <= 20; ++n) {
        const Rat b = l.bound(n);
        EXPECT_GE(b, prev);
        EXPECT_LE(b * b, Rat(2));
        prev = b;
    }
    // Within 1/2^20 of the value from below.
    EXPECT_GT((prev + pow2(-19)) * (prev + pow2(-19)), Rat(2));
}

TEST(OneSided, UpperBoundsOfSqrtTwoDescend) {
    const UpperReal u = upper_of(make_sqrt2());
    ASSERT_FALSE(u.is_plus_infinity());
    Rat prev = u.bound(0);
    EXPECT_GE(prev * prev, Rat(2));
    for (std::size_t n = 1; n <= 20; ++n) {
        const Rat b = u.bound(n);
        EXPECT_LE(b, prev);
        EXPECT_GE(b * b, Rat(2));
        prev = b;
    }
}

TEST(OneSided, RawStreamsAreMonotonized) {
    const LowerReal l = LowerReal::from_bounds([](std::size_t n) {
        const Rat data[] = {Rat(3), Rat(1), Rat(4)};
        return data[n % 3];
    });
    EXPECT_EQ(l.bound(0), Rat(3));
    EXPECT_EQ(l.bound(1), Rat(3));  // raw 1 lifted to the running max
    EXPECT_EQ(l.bound(2), Rat(4));

    const UpperReal u = UpperReal::from_bounds([](std::size_t n) {
        const Rat data[] = {Rat(3), Rat(7), Rat(2)};
        return data[n % 3];
    });
    EXPECT_EQ(u.bound(0), Rat(3));
    EXPECT_EQ(u.bound(1), Rat(3));  // raw 7 clipped to the running min
    EXPECT_EQ(u.bound(2), Rat(2));
}

TEST(OneSided, BoundsAreMemoStable) {
    auto calls = std::make_shared<std::atomic<int>>(0);
    const LowerReal l = LowerReal::from_bounds([calls](std::size_t n) {
        ++*calls;
        return Rat(Int(n));
    });
    EXPECT_EQ(l.bound(2), Rat(2));
    EXPECT_EQ(calls->load(), 3);  // 0, 1, 2 computed once
    EXPECT_EQ(l.bound(0), Rat(0));
    EXPECT_EQ(l.bound(2), Rat(2));
    EXPECT_EQ(calls->load(), 3);
}

TEST(OneSided, MarkersPrintAndRefuseBounds) {
    const LowerReal bot = LowerReal::minus_infinity();
    EXPECT_TRUE(bot.is_minus_infinity());
    EXPECT_EQ(bot.to_string(), "-inf");
    EXPECT_THROW(bot.bound(0), std::logic_error);

    const UpperReal top = UpperReal::plus_infinity();
    EXPECT_TRUE(top.is_plus_infinity());
    EXPECT_EQ(top.to_string(), "+inf");
    EXPECT_THROW(top.bound(0), std::logic_error);
}
