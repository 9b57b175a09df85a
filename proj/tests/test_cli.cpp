// Tests for the command-line front end, driven in-process through run_cli.
#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "dedekind/cli.hpp"

using dedekind::Int;
using dedekind::Rat;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = dedekind::cli::run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

// Splits "lo hi\n" as printed by --interval into two exact rationals.
std::pair<Rat, Rat> parse_interval_line(const std::string& line) {
    const std::size_t space = line.find(' ');
    EXPECT_NE(space, std::string::npos) << "not an interval line: " << line;
    const std::size_t end = line.find('\n', space);
    return {Rat::parse(line.substr(0, space)),
            Rat::parse(line.substr(space + 1, end - space - 1))};
}

TEST(CliEval, ExactValuePrintsPlainDecimal) {
    const CliResult r = run({"eval", "log(2,8)", "--digits", "5"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "3.00000\n");
    EXPECT_EQ(r.err, "");
}

TEST(CliEval, IntegerArithmeticWithZeroDigits) {
    const CliResult r = run({"eval", "pow(2, 10)", "--digits", "0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1024\n");
}

TEST(CliEval, SyntaxErrorExitsTwo) {
    const CliResult r = run({"eval", "2^^2"});
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(r.out, "");
    EXPECT_NE(r.err.find("syntax error at byte 2"), std::string::npos) << r.err;
}

TEST(CliEval, IntervalModePrintsExactBounds) {
    const CliResult r = run({"eval", "2^(1/2)", "--interval", "--eps", "1/1000"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto [lo, hi] = parse_interval_line(r.out);
    const Rat two(2);
    EXPECT_LE(lo * lo, two);
    EXPECT_GE(hi * hi, two);
    EXPECT_LE(hi - lo, Rat(1, 1000));
}

TEST(CliEval, PowerOfTwoPrecisionShorthand) {
    const CliResult r = run({"eval", "2^(1/2)", "--interval", "--eps", "2^-60"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto [lo, hi] = parse_interval_line(r.out);
    EXPECT_LE(lo * lo, Rat(2));
    EXPECT_GE(hi * hi, Rat(2));
    EXPECT_LE(hi - lo, Rat(Int(1), Int(1) << 60));
}

TEST(CliEval, DomainErrorExitsThree) {
    const CliResult r = run({"eval", "log(1, 5)"});
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(r.out, "");
    EXPECT_NE(r.err.find("domain error"), std::string::npos) << r.err;
}

TEST(CliEval, ExhaustedBudgetIsADomainError) {
    // sqrt(2)*sqrt(2) - 2 is exactly zero but never proven so; the divisor
    // witness must give up once the (small) budget is spent.
    const CliResult r = run({"eval", "1/(sqrt(2)*sqrt(2) - 2)", "--budget", "4"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("domain error"), std::string::npos) << r.err;
}

TEST(CliEval, MalformedEpsIsAUsageError) {
    const CliResult r = run({"eval", "2", "--eps", "banana"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("usage error"), std::string::npos) << r.err;

    const CliResult zero = run({"eval", "2", "--eps", "0"});
    EXPECT_EQ(zero.code, 2);
    EXPECT_NE(zero.err.find("positive"), std::string::npos) << zero.err;
}

TEST(CliEval, EnvVarSuppliesEpsAndFlagWins) {
    ::setenv("DEDEKIND_EPS", "1/4", 1);
    const CliResult from_env = run({"eval", "2^(1/2)", "--interval"});
    ASSERT_EQ(from_env.code, 0) << from_env.err;
    const auto [elo, ehi] = parse_interval_line(from_env.out);
    EXPECT_LE(ehi - elo, Rat(1, 4));

    const CliResult from_flag =
        run({"eval", "2^(1/2)", "--interval", "--eps", "1/1024"});
    ASSERT_EQ(from_flag.code, 0) << from_flag.err;
    const auto [flo, fhi] = parse_interval_line(from_flag.out);
    EXPECT_LE(fhi - flo, Rat(1, 1024));
    ::unsetenv("DEDEKIND_EPS");
}

TEST(CliEval, DefaultPrecisionTracksDigits) {
    // At N digits the default target is half an ulp, so the bracket's two
    // renderings can differ by at most one in the last place.
    const CliResult r = run({"eval", "2^(1/2)", "--digits", "10"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("1.4142135623"), std::string::npos) << r.out;
}

TEST(CliUsage, MissingSubcommandExitsTwo) {
    const CliResult r = run({});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("usage error"), std::string::npos) << r.err;
}

TEST(CliUsage, UnknownFlagExitsTwo) {
    const CliResult r = run({"eval", "2", "--frobnicate"});
    EXPECT_EQ(r.code, 2);
}

TEST(CliUsage, HelpExitsZero) {
    const CliResult r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("eval"), std::string::npos);
    EXPECT_NE(r.out.find("check-laws"), std::string::npos);
}

TEST(CliCheckLaws, ZeroCasesIsAVacuousPass) {
    const CliResult r = run({"check-laws", "--cases", "0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("0/0"), std::string::npos) << r.out;
}

TEST(CliCheckLaws, SmallSeededRunPassesAllLaws) {
    const CliResult r = run({"check-laws", "--cases", "5", "--seed", "42"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("law product-of-powers: 5/5 passed"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("law power-of-power: 5/5 passed"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("law base-product: 5/5 passed"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("law root-inversion: 5/5 passed"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("law pow-log-round-trip: 5/5 passed"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("law log-pow-round-trip: 5/5 passed"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("ok: 30/30"), std::string::npos) << r.out;
}

TEST(CliCheckLaws, RepeatedSeededRunsAreByteIdentical) {
    const CliResult a = run({"check-laws", "--cases", "3", "--seed", "7"});
    const CliResult b = run({"check-laws", "--cases", "3", "--seed", "7"});
    EXPECT_EQ(a.code, 0) << a.out;
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.err, b.err);
}

TEST(CliCheckLaws, CoarseEpsOverrideIsAccepted) {
    const CliResult r = run({"check-laws", "--cases", "2", "--seed", "3", "--eps", "2^-10"});
    EXPECT_EQ(r.code, 0) << r.out;
}

}  // namespace
