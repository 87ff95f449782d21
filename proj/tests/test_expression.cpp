#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "chebdiff/error.hpp"
#include "chebdiff/expression.hpp"
#include "chebdiff/function.hpp"

using namespace chebdiff;

TEST(Parse, Polynomial) {
    const Expr e = parse_expression("x^2");
    EXPECT_DOUBLE_EQ(e(0.5), 0.25);
    EXPECT_DOUBLE_EQ(e(-3.0), 9.0);
}

TEST(Parse, PrecedenceAndAssociativity) {
    EXPECT_DOUBLE_EQ(parse_expression("1 + 2*3")(0.0), 7.0);
    EXPECT_DOUBLE_EQ(parse_expression("2^3^2")(0.0), 512.0);
    EXPECT_DOUBLE_EQ(parse_expression("8/4/2")(0.0), 1.0);
    EXPECT_DOUBLE_EQ(parse_expression("10 - 4 - 3")(0.0), 3.0);
    // unary minus binds to the atom
    EXPECT_DOUBLE_EQ(parse_expression("-x^2")(3.0), 9.0);
    EXPECT_DOUBLE_EQ(parse_expression("2*-x")(3.0), -6.0);
}

TEST(Parse, NumbersWithExponent) {
    EXPECT_DOUBLE_EQ(parse_expression("1.5e-3")(0.0), 1.5e-3);
    EXPECT_DOUBLE_EQ(parse_expression(".25 + 2E2")(0.0), 200.25);
}

TEST(Parse, Functions) {
    const Expr e = parse_expression("sin(3*x) + 0.5*abs(x)");
    EXPECT_NEAR(e(-0.7), std::sin(-2.1) + 0.35, 1e-15);
    EXPECT_DOUBLE_EQ(parse_expression("exp(x)")(1.0), std::numbers::e);
    EXPECT_DOUBLE_EQ(parse_expression("sqrt(x)")(4.0), 2.0);
    EXPECT_DOUBLE_EQ(parse_expression("log(x)")(1.0), 0.0);
    EXPECT_DOUBLE_EQ(parse_expression("cos(x)")(0.0), 1.0);
}

TEST(Parse, SignOfZeroIsZero) {
    const Expr e = parse_expression("sign(x-0.5)");
    EXPECT_EQ(e(0.5), 0.0);
    EXPECT_EQ(e(0.7), 1.0);
    EXPECT_EQ(e(0.1), -1.0);
}

TEST(Parse, Piecewise) {
    const Expr e = parse_expression("piecewise((x < 0.25, 1), (x <= 0.5, x), -x)");
    EXPECT_DOUBLE_EQ(e(0.1), 1.0);
    EXPECT_DOUBLE_EQ(e(0.25), 0.25);
    EXPECT_DOUBLE_EQ(e(0.5), 0.5);
    EXPECT_DOUBLE_EQ(e(0.75), -0.75);
}

TEST(Parse, WhitespaceIsInsignificant) {
    EXPECT_TRUE(parse_expression(" x ^ 2 +\t1 ").same_as(parse_expression("x^2+1")));
}

TEST(ParseError, UnbalancedParenthesisReportsOffset) {
    try {
        parse_expression("sin(3*x");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 8u);
    }
}

TEST(ParseError, UnknownIdentifier) {
    try {
        parse_expression("tan(x)");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 1u);
        EXPECT_NE(std::string(e.what()).find("tan"), std::string::npos);
    }
}

TEST(ParseError, Garbage) {
    EXPECT_THROW(parse_expression(""), ParseError);
    EXPECT_THROW(parse_expression("x +"), ParseError);
    EXPECT_THROW(parse_expression("x x"), ParseError);
    EXPECT_THROW(parse_expression("piecewise((y < 1, 2), 3)"), ParseError);
    EXPECT_THROW(parse_expression("2 ** 3"), ParseError);
}

TEST(RoundTrip, PrintedFormReparsesIdentically) {
    const char* sources[] = {
        "x^2",
        "-x^2",
        "(-x)^2",
        "-(x^2)",
        "2^3^2",
        "(2^3)^2",
        "1 - (x - 1)",
        "x/(2*x)",
        "sin(3*x) + 0.5*abs(x)",
        "0.1*sign(x - 0.25) - 0.3*sign(x - 0.75)",
        "1.25*abs(x - 0.3)^0.25",
        "piecewise((x < 0.25, 1), (x <= 0.5, x), -x)",
        "exp(-x)*cos(2.5*x + 0.1)",
        "0.1 + 2.5e-7*x^5",
        "x - -1",
    };
    for (const char* s : sources) {
        const Expr e = parse_expression(s);
        const Expr back = parse_expression(e.str());
        EXPECT_TRUE(back.same_as(e)) << s << " printed as " << e.str();
        EXPECT_EQ(back.str(), e.str());
    }
}

TEST(Derivative, PowerRule) {
    const Expr d = parse_expression("x^2").derivative();
    for (double t : {-1.0, 0.0, 0.3, 2.0}) EXPECT_DOUBLE_EQ(d(t), 2 * t);
}

TEST(Derivative, ChainRule) {
    const Expr d = parse_expression("sin(3*x)").derivative();
    for (double t : {-1.0, 0.0, 0.3, 2.0}) EXPECT_NEAR(d(t), 3 * std::cos(3 * t), 1e-15);
}

TEST(Derivative, Constant) {
    const Expr d = parse_expression("7").derivative();
    EXPECT_TRUE(d.is_number());
    EXPECT_EQ(d.value(), 0.0);
}

TEST(Derivative, AgreesWithCentralDifferences) {
    const char* sources[] = {"exp(x)*sin(2*x)", "log(x + 2)/(x + 3)", "sqrt(x + 1)", "x^x",
                             "cos(x)^3", "abs(x - 0.3)^1.5", "(x + 2)^(-0.5)"};
    for (const char* s : sources) {
        const Expr e = parse_expression(s);
        const Expr d = e.derivative();
        for (int i = 1; i < 64; ++i) {
            const double t = 0.05 + 0.9 * i / 64.0;
            const double h = 1e-5;
            const double fd = (e(t + h) - e(t - h)) / (2 * h);
            EXPECT_NEAR(d(t), fd, 1e-6 * (1 + std::fabs(d(t)))) << s << " at " << t;
        }
    }
}

TEST(Compiled, MatchesTreeWalk) {
    const char* sources[] = {"sin(3*x) + 0.5*abs(x)", "piecewise((x < 0.25, 1), (x <= 0.5, x), -x)",
                             "2^x - x^2/3", "exp(-x)*cos(2.5*x + 0.1)", "-(-x)"};
    for (const char* s : sources) {
        const Expr e = parse_expression(s);
        const CompiledExpr c(e);
        for (int i = 0; i <= 100; ++i) {
            const double t = -1 + 2.0 * i / 100.0;
            EXPECT_EQ(c(t), e(t)) << s;
        }
    }
}
