#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "chebdiff/error.hpp"
#include "chebdiff/function.hpp"

using namespace chebdiff;

TEST(FunctionSpec, EvaluatesInsideDomain) {
    const FunctionSpec f = parse_function("x^2", {0, 1});
    EXPECT_DOUBLE_EQ(evaluate(f, 0.5), 0.25);
    EXPECT_DOUBLE_EQ(evaluate(parse_function("exp(x)", {0, 1}), 1.0), std::numbers::e);
    EXPECT_EQ(evaluate(parse_function("sign(x-0.5)", {0, 1}), 0.5), 0.0);
}

TEST(FunctionSpec, OutsideDomainThrows) {
    const FunctionSpec f = parse_function("x^2", {0, 1});
    EXPECT_THROW(evaluate(f, 1.5), DomainError);
    EXPECT_THROW(evaluate(f, -1e-9), DomainError);
}

TEST(FunctionSpec, RejectsNonFiniteOnDomain) {
    EXPECT_THROW(parse_function("log(x - 0.5)", {0, 1}), DomainError);
    EXPECT_THROW(parse_function("1/x", {0, 1}), DomainError);
    EXPECT_THROW(parse_function("sqrt(x)", {-1, 1}), DomainError);
    EXPECT_NO_THROW(parse_function("log(x + 1)", {0, 1}));
    EXPECT_THROW(parse_function("x", {1, 1}), DomainError);
}

TEST(FunctionSpec, SourceIsKept) {
    EXPECT_EQ(parse_function("x  +  1", {0, 1}).source(), "x  +  1");
}

TEST(FunctionSpec, StepFunctionHasJump) {
    const FunctionSpec f = parse_function("sign(x - 0.5)", {0, 1});
    ASSERT_EQ(f.breakpoints().size(), 1u);
    EXPECT_EQ(f.breakpoints()[0], 0.5);
    ASSERT_EQ(f.jumps().size(), 1u);
    EXPECT_EQ(f.jumps()[0].at, 0.5);
    EXPECT_NEAR(f.jumps()[0].size, 2.0, 1e-12);
    EXPECT_FALSE(f.is_continuous());
}

TEST(FunctionSpec, KinksAreNotJumps) {
    const FunctionSpec f = parse_function("abs(x - 0.3) + 0.2*abs(x - 0.7)", {0, 1});
    ASSERT_EQ(f.breakpoints().size(), 2u);
    EXPECT_NEAR(f.breakpoints()[0], 0.3, 1e-15);
    EXPECT_NEAR(f.breakpoints()[1], 0.7, 1e-15);
    EXPECT_TRUE(f.is_continuous());
    EXPECT_TRUE(f.is_absolutely_continuous());
}

TEST(FunctionSpec, SteepRootIsNotAJump) {
    const FunctionSpec f = parse_function("abs(x - 0.37)^0.25", {0, 1});
    EXPECT_TRUE(f.is_continuous());
    const FunctionSpec g = parse_function("piecewise((x < 0.5, 0), sqrt(x - 0.5))", {0, 1});
    EXPECT_TRUE(g.is_continuous());
}

TEST(FunctionSpec, PiecewiseJumps) {
    const FunctionSpec f = parse_function("piecewise((x < 0.25, 1), (x <= 0.5, x), -x)", {0, 1});
    ASSERT_EQ(f.jumps().size(), 2u);
    EXPECT_NEAR(f.jumps()[0].size, 0.25 - 1.0, 1e-9);
    EXPECT_NEAR(f.jumps()[1].size, -1.0, 1e-9);
}

TEST(FunctionSpec, EndpointDiscontinuityIsRecorded) {
    const FunctionSpec f = parse_function("sign(x)", {0, 1});
    ASSERT_EQ(f.jumps().size(), 1u);
    EXPECT_EQ(f.jumps()[0].at, 0.0);
    EXPECT_NEAR(f.jumps()[0].size, 1.0, 1e-12);
}

TEST(Differentiate, Rules) {
    const FunctionSpec d1 = differentiate(parse_function("x^2", {0, 1}));
    EXPECT_DOUBLE_EQ(d1(0.3), 0.6);
    const FunctionSpec d2 = differentiate(parse_function("sin(3*x)", {0, 1}));
    EXPECT_NEAR(d2(0.3), 3 * std::cos(0.9), 1e-15);
    const FunctionSpec d3 = differentiate(parse_function("7", {0, 1}));
    EXPECT_EQ(d3(0.3), 0.0);
}

TEST(Differentiate, KinkedFunctionIsDifferentiatedPiecewise) {
    const FunctionSpec d = differentiate(parse_function("abs(x - 0.5)", {0, 1}));
    EXPECT_EQ(d(0.2), -1.0);
    EXPECT_EQ(d(0.8), 1.0);
    ASSERT_EQ(d.breakpoints().size(), 1u);
    EXPECT_EQ(d.breakpoints()[0], 0.5);
}

TEST(Differentiate, SingularDerivativeAtBreakpointIsAllowed) {
    const FunctionSpec d = differentiate(parse_function("sqrt(x)", {0, 1}));
    EXPECT_NEAR(d(0.25), 1.0, 1e-15);
}

TEST(Differentiate, TooManyKinksIsRejected) {
    const FunctionSpec f = parse_function("abs(sin(500*x))", {0, 1});
    EXPECT_FALSE(f.breakpoints_complete());
    EXPECT_THROW(differentiate(f), PreconditionError);
}

TEST(Differentiate, CentralDifferencesAgree) {
    const char* sources[] = {"x^5 - 0.3*x^2", "sin(7*x) + cos(x)", "abs(x - 0.3) + x^2", "exp(-x)*x"};
    for (const char* s : sources) {
        const FunctionSpec f = parse_function(s, {0, 1});
        const FunctionSpec d = differentiate(f);
        for (int i = 1; i <= 64; ++i) {
            const double t = (i - 0.5) / 64.0;
            const double h = 1e-6;
            const double fd = (f(t + h) - f(t - h)) / (2 * h);
            EXPECT_NEAR(d(t), fd, 1e-6 * (1 + std::fabs(d(t))) + 1e-9) << s << " at " << t;
        }
    }
}

TEST(FindRoots, Polynomial) {
    const auto r = find_roots(parse_expression("(x - 0.2)*(x - 0.7)"), 0, 1);
    ASSERT_TRUE(r);
    ASSERT_EQ(r->size(), 2u);
    EXPECT_NEAR((*r)[0], 0.2, 1e-15);
    EXPECT_NEAR((*r)[1], 0.7, 1e-15);
}

TEST(FindRoots, ConstantZeroIsUnbounded) {
    EXPECT_FALSE(find_roots(Expr::number(0.0), 0, 1));
    EXPECT_TRUE(find_roots(Expr::number(2.0), 0, 1)->empty());
}

TEST(IntervalConfig, Validation) {
    EXPECT_NO_THROW((IntervalConfig{0, 0.25, 0.75, 1}.validate()));
    EXPECT_NO_THROW((IntervalConfig{0, 0, 1, 1}.validate()));
    EXPECT_THROW((IntervalConfig{0, 0.5, 0.5, 1}.validate()), PreconditionError);
    EXPECT_THROW((IntervalConfig{0, 0.8, 0.5, 1}.validate()), PreconditionError);
    EXPECT_THROW((IntervalConfig{0.1, 0, 0.5, 1}.validate()), PreconditionError);
    EXPECT_THROW((IntervalConfig{0, 0.2, 0.5, NAN}.validate()), PreconditionError);
}

TEST(IntervalConfig, NestedViewSwapsAandU) {
    IntervalConfig c{0, 0.25, 0.75, 1, IntervalConfig::Mode::nested};
    const IntervalConfig view = c.formula_view();
    EXPECT_EQ(view.a, 0.25);
    EXPECT_EQ(view.u, 0.0);
    EXPECT_EQ(view.v, 0.75);
    EXPECT_EQ(view.b, 1.0);
    c.mode = IntervalConfig::Mode::overlap;
    EXPECT_EQ(c.formula_view().a, 0.0);
}
