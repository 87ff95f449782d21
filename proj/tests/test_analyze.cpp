#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "chebdiff/analyze.hpp"
#include "chebdiff/error.hpp"

using namespace chebdiff;

namespace {
FunctionSpec fn(const char* src, Interval dom = {0, 1}) { return parse_function(src, dom); }

// Midpoint-rule Beta integral on a fine grid; fine for x, y >= 1.
double brute_beta(double x, double y) {
    const int n = 2'000'000;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = (i + 0.5) / n;
        s += std::pow(t, x - 1) * std::pow(1 - t, y - 1);
    }
    return s / n;
}
}  // namespace

TEST(LpNorm, Constant) {
    for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) EXPECT_NEAR(lp_norm(fn("1"), p, 0, 1).value, 1.0, 1e-12) << p;
}

TEST(LpNorm, Identity) {
    EXPECT_DOUBLE_EQ(lp_norm(fn("x"), kInf, 0, 1).value, 1.0);
    EXPECT_NEAR(lp_norm(fn("x"), 2, 0, 1).value, 1 / std::sqrt(3.0), 1e-12);
    EXPECT_EQ(lp_norm(fn("x"), 2, 0, 1).kind, NormValue::Kind::numeric_estimate);
}

TEST(LpNorm, SupFoundOffGrid) {
    // maximum at x = 1/3 + small offset, not a grid point
    const NormValue n = lp_norm(fn("1 - (x - 0.3337)^2"), kInf, 0, 1);
    EXPECT_NEAR(n.value, 1.0, 1e-12);
}

TEST(LpNorm, BoundedBySupNorm) {
    for (const char* s : {"sin(5*x)", "x^3 - x", "sign(x - 0.3)", "exp(x)"}) {
        const FunctionSpec f = fn(s, {0, 2});
        const double sup = lp_norm(f, kInf, 0, 2).value;
        for (double p : {1.0, 2.0, 3.0}) EXPECT_LE(lp_norm(f, p, 0, 2).value, std::pow(2.0, 1 / p) * sup + 1e-12);
    }
}

TEST(LpNorm, RejectsBadExponent) { EXPECT_THROW(lp_norm(fn("x"), 0.5, 0, 1), PreconditionError); }

TEST(TotalVariation, Examples) {
    EXPECT_NEAR(total_variation(fn("x"), 0, 1).value, 1.0, 1e-12);
    EXPECT_NEAR(total_variation(fn("sign(x - 0.5)"), 0, 1).value, 2.0, 1e-12);
    EXPECT_NEAR(total_variation(fn("sin(2*3.141592653589793*x)"), 0, 1).value, 4.0, 1e-8);
}

TEST(TotalVariation, DeclaredValueIsReturned) {
    ClassConstants c;
    c.total_variation = 1.5;
    const FunctionSpec f = parse_function("x", {0, 1}, c);
    const NormValue v = total_variation(f, 0, 1);
    EXPECT_EQ(v.value, 1.5);
    EXPECT_EQ(v.kind, NormValue::Kind::exact_declared);
    EXPECT_EQ(total_variation(f, 0, 0.5).kind, NormValue::Kind::numeric_estimate);
}

TEST(Lipschitz, Examples) {
    EXPECT_NEAR(lipschitz_estimate(fn("x"), 0, 1).value, 1.0, 1e-12);
    EXPECT_EQ(lipschitz_estimate(fn("4"), 0, 1).value, 0.0);
    const double pi = std::numbers::pi;
    const double l = lipschitz_estimate(parse_function("sin(x)", {0, pi}), 0, pi).value;
    EXPECT_LE(l, 1.0);
    EXPECT_GT(l, 1.0 - 1e-8);
}

TEST(Holder, Examples) {
    EXPECT_EQ(holder_estimate(fn("2"), 0.5, 0, 1).value, 0.0);
    EXPECT_NEAR(holder_estimate(fn("x"), 1.0, 0, 1).value, 1.0, 1e-12);
    EXPECT_NEAR(holder_estimate(fn("sqrt(x)"), 0.5, 0, 1).value, 1.0, 1e-12);
    EXPECT_NEAR(holder_estimate(fn("abs(x - 0.37)^0.25"), 0.25, 0, 1).value, 1.0, 1e-6);
    EXPECT_THROW(holder_estimate(fn("x"), 1.5, 0, 1), PreconditionError);
}

TEST(Estimators, MonotoneUnderRefinement) {
    // Estimates on a subinterval never exceed the estimate on the full grid
    // hierarchy they are nested in; checked via the sup and slope of a
    // function whose extremum sits between grid points.
    const FunctionSpec f = fn("sin(7.3*x) + 0.1*abs(x - 0.4141)");
    const double l = lipschitz_estimate(f, 0, 1).value;
    const double v = total_variation(f, 0, 1).value;
    EXPECT_LE(l, exact_sup_abs_derivative(f, 0, 1) + 1e-12);
    EXPECT_LE(v, exact_total_variation(f, 0, 1) + 1e-12);
    EXPECT_GT(v, exact_total_variation(f, 0, 1) - 1e-5);
}

TEST(Beta, Anchors) {
    EXPECT_NEAR(beta(1, 1), 1.0, 1e-15);
    EXPECT_NEAR(beta(2, 2), 1.0 / 6.0, 1e-12 / 6.0);
    for (double p : {0.25, 0.5, 1.0}) EXPECT_NEAR(beta(p + 1, 2), 1 / ((p + 1) * (p + 2)), 1e-12 / ((p + 1) * (p + 2)));
}

TEST(Beta, SymmetryAndRecurrence) {
    for (double x : {0.3, 1.0, 2.5, 7.25, 100.5})
        for (double y : {0.7, 1.5, 3.0, 90.0}) {
            const double b = beta(x, y);
            EXPECT_NEAR(beta(y, x), b, 1e-12 * b);
            EXPECT_NEAR(beta(x + 1, y), b * x / (x + y), 1e-12 * b * x / (x + y));
        }
}

TEST(Beta, AgreesWithIntegral) {
    EXPECT_NEAR(beta(3, 3), brute_beta(3, 3), 1e-12);
    EXPECT_NEAR(beta(3, 2), 1.0 / 12.0, 1e-14);
    EXPECT_NEAR(beta(2.5, 3.5), brute_beta(2.5, 3.5), 1e-12);
}

TEST(Beta, RejectsNonpositive) {
    EXPECT_THROW(beta(0, 1), DomainError);
    EXPECT_THROW(beta(1, -2), DomainError);
}

TEST(Exact, VariationRangeSlope) {
    const FunctionSpec f = fn("0.5*sign(x - 0.3) - 0.25*sign(x - 0.6)");
    EXPECT_NEAR(exact_total_variation(f, 0, 1), 1.5, 1e-12);
    const RangeBounds r = exact_range(f, 0, 1);
    EXPECT_NEAR(r.m, -0.25, 1e-12);
    EXPECT_NEAR(r.M, 0.75, 1e-12);

    const FunctionSpec p = fn("x^3 - x");
    EXPECT_NEAR(exact_total_variation(p, 0, 1), 4 / (3 * std::sqrt(3.0)), 1e-12);
    EXPECT_NEAR(exact_range(p, 0, 1).m, -2 / (3 * std::sqrt(3.0)), 1e-12);
    EXPECT_NEAR(exact_sup_abs_derivative(p, 0, 1), 2.0, 1e-12);
    EXPECT_NEAR(exact_sup_abs_derivative(fn("sin(5*x)"), 0, 1), 5.0, 1e-12);
    EXPECT_EQ(exact_sup_abs_derivative(fn("sqrt(x)"), 0, 1), kInf);
    EXPECT_EQ(exact_sup_abs_derivative(fn("abs(x - 0.3)^0.75"), 0, 1), kInf);
    EXPECT_NEAR(exact_sup_abs_derivative(fn("2*abs(x - 0.3) - x"), 0, 1), 3.0, 1e-12);
}

TEST(Soundness, DetectsUnderstatedConstants) {
    ClassConstants good;
    good.total_variation = 1.0 + 1e-9;
    good.lipschitz = 1.0 + 1e-9;
    good.holder = HolderConstant{1.0, 1.0 + 1e-9};
    good.range_bounds = RangeBounds{0.0, 1.0};
    good.monotone_nondecreasing = true;
    good.lp_norms = {{1.0, 1.0 + 1e-9}, {2.0, 1.0 + 1e-9}, {kInf, 1.0 + 1e-9}};
    EXPECT_TRUE(check_declared_constants(parse_function("x", {0, 1}, good)).empty());

    ClassConstants bad = good;
    bad.total_variation = 0.5;
    bad.lipschitz = 0.9;
    bad.range_bounds = RangeBounds{0.0, 0.9};
    bad.lp_norms[kInf] = 0.5;
    EXPECT_EQ(check_declared_constants(parse_function("x", {0, 1}, bad)).size(), 4u);
    EXPECT_EQ(check_declared_constants(parse_function("1 - x", {0, 1}, good)).size(), 1u);  // monotone only
}
