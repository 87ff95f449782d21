#include <gtest/gtest.h>

#include <cmath>

#include "chebdiff/analyze.hpp"
#include "chebdiff/error.hpp"
#include "chebdiff/verify.hpp"

using namespace chebdiff;

namespace {
CorpusEntry constant_entry(std::size_t i) {
    ClassConstants c;
    c.total_variation = 0.0;
    c.lipschitz = 0.0;
    c.holder = HolderConstant{1.0, 0.0};
    c.lp_norms = {{1.0, 0.0}, {2.0, 0.0}, {kInf, 0.0}};
    c.range_bounds = RangeBounds{2.0, 2.0};
    c.monotone_nondecreasing = true;
    FunctionSpec f = parse_function("2", {0, 1}, c);
    CorpusEntry e(f, f);
    e.index = i;
    e.same = true;
    return e;
}
}  // namespace

TEST(Corpus, Deterministic) {
    auto a = generate_corpus(7, 25, all_families());
    auto b = generate_corpus(7, 25, all_families());
    ASSERT_EQ(a.size(), 25u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].f.source(), b[i].f.source());
        EXPECT_EQ(a[i].g.source(), b[i].g.source());
        EXPECT_EQ(a[i].seed, b[i].seed);
    }
    auto c = generate_corpus(8, 25, all_families());
    EXPECT_NE(a[0].f.source() + a[1].f.source(), c[0].f.source() + c[1].f.source());
}

TEST(Corpus, Errors) {
    EXPECT_THROW(generate_corpus(1, 0, all_families()), PreconditionError);
    EXPECT_THROW(generate_corpus(1, 3, {}), PreconditionError);
}

TEST(Corpus, SinglePolynomial) {
    auto c = generate_corpus(1, 1, {Family::polynomial});
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].f_family, Family::polynomial);
    EXPECT_LE(c[0].params.at("f.degree"), 5);
    EXPECT_TRUE(c[0].f.constants().deriv_norm(kInf).has_value());
    EXPECT_TRUE(c[0].f.constants().deriv_norm(2.0).has_value());
}

TEST(Corpus, HolderRoot) {
    for (const auto& e : generate_corpus(3, 40, {Family::holder_root})) {
        const auto& h = e.f.constants().holder;
        ASSERT_TRUE(h.has_value());
        const double r = e.params.at("f.r");
        EXPECT_EQ(h->order, r);
        EXPECT_NEAR(h->constant, std::fabs(e.params.at("f.c")), 1e-8);
        EXPECT_EQ(e.f.constants().lipschitz.has_value(), r == 1.0);
        // f' in L_p exactly when p (r - 1) > -1
        for (double p : {1.0, e.p}) EXPECT_EQ(e.f.constants().deriv_norm(p).has_value(), p * (r - 1) > -1) << p;
    }
}

TEST(Corpus, DeclaredConstantsSurviveSampling) {
    // sampled estimates are lower bounds, so none may exceed a declaration
    for (const auto& e : generate_corpus(11, 60, all_families())) {
        for (const FunctionSpec* h : {&e.f, &e.g}) {
            auto bad = check_declared_constants(*h, 1e-9);
            EXPECT_TRUE(bad.empty()) << h->source() << ": " << (bad.empty() ? "" : bad.front());
        }
    }
}

TEST(Corpus, WitnessesAreExact) {
    auto w = witness_entries();
    ASSERT_EQ(w.size(), 3u);
    EXPECT_NEAR(*w[0].f.constants().deriv_norm(kInf), 1.0, 2e-9);
    EXPECT_NEAR(*w[1].f.constants().total_variation, 2.0, 3e-9);
    EXPECT_NEAR(*w[2].f.constants().lipschitz, 3.141592653589793, 1e-8);
}

TEST(Check, EqualityWitnesses) {
    auto w = witness_entries();
    const IntervalConfig full{0, 0, 1, 1};
    auto cheb = check_theorem(w[0], "thm1/chebyshev", full);
    ASSERT_TRUE(cheb);
    EXPECT_NEAR(cheb->lhs, 1.0 / 12, 1e-12);
    EXPECT_NEAR(cheb->rhs, 1.0 / 12, 1e-9);
    EXPECT_TRUE(cheb->pass);
    ASSERT_TRUE(cheb->tightness);
    EXPECT_GE(*cheb->tightness, 0.999999);

    auto gr = check_theorem(w[1], "thm1/gruss", full);
    ASSERT_TRUE(gr);
    EXPECT_NEAR(gr->lhs, 1.0, 1e-10);
    EXPECT_GE(gr->tightness.value_or(0), 0.999999);

    // sign has no derivative norms: outside the class, no record
    EXPECT_FALSE(check_theorem(w[1], "thm1/chebyshev", full));
}

TEST(Check, IdenticalIntervals) {
    for (const auto& e : generate_corpus(5, 20, all_families())) {
        auto r = check_theorem(e, "thm4.5.9", IntervalConfig{0, 0, 1, 1});
        if (!r) continue;
        EXPECT_NEAR(r->lhs, 0.0, 1e-12);
        EXPECT_TRUE(r->pass);
    }
}

TEST(Check, PassAndTightness) {
    EXPECT_TRUE(passes(1.0, 0.0, 1.0));
    EXPECT_FALSE(passes(1.0, 0.0, 0.99));
    EXPECT_TRUE(passes(1.0, 0.02, 0.99));
    for (double rhs : {0.5, 0.9, 1.0, 2.0})
        if (passes(0.95, 0.0, rhs)) EXPECT_TRUE(passes(0.95, 0.0, rhs * 2));
    EXPECT_FALSE(tightness(1e-12, 1e-12, 1.0));
    EXPECT_DOUBLE_EQ(*tightness(0.5, 1e-12, 1.0), 0.5);
}

TEST(Check, HypothesisFlagKept) {
    // thm4.5.5 needs a nondecreasing g; cos(pi x) is decreasing
    auto w = witness_entries();
    auto r = check_theorem(w[2], "thm4.5.5", IntervalConfig{0, 0.25, 0.75, 1});
    ASSERT_TRUE(r);
    EXPECT_FALSE(r->hypothesis_ok);
    EXPECT_FALSE(r->certified_violation());
}

TEST(Check, RhsErrorFoldedIn) {
    auto w = witness_entries();
    auto r = check_theorem(w[2], "thm4/eq2.2", IntervalConfig{0, 0.25, 0.75, 1});
    ASSERT_TRUE(r);
    EXPECT_GT(r->lhs_err, 0.0);
    EXPECT_TRUE(r->pass);
}

TEST(Sweep, Cardinality) {
    auto corpus = generate_corpus(9, 10, all_families());
    SweepOptions o;
    o.configs = 5;
    auto recs = sweep(corpus, {"thm4/eq2.2", "cer4.3.4/bv", "thm4.5.5"}, o);
    EXPECT_EQ(recs.size(), 150u);
}

TEST(Sweep, ConstantCorpusPasses) {
    std::vector<CorpusEntry> corpus;
    for (std::size_t i = 0; i < 4; ++i) corpus.push_back(constant_entry(i));
    SweepOptions o;
    o.configs = 3;
    auto recs = sweep(corpus, sweep_ids(), o);
    EXPECT_FALSE(recs.empty());
    for (const auto& r : recs) {
        EXPECT_EQ(r.status, "ok") << r.id() << " " << r.note;
        EXPECT_NEAR(r.lhs, 0.0, 1e-12) << r.id();
        EXPECT_TRUE(r.pass) << r.id();
    }
}

TEST(Sweep, OrderIndependentOfThreads) {
    auto corpus = generate_corpus(4, 12, all_families());
    SweepOptions o;
    o.configs = 4;
    o.threads = 1;
    auto one = sweep(corpus, {"thm4.5.1/Linf", "bar4.3.1", "thm1/gruss"}, o);
    o.threads = 4;
    auto four = sweep(corpus, {"thm4.5.1/Linf", "bar4.3.1", "thm1/gruss"}, o);
    ASSERT_EQ(one.size(), four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        EXPECT_EQ(one[i].id(), four[i].id());
        EXPECT_EQ(one[i].entry, four[i].entry);
        EXPECT_EQ(one[i].lhs, four[i].lhs);
        EXPECT_EQ(one[i].rhs, four[i].rhs);
    }
}

TEST(Sweep, ConfigSampler) {
    auto cfgs = sample_configs(3, 500, 0, 1);
    for (const auto& c : cfgs) {
        EXPECT_TRUE(c.is_valid());
        EXPECT_GE(c.v - c.u, 1e-3);
    }
    auto again = sample_configs(3, 500, 0, 1);
    EXPECT_EQ(cfgs[17].u, again[17].u);
}

TEST(Limits, CorollaryConvergence) {
    auto w = witness_entries();
    auto rep = limit_consistency(w[0], "thm4.5.3/form1", LimitMode::v_to_u, {1e-2, 1e-4, 1e-6});
    EXPECT_EQ(rep.target_id, "thm4.5.3/form1/midpoint");
    EXPECT_TRUE(rep.decreasing);
    EXPECT_LT(rep.points.back().diff, 1e-5);
}

TEST(Limits, ReductionToFullInterval) {
    auto w = witness_entries();
    auto rep = limit_consistency(w[2], "thm4/eq2.2", LimitMode::collapse_to_a, {1e-1, 1e-2, 1e-3, 1e-4});
    EXPECT_TRUE(rep.decreasing);
    EXPECT_LT(rep.points.back().diff, 1e-6);
    // u = a, v = b - eps doubles the bound instead
    auto merged = limit_consistency(w[2], "thm4/eq2.2", LimitMode::merge_to_full, {1e-1, 1e-2, 1e-3, 1e-4});
    EXPECT_NEAR(merged.points.back().value, 2 * merged.points.back().target, 1e-4);
}

TEST(Limits, ConstantIsZero) {
    auto e = constant_entry(0);
    for (auto mode : {LimitMode::merge_to_full, LimitMode::collapse_to_a}) {
        auto rep = limit_consistency(e, "thm4/eq2.2", mode, {1e-1, 1e-2});
        for (const auto& p : rep.points) EXPECT_NEAR(p.diff, 0.0, 1e-12);
    }
    EXPECT_THROW(limit_consistency(e, "thm4/eq2.2", LimitMode::merge_to_full, {1e-2, 1e-1}), PreconditionError);
}

TEST(Report, Tightness) {
    auto corpus = witness_entries();
    SweepOptions o;
    o.configs = 2;
    auto recs = sweep(corpus, {"thm1/chebyshev", "thm1/gruss"}, o);
    auto summary = tightness_report(recs);
    ASSERT_EQ(summary.size(), 2u);
    EXPECT_EQ(summary[0].id, "thm1/chebyshev");
    EXPECT_GE(summary[0].max_tightness.value_or(0), 0.999999);
    EXPECT_EQ(summary[0].argmax_entry, 0u);
    EXPECT_DOUBLE_EQ(summary[1].pass_rate, 1.0);
}
