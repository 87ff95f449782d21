#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "chebdiff/error.hpp"
#include "chebdiff/report.hpp"

using namespace chebdiff;
using nlohmann::json;

namespace {
std::vector<VerificationRecord> small_run() {
    RunConfig c;
    c.seed = 3;
    c.corpus_size = 3;
    c.configs = 2;
    c.theorems = {"thm4.5.1/Linf", "eq2.1", "cer4.3.3"};
    c.threads = 2;
    return sweep(build_corpus(c), c.theorem_list(), c.sweep_options());
}
}  // namespace

TEST(Json, RecordKeyOrder) {
    auto recs = small_run();
    ASSERT_FALSE(recs.empty());
    auto j = to_json(recs.front());
    std::vector<std::string> keys;
    for (auto& [k, v] : j.items()) keys.push_back(k);
    const std::vector<std::string> want = {"theorem", "case",  "a",        "u",    "v",      "b",     "lhs",
                                           "lhs_err", "rhs",   "pass",     "tightness", "hypothesis_ok",
                                           "family",  "seed",  "entry",    "cfg_index", "mode",  "status",
                                           "note",    "params"};
    EXPECT_EQ(keys, want);
}

TEST(Json, RecordRoundTrip) {
    auto recs = small_run();
    std::stringstream io;
    write_jsonl(io, recs);
    const std::string first = io.str();
    auto back = read_jsonl(io);
    ASSERT_EQ(back.size(), recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        EXPECT_EQ(back[i].id(), recs[i].id());
        EXPECT_EQ(back[i].lhs, recs[i].lhs);
        EXPECT_EQ(back[i].rhs, recs[i].rhs);
        EXPECT_EQ(back[i].tightness.has_value(), recs[i].tightness.has_value());
        EXPECT_EQ(back[i].params, recs[i].params);
        EXPECT_EQ(back[i].cfg.u, recs[i].cfg.u);
    }
    std::stringstream again;
    write_jsonl(again, back);
    EXPECT_EQ(again.str(), first);
}

TEST(Json, Csv) {
    auto recs = small_run();
    std::stringstream out;
    write_csv(out, recs);
    std::string header;
    std::getline(out, header);
    EXPECT_EQ(header.rfind("theorem,case,a,u,v,b,lhs", 0), 0u);
    std::size_t lines = 0;
    for (std::string l; std::getline(out, l);) ++lines;
    EXPECT_EQ(lines, recs.size());
}

TEST(Json, Summary) {
    auto recs = small_run();
    std::stringstream out;
    write_summary(out, tightness_report(recs));
    EXPECT_NE(out.str().find("thm4.5.1/Linf"), std::string::npos);
    EXPECT_NE(out.str().find("cer4.3.3"), std::string::npos);
}

TEST(RunConfigJson, RoundTrip) {
    RunConfig c;
    c.seed = 9;
    c.theorems = {"eq2.1"};
    c.families = {"trig"};
    c.nested = true;
    c.scale_rhs = 0.5;
    RunConfig back = run_config_from_json(json::parse(to_json(c).dump()));
    EXPECT_EQ(back.seed, 9u);
    EXPECT_EQ(back.theorems, c.theorems);
    EXPECT_EQ(back.families, c.families);
    EXPECT_TRUE(back.nested);
    EXPECT_EQ(back.scale_rhs, 0.5);
    EXPECT_EQ(to_json(back).dump(), to_json(c).dump());
}

TEST(RunConfigJson, Rejects) {
    EXPECT_THROW(run_config_from_json(json::parse(R"({"seeed": 1})")), PreconditionError);
    EXPECT_THROW(run_config_from_json(json::parse(R"({"seed": -1})")), PreconditionError);
    EXPECT_THROW(run_config_from_json(json::parse(R"({"seed": "1"})")), PreconditionError);
    EXPECT_THROW(run_config_from_json(json::parse(R"({"nested": 1})")), PreconditionError);
    EXPECT_THROW(run_config_from_json(json::parse(R"({"format": "xml"})")), PreconditionError);
    EXPECT_THROW(run_config_from_json(json::parse(R"({"tol": 0})")), PreconditionError);
    EXPECT_THROW(run_config_from_json(json::parse("[1]")), PreconditionError);
}

TEST(RunConfigJson, FamiliesAndCorpus) {
    RunConfig c;
    c.families = {"step"};
    c.corpus_size = 5;
    auto corpus = build_corpus(c);
    ASSERT_EQ(corpus.size(), 8u);
    EXPECT_EQ(corpus[0].family(), "witness");
    for (std::size_t i = 3; i < corpus.size(); ++i) {
        EXPECT_EQ(corpus[i].index, i);
        EXPECT_EQ(corpus[i].f_family, Family::step);
    }
    c.families = {"nope"};
    EXPECT_THROW(build_corpus(c), PreconditionError);
    c.families = {};
    c.corpus_size = 0;
    c.witnesses = false;
    EXPECT_THROW(build_corpus(c), PreconditionError);
}
