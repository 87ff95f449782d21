#pragma once

// Serialization of verification records and run configurations.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "chebdiff/verify.hpp"
#include "json.hpp"

namespace chebdiff {

/// Flat record with a fixed key order: theorem case a u v b lhs lhs_err rhs
/// pass tightness hypothesis_ok family seed entry cfg_index mode status note
/// params. tightness is a number or "indeterminate".
nlohmann::ordered_json to_json(const VerificationRecord& r);
/// Inverse of to_json. Throws PreconditionError on a malformed record.
VerificationRecord record_from_json(const nlohmann::json& j);

void write_jsonl(std::ostream& out, const std::vector<VerificationRecord>& records);
void write_csv(std::ostream& out, const std::vector<VerificationRecord>& records);
/// Reads records written by write_jsonl; blank lines are skipped.
std::vector<VerificationRecord> read_jsonl(std::istream& in);

/// Fixed-width table, one line per id.
void write_summary(std::ostream& out, const std::vector<TightnessSummary>& summary);

/// Everything a run needs; a run is reproducible from this alone.
struct RunConfig {
    std::string command = "verify";
    // eval / bound
    std::string f_src;
    std::string g_src;
    std::string theorem;
    std::map<std::string, double> constants;
    // geometry
    double a = 0.0;
    double u = 0.25;
    double v = 0.75;
    double b = 1.0;
    bool nested = false;
    // verify
    std::vector<std::string> theorems;  // empty: every swept id
    std::vector<std::string> families;  // empty: every generated family
    std::uint64_t seed = 42;
    std::size_t corpus_size = 200;
    std::size_t configs = 20;
    bool witnesses = true;
    unsigned threads = 0;
    // numerics and output
    double tol = kDefaultTol;
    long budget = 0;  // 0: library default
    double scale_rhs = 1.0;
    std::string out;
    std::string format = "jsonl";

    IntervalConfig interval() const;
    SweepOptions sweep_options() const;
    std::set<Family> family_set() const;
    std::vector<std::string> theorem_list() const;
};

nlohmann::ordered_json to_json(const RunConfig& c);
/// Unknown keys and wrongly typed values throw PreconditionError.
RunConfig run_config_from_json(const nlohmann::json& j);

/// Witnesses (when enabled) followed by the generated corpus, indexed in order.
std::vector<CorpusEntry> build_corpus(const RunConfig& c);

}  // namespace chebdiff
