#pragma once

// Seeded function corpora with exact class constants, LHS-vs-RHS checks for
// every bound id, limit checks and tightness summaries.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chebdiff/bounds.hpp"
#include "chebdiff/function.hpp"

namespace chebdiff {

enum class Family { polynomial, trig, step, piecewise_linear, holder_root, witness };

std::string to_string(Family family);
/// Accepts the names printed by to_string ("piecewise-linear", "holder-root").
Family family_from_string(const std::string& name);
/// The five generated families (not `witness`).
std::set<Family> all_families();

struct CorpusEntry {
    CorpusEntry(FunctionSpec f_, FunctionSpec g_) : f(std::move(f_)), g(std::move(g_)) {}

    std::size_t index = 0;
    FunctionSpec f;
    FunctionSpec g;
    Family f_family = Family::polynomial;
    Family g_family = Family::polynomial;
    bool same = false;       // g is f
    std::uint64_t seed = 0;  // per-entry generator seed
    double p = 2.0;          // Lebesgue exponent of the Lp cases
    double alpha = 2.0;      // exponent of f' in thm4.5.12
    std::map<std::string, double> params;  // generator draws, prefixed "f." / "g."

    /// "polynomial/trig", or "step" when g is f.
    std::string family() const;
};

/// Constants rounded up by this relative amount (and range minima down).
inline constexpr double kConstantSlack = 1e-9;

/// `size` random entries, deterministic in `seed`. Throws PreconditionError
/// for size < 1 or an empty family set.
std::vector<CorpusEntry> generate_corpus(std::uint64_t seed, std::size_t size, const std::set<Family>& families);

/// f = g = x, f = g = sign(x - 1/2), f = g = cos(pi x) on [0, 1], indexed
/// from `first_index`.
std::vector<CorpusEntry> witness_entries(std::size_t first_index = 0);

struct VerificationRecord {
    std::size_t entry = 0;
    std::string theorem;  // e.g. "thm4.5.1"
    std::string case_;    // e.g. "Linf"; empty when the theorem has one case
    IntervalConfig cfg;
    std::size_t cfg_index = 0;
    double lhs = 0.0;
    double lhs_err = 0.0;  // includes quadrature error of numeric right-hand sides
    double rhs = 0.0;
    bool pass = false;
    std::optional<double> tightness;  // empty: indeterminate
    bool hypothesis_ok = true;
    std::string family;
    std::uint64_t seed = 0;
    std::string status = "ok";  // "ok", "lhs-failed", "rhs-failed"
    std::string note;
    std::map<std::string, double> params;

    std::string id() const { return case_.empty() ? theorem : theorem + "/" + case_; }
    bool certified_violation() const { return status == "ok" && hypothesis_ok && !pass; }
};

/// lhs <= rhs + lhs_err + 1e-9.
bool passes(double lhs, double lhs_err, double rhs);
/// lhs/rhs when rhs > 10 lhs_err and |lhs| >= 10 lhs_err.
std::optional<double> tightness(double lhs, double lhs_err, double rhs);

/// True for ids whose left side is |T_a^b| over the whole interval.
bool is_full_interval(const std::string& id);
/// True for the mean-difference ids (bar4.3.1, cer4.3.*).
bool is_mean_difference(const std::string& id);

/// Checks one bound id on one entry. Returns nullopt when a constant the id
/// needs was not declared (the entry is outside the class entirely); entries
/// with declared constants but a failing sampled hypothesis come back with
/// hypothesis_ok = false. Never throws for numeric failures.
std::optional<VerificationRecord> check_theorem(const CorpusEntry& entry, const std::string& id,
                                                const IntervalConfig& cfg, double tol = kDefaultTol,
                                                double scale_rhs = 1.0);

/// `count` configurations on [a, b] with v - u >= 1e-3 (b - a).
std::vector<IntervalConfig> sample_configs(std::uint64_t seed, std::size_t count, double a, double b,
                                           IntervalConfig::Mode mode = IntervalConfig::Mode::overlap);

struct SweepOptions {
    std::uint64_t seed = 42;
    std::size_t configs = 20;
    double tol = kDefaultTol;
    double scale_rhs = 1.0;  // debug: multiplies every rhs
    IntervalConfig::Mode mode = IntervalConfig::Mode::overlap;
    unsigned threads = 0;  // 0: hardware concurrency
};

/// Every (entry, id, cfg) check. Full-interval ids give one record per
/// entry. Output is ordered by (entry, id position, cfg index) whatever the
/// thread count.
std::vector<VerificationRecord> sweep(const std::vector<CorpusEntry>& corpus, const std::vector<std::string>& ids,
                                      const SweepOptions& options);

enum class LimitMode {
    v_to_u,          // general rhs at v = u + eps against the corollary form
    merge_to_full,   // u = a, v = b - eps
    collapse_to_a,   // u = a, v = a + eps
};

std::string to_string(LimitMode mode);

struct LimitPoint {
    double eps = 0.0;
    double value = 0.0;
    double target = 0.0;
    double diff = 0.0;  // |value - target|
};

struct LimitReport {
    std::string theorem;
    LimitMode mode = LimitMode::v_to_u;
    std::string target_id;  // what `target` was computed from
    std::vector<LimitPoint> points;
    bool decreasing = false;  // diff non-increasing, strictly when above noise
    double fitted_c = 0.0;    // max diff / eps
};

/// v_to_u compares `id` against `id/midpoint` when u is the midpoint and
/// `id/collapsed` otherwise. For thm4/eq2.2 the merge modes compare level1
/// with the eq2.1 bound; for any other id they compare |T_a^v - T_u^b| with
/// |T_a^b|. `u` is used by v_to_u only (nullopt: the midpoint).
LimitReport limit_consistency(const CorpusEntry& entry, const std::string& id, LimitMode mode,
                              const std::vector<double>& eps_schedule, std::optional<double> u = std::nullopt,
                              double tol = kDefaultTol);

struct TightnessSummary {
    std::string id;
    std::size_t records = 0;
    std::size_t certified = 0;  // hypothesis_ok and status ok
    std::size_t passed = 0;     // among certified
    std::size_t violations = 0;
    std::size_t indeterminate = 0;
    std::size_t failed = 0;  // lhs-failed or rhs-failed
    double pass_rate = 1.0;
    std::optional<double> max_tightness;
    std::size_t argmax_entry = 0;
    IntervalConfig argmax_cfg;
};

/// One summary per id present in `records`, in first-seen order.
std::vector<TightnessSummary> tightness_report(const std::vector<VerificationRecord>& records);

}  // namespace chebdiff
