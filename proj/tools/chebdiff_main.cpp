// chebdiff command-line front end: eval, bound, verify, report.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "chebdiff/bounds.hpp"
#include "chebdiff/error.hpp"
#include "chebdiff/functional.hpp"
#include "chebdiff/report.hpp"
#include "chebdiff/verify.hpp"

using namespace chebdiff;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitError = 2;

const char* const kConstantNames[] = {"V",  "L",  "H",  "p",  "q",  "alpha", "beta", "finf", "fp",  "f1",
                                      "f2", "falpha", "ginf", "gp", "g1", "g2",    "m1",   "M1",   "m2",  "M2",
                                      "m",  "M",  "ga", "gu", "gv", "gb",    "gm",   "fa",   "fb",  "fs0"};

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void apply_budget_env() {
    const char* env = std::getenv("CHEB_BUDGET");
    if (!env || !*env) return;
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n <= 0) throw PreconditionError(std::string("CHEB_BUDGET must be a positive integer, got '") + env + "'");
    set_default_budget(n);
}

// --- eval -------------------------------------------------------------------------

struct EvalArgs {
    std::string f, g;
    double a = 0.0, b = 1.0;
    double tol = kDefaultTol;
    std::string identity;
};

int run_eval(const EvalArgs& e) {
    if (!(e.b > e.a)) throw PreconditionError("degenerate interval [" + g12(e.a) + ", " + g12(e.b) + "]");
    const Interval dom{e.a, e.b};
    const FunctionSpec f = parse_function(e.f, dom);
    const FunctionSpec g = parse_function(e.g, dom);
    QuadResult r;
    if (e.identity.empty())
        r = chebyshev_functional(f, g, e.a, e.b, e.tol);
    else
        r = chebyshev_via_identity(f, g, e.a, e.b, e.identity == "cerone" ? Identity::cerone : Identity::dragomir, e.tol);
    std::printf("%.11f ± %.2g\n", r.value, r.err_est);
    return 0;
}

// --- bound ------------------------------------------------------------------------

struct BoundArgs {
    std::string id;
    std::map<std::string, double> constants;
    double a = 0.0, u = 0.25, v = 0.75, b = 1.0;
    bool nested = false;
    std::string f, g;
    double tol = kDefaultTol;
    bool json = false;
};

int run_bound(const BoundArgs& ba) {
    IntervalConfig cfg{ba.a, ba.u, ba.v, ba.b, ba.nested ? IntervalConfig::Mode::nested : IntervalConfig::Mode::overlap};
    std::optional<FunctionSpec> f, g;
    BoundParams params;
    if (!ba.f.empty() || !ba.g.empty()) {
        if (!(ba.b > ba.a)) throw PreconditionError("degenerate interval [" + g12(ba.a) + ", " + g12(ba.b) + "]");
        const Interval dom{ba.a, ba.b};
        f = parse_function(ba.f.empty() ? ba.g : ba.f, dom);
        g = parse_function(ba.g.empty() ? ba.f : ba.g, dom);
        // function values only; class constants come from the flags
        for (const char* k : {"ga", "gu", "gv", "gb", "gm", "fa", "fb", "fs0"}) {
            BoundParams all = params_from(*f, *g, cfg);
            if (all.contains(k)) params[k] = all.at(k);
        }
    }
    for (const auto& [k, v] : ba.constants) params[k] = v;
    const BoundResult r = evaluate_bound(ba.id, params, cfg, f ? &*f : nullptr, g ? &*g : nullptr, ba.tol);
    if (ba.json) {
        nlohmann::ordered_json j;
        j["theorem"] = r.theorem;
        j["rhs"] = r.rhs;
        j["inputs"] = r.inputs;
        j["preconditions_ok"] = r.preconditions_ok;
        j["checks"] = r.checks;
        j["note"] = r.note;
        std::cout << j.dump() << '\n';
        return 0;
    }
    std::cout << "theorem: " << r.theorem << '\n' << "rhs: " << g17(r.rhs) << '\n' << "inputs:";
    for (const auto& [k, v] : r.inputs) std::cout << ' ' << k << '=' << g12(v);
    std::cout << '\n' << "preconditions_ok: " << (r.preconditions_ok ? "true" : "false") << '\n';
    for (const auto& c : r.checks) std::cout << "check: " << c << '\n';
    if (!r.note.empty()) std::cout << "note: " << r.note << '\n';
    return 0;
}

// --- verify -----------------------------------------------------------------------

int finish_report(const std::vector<VerificationRecord>& records) {
    const auto summary = tightness_report(records);
    write_summary(std::cout, summary);
    std::size_t violations = 0, failed = 0, certified = 0;
    for (const auto& s : summary) {
        violations += s.violations;
        failed += s.failed;
        certified += s.certified;
    }
    std::cout << "records " << records.size() << ", certified " << certified << ", certified violations "
              << violations << ", failed " << failed << '\n';
    if (failed) return kExitError;
    return violations ? kExitViolation : 0;
}

void write_records(const RunConfig& c, const std::vector<VerificationRecord>& records) {
    if (c.out.empty()) return;
    std::ofstream out(c.out, std::ios::binary);
    if (!out) throw Error("cannot open '" + c.out + "' for writing");
    if (c.format == "csv")
        write_csv(out, records);
    else
        write_jsonl(out, records);
    if (!out) throw Error("write to '" + c.out + "' failed");
}

int run_verify(RunConfig c, bool dump_config) {
    if (c.format != "jsonl" && c.format != "csv") throw PreconditionError("format must be jsonl or csv");
    if (c.budget > 0) set_default_budget(c.budget);
    if (dump_config) {
        std::cout << to_json(c).dump(2) << '\n';
        return 0;
    }
    const auto corpus = build_corpus(c);
    const auto records = sweep(corpus, c.theorem_list(), c.sweep_options());
    write_records(c, records);
    return finish_report(records);
}

int run_report(const std::string& path, const std::string& format, const std::string& out_path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    const auto records = read_jsonl(in);
    if (format == "csv") {
        if (out_path.empty()) {
            write_csv(std::cout, records);
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw Error("cannot open '" + out_path + "' for writing");
            write_csv(out, records);
        }
        return 0;
    }
    if (records.empty()) throw PreconditionError("no records in '" + path + "'");
    return finish_report(records);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw PreconditionError("config '" + path + "': " + e.what());
    }
    return run_config_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chebdiff: Chebyshev functionals, their differences and bounds"};
    app.require_subcommand(1);

    EvalArgs ea;
    auto* eval = app.add_subcommand("eval", "T(f, g) over [a, b]");
    eval->add_option("f", ea.f, "expression for f")->required();
    eval->add_option("g", ea.g, "expression for g")->required();
    std::vector<double> ends;
    eval->add_option("ends", ends, "a b (positional form of --a --b)")->expected(0, 2);
    eval->add_option("--a", ea.a, "left end");
    eval->add_option("--b", ea.b, "right end");
    eval->add_option("--tol", ea.tol, "absolute tolerance");
    eval->add_option("--identity", ea.identity, "evaluate through an identity instead")
        ->check(CLI::IsMember({"cerone", "dragomir"}));

    BoundArgs ba;
    auto* bound = app.add_subcommand("bound", "evaluate one bound from constants");
    bound->add_option("id", ba.id, "bound id, e.g. thm4.5.1/Linf")->required();
    for (const char* name : kConstantNames) {
        bound->add_option_function<double>(std::string("--") + name,
                                           [&ba, name](const double& x) { ba.constants[name] = x; }, "constant");
    }
    bound->add_option("--a", ba.a);
    bound->add_option("--u", ba.u);
    bound->add_option("--v", ba.v);
    bound->add_option("--b", ba.b);
    bound->add_flag("--nested", ba.nested, "inner interval [u, v] inside [a, b]");
    bound->add_option("--f", ba.f, "expression for f (needed by eq2.1 and thm4/eq2.2)");
    bound->add_option("--g", ba.g, "expression for g");
    bound->add_option("--tol", ba.tol);
    bound->add_flag("--json", ba.json, "print one JSON object");

    RunConfig vc;
    std::string config_path;
    bool dump_config = false;
    bool no_witnesses = false;
    auto* verify = app.add_subcommand("verify", "sweep the corpus and check every bound");
    verify->add_option("--config", config_path, "JSON run configuration");
    auto* o_seed = verify->add_option("--seed", vc.seed);
    auto* o_size = verify->add_option("--size", vc.corpus_size, "generated entries");
    auto* o_cfgs = verify->add_option("--configs", vc.configs, "interval configurations per entry");
    auto* o_thms = verify->add_option("--theorems", vc.theorems)->delimiter(',');
    auto* o_fams = verify->add_option("--families", vc.families)->delimiter(',');
    auto* o_nowit = verify->add_flag("--no-witnesses", no_witnesses);
    auto* o_out = verify->add_option("--out", vc.out, "record file");
    auto* o_fmt = verify->add_option("--format", vc.format)->check(CLI::IsMember({"jsonl", "csv"}));
    auto* o_scale = verify->add_option("--scale-rhs", vc.scale_rhs, "debug: multiply every rhs");
    auto* o_nested = verify->add_flag("--nested", vc.nested);
    auto* o_tol = verify->add_option("--tol", vc.tol);
    auto* o_threads = verify->add_option("--threads", vc.threads);
    verify->add_flag("--dump-config", dump_config, "print the effective configuration and exit");

    std::string report_path, report_format = "text", report_out;
    auto* report = app.add_subcommand("report", "summarize a JSONL record file");
    report->add_option("file", report_path)->required();
    report->add_option("--format", report_format)->check(CLI::IsMember({"text", "csv"}));
    report->add_option("--out", report_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        apply_budget_env();
        if (*eval) {
            if (ends.size() == 1) throw PreconditionError("give both ends a and b");
            if (ends.size() == 2) {
                ea.a = ends[0];
                ea.b = ends[1];
            }
            return run_eval(ea);
        }
        if (*bound) return run_bound(ba);
        if (*verify) {
            RunConfig c = config_path.empty() ? RunConfig{} : load_config(config_path);
            c.command = "verify";
            // flags override the file
            if (o_seed->count()) c.seed = vc.seed;
            if (o_size->count()) c.corpus_size = vc.corpus_size;
            if (o_cfgs->count()) c.configs = vc.configs;
            if (o_thms->count()) c.theorems = vc.theorems;
            if (o_fams->count()) c.families = vc.families;
            if (o_nowit->count()) c.witnesses = false;
            if (o_out->count()) c.out = vc.out;
            if (o_fmt->count()) c.format = vc.format;
            if (o_scale->count()) c.scale_rhs = vc.scale_rhs;
            if (o_nested->count()) c.nested = true;
            if (o_tol->count()) c.tol = vc.tol;
            if (o_threads->count()) c.threads = vc.threads;
            return run_verify(c, dump_config);
        }
        if (*report) return run_report(report_path, report_format, report_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
