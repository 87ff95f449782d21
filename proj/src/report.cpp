#include "chebdiff/report.hpp"

#include <cstdio>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "chebdiff/error.hpp"

namespace chebdiff {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// %.17g keeps every double exact and output byte-stable.
std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ordered_json to_json(const VerificationRecord& r) {
    ordered_json j;
    j["theorem"] = r.theorem;
    j["case"] = r.case_;
    j["a"] = r.cfg.a;
    j["u"] = r.cfg.u;
    j["v"] = r.cfg.v;
    j["b"] = r.cfg.b;
    j["lhs"] = r.lhs;
    j["lhs_err"] = r.lhs_err;
    j["rhs"] = r.rhs;
    j["pass"] = r.pass;
    if (r.tightness)
        j["tightness"] = *r.tightness;
    else
        j["tightness"] = "indeterminate";
    j["hypothesis_ok"] = r.hypothesis_ok;
    j["family"] = r.family;
    j["seed"] = r.seed;
    j["entry"] = r.entry;
    j["cfg_index"] = r.cfg_index;
    j["mode"] = to_string(r.cfg.mode);
    j["status"] = r.status;
    j["note"] = r.note;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    return j;
}

VerificationRecord record_from_json(const json& j) {
    try {
        VerificationRecord r;
        r.theorem = j.at("theorem").get<std::string>();
        r.case_ = j.at("case").get<std::string>();
        r.cfg.a = j.at("a").get<double>();
        r.cfg.u = j.at("u").get<double>();
        r.cfg.v = j.at("v").get<double>();
        r.cfg.b = j.at("b").get<double>();
        r.lhs = j.at("lhs").get<double>();
        r.lhs_err = j.at("lhs_err").get<double>();
        r.rhs = j.at("rhs").get<double>();
        r.pass = j.at("pass").get<bool>();
        if (j.at("tightness").is_number()) r.tightness = j.at("tightness").get<double>();
        r.hypothesis_ok = j.at("hypothesis_ok").get<bool>();
        r.family = j.at("family").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.entry = j.value("entry", std::size_t{0});
        r.cfg_index = j.value("cfg_index", std::size_t{0});
        if (j.value("mode", std::string("overlap")) == "nested") r.cfg.mode = IntervalConfig::Mode::nested;
        r.status = j.value("status", std::string("ok"));
        r.note = j.value("note", std::string());
        if (j.contains("params"))
            for (const auto& [k, v] : j.at("params").items()) r.params[k] = v.get<double>();
        return r;
    } catch (const json::exception& e) {
        throw PreconditionError(std::string("malformed record: ") + e.what());
    }
}

void write_jsonl(std::ostream& out, const std::vector<VerificationRecord>& records) {
    for (const auto& r : records) out << to_json(r).dump() << '\n';
}

void write_csv(std::ostream& out, const std::vector<VerificationRecord>& records) {
    out << "theorem,case,a,u,v,b,lhs,lhs_err,rhs,pass,tightness,hypothesis_ok,family,seed,entry,cfg_index,mode,"
           "status,note,params\n";
    for (const auto& r : records) {
        std::string params;
        for (const auto& [k, v] : r.params) {
            if (!params.empty()) params += ';';
            params += k + "=" + g17(v);
        }
        out << csv_escape(r.theorem) << ',' << csv_escape(r.case_) << ',' << g17(r.cfg.a) << ',' << g17(r.cfg.u)
            << ',' << g17(r.cfg.v) << ',' << g17(r.cfg.b) << ',' << g17(r.lhs) << ',' << g17(r.lhs_err) << ','
            << g17(r.rhs) << ',' << (r.pass ? "true" : "false") << ','
            << (r.tightness ? g17(*r.tightness) : "indeterminate") << ',' << (r.hypothesis_ok ? "true" : "false")
            << ',' << csv_escape(r.family) << ',' << r.seed << ',' << r.entry << ',' << r.cfg_index << ','
            << to_string(r.cfg.mode) << ',' << r.status << ',' << csv_escape(r.note) << ',' << csv_escape(params)
            << '\n';
    }
}

std::vector<VerificationRecord> read_jsonl(std::istream& in) {
    std::vector<VerificationRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw PreconditionError("line " + std::to_string(lineno) + ": " + e.what());
        }
        out.push_back(record_from_json(j));
    }
    return out;
}

void write_summary(std::ostream& out, const std::vector<TightnessSummary>& summary) {
    char line[256];
    std::snprintf(line, sizeof line, "%-26s %8s %8s %9s %6s %6s %6s %12s  %s\n", "id", "records", "certified",
                  "pass_rate", "viol", "indet", "failed", "max_tight", "argmax (entry: u, v)");
    out << line;
    for (const auto& s : summary) {
        std::string tight = s.max_tightness ? g17(*s.max_tightness).substr(0, 10) : "-";
        std::string where = s.max_tightness ? std::to_string(s.argmax_entry) + ": " + g17(s.argmax_cfg.u).substr(0, 8) +
                                                  ", " + g17(s.argmax_cfg.v).substr(0, 8)
                                            : "-";
        std::snprintf(line, sizeof line, "%-26s %8zu %8zu %9.6f %6zu %6zu %6zu %12s  %s\n", s.id.c_str(), s.records,
                      s.certified, s.pass_rate, s.violations, s.indeterminate, s.failed, tight.c_str(), where.c_str());
        out << line;
    }
}

// --- RunConfig --------------------------------------------------------------------

IntervalConfig RunConfig::interval() const {
    return {a, u, v, b, nested ? IntervalConfig::Mode::nested : IntervalConfig::Mode::overlap};
}

SweepOptions RunConfig::sweep_options() const {
    SweepOptions o;
    o.seed = seed;
    o.configs = configs;
    o.tol = tol;
    o.scale_rhs = scale_rhs;
    o.mode = nested ? IntervalConfig::Mode::nested : IntervalConfig::Mode::overlap;
    o.threads = threads;
    return o;
}

std::set<Family> RunConfig::family_set() const {
    if (families.empty()) return all_families();
    std::set<Family> out;
    for (const auto& f : families) out.insert(family_from_string(f));
    return out;
}

std::vector<std::string> RunConfig::theorem_list() const {
    if (theorems.empty()) return sweep_ids();
    for (const auto& id : theorems) split_id(id);
    return theorems;
}

ordered_json to_json(const RunConfig& c) {
    ordered_json j;
    j["command"] = c.command;
    j["f"] = c.f_src;
    j["g"] = c.g_src;
    j["theorem"] = c.theorem;
    ordered_json k = ordered_json::object();
    for (const auto& [name, v] : c.constants) k[name] = v;
    j["constants"] = k;
    j["a"] = c.a;
    j["u"] = c.u;
    j["v"] = c.v;
    j["b"] = c.b;
    j["nested"] = c.nested;
    j["theorems"] = c.theorems;
    j["families"] = c.families;
    j["seed"] = c.seed;
    j["corpus_size"] = c.corpus_size;
    j["configs"] = c.configs;
    j["witnesses"] = c.witnesses;
    j["threads"] = c.threads;
    j["tol"] = c.tol;
    j["budget"] = c.budget;
    j["scale_rhs"] = c.scale_rhs;
    j["out"] = c.out;
    j["format"] = c.format;
    return j;
}

RunConfig run_config_from_json(const json& j) {
    if (!j.is_object()) throw PreconditionError("config must be a JSON object");
    RunConfig c;
    auto num = [&](const std::string& key, const json& v) {
        if (!v.is_number()) throw PreconditionError("config key '" + key + "' must be a number");
        return v.get<double>();
    };
    auto count = [&](const std::string& key, const json& v) -> std::uint64_t {
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
            throw PreconditionError("config key '" + key + "' must be a nonnegative integer");
        return v.get<std::uint64_t>();
    };
    auto str = [&](const std::string& key, const json& v) {
        if (!v.is_string()) throw PreconditionError("config key '" + key + "' must be a string");
        return v.get<std::string>();
    };
    auto strs = [&](const std::string& key, const json& v) {
        if (!v.is_array()) throw PreconditionError("config key '" + key + "' must be an array of strings");
        std::vector<std::string> out;
        for (const auto& x : v) out.push_back(str(key, x));
        return out;
    };
    auto flag = [&](const std::string& key, const json& v) {
        if (!v.is_boolean()) throw PreconditionError("config key '" + key + "' must be true or false");
        return v.get<bool>();
    };
    for (const auto& [key, v] : j.items()) {
        if (key == "command") c.command = str(key, v);
        else if (key == "f") c.f_src = str(key, v);
        else if (key == "g") c.g_src = str(key, v);
        else if (key == "theorem") c.theorem = str(key, v);
        else if (key == "constants") {
            if (!v.is_object()) throw PreconditionError("config key 'constants' must be an object");
            for (const auto& [name, x] : v.items()) c.constants[name] = num("constants." + name, x);
        } else if (key == "a") c.a = num(key, v);
        else if (key == "u") c.u = num(key, v);
        else if (key == "v") c.v = num(key, v);
        else if (key == "b") c.b = num(key, v);
        else if (key == "nested") c.nested = flag(key, v);
        else if (key == "theorems") c.theorems = strs(key, v);
        else if (key == "families") c.families = strs(key, v);
        else if (key == "seed") c.seed = count(key, v);
        else if (key == "corpus_size") c.corpus_size = count(key, v);
        else if (key == "configs") c.configs = count(key, v);
        else if (key == "witnesses") c.witnesses = flag(key, v);
        else if (key == "threads") c.threads = static_cast<unsigned>(count(key, v));
        else if (key == "tol") c.tol = num(key, v);
        else if (key == "budget") c.budget = static_cast<long>(count(key, v));
        else if (key == "scale_rhs") c.scale_rhs = num(key, v);
        else if (key == "out") c.out = str(key, v);
        else if (key == "format") c.format = str(key, v);
        else throw PreconditionError("unknown config key '" + key + "'");
    }
    if (c.format != "jsonl" && c.format != "csv") throw PreconditionError("format must be jsonl or csv");
    if (!(c.tol > 0.0)) throw PreconditionError("tol must be positive");
    return c;
}

std::vector<CorpusEntry> build_corpus(const RunConfig& c) {
    std::vector<CorpusEntry> corpus;
    if (c.witnesses) corpus = witness_entries(0);
    if (c.corpus_size > 0) {
        const std::size_t offset = corpus.size();
        for (auto& e : generate_corpus(c.seed, c.corpus_size, c.family_set())) {
            e.index += offset;
            corpus.push_back(std::move(e));
        }
    }
    if (corpus.empty()) throw PreconditionError("empty corpus");
    return corpus;
}

}  // namespace chebdiff
