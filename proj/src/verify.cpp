#include "chebdiff/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "chebdiff/analyze.hpp"
#include "chebdiff/error.hpp"
#include "chebdiff/functional.hpp"

namespace chebdiff {

namespace {

constexpr Interval kUnit{0.0, 1.0};

double up(double v) { return v + kConstantSlack * std::max(1.0, std::fabs(v)); }
double down(double v) { return v - kConstantSlack * std::max(1.0, std::fabs(v)); }

// Shortest round-trip text; negatives parenthesised so they can follow an operator.
std::string num(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, res.ptr);
    return v < 0 ? "(" + s + ")" : s;
}

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }
    bool chance(double p) { return uniform() < p; }
    template <class T, std::size_t N>
    T pick(const T (&items)[N]) {
        return items[static_cast<std::size_t>(uniform() * N)];
    }

private:
    std::mt19937_64 eng_;
};

struct Drawn {
    FunctionSpec h;
    std::map<std::string, double> params;
};

// Constants of a function with bounded derivative, from critical points and
// tight quadrature.
ClassConstants smooth_constants(const FunctionSpec& h, const std::vector<double>& exps) {
    ClassConstants c;
    const double tv = exact_total_variation(h, kUnit.lo, kUnit.hi);
    c.total_variation = up(tv);
    const double sup = exact_sup_abs_derivative(h, kUnit.lo, kUnit.hi);
    if (std::isfinite(sup)) {
        c.lipschitz = up(sup);
        c.holder = HolderConstant{1.0, up(sup)};
        c.lp_norms[kInf] = up(sup);
    }
    // |h'|^p has kinks where h' changes sign; split there too
    const FunctionSpec dh = differentiate(h);
    std::vector<double> breaks = dh.breakpoints();
    if (auto roots = find_roots(*h.derivative_expr(), kUnit.lo, kUnit.hi, 256))
        breaks.insert(breaks.end(), roots->begin(), roots->end());
    std::sort(breaks.begin(), breaks.end());
    for (double p : exps) {
        if (c.lp_norms.contains(p)) continue;
        const double tol = 1e-12 * std::max(1.0, std::pow(std::isfinite(sup) ? sup : 1.0, p));
        const QuadResult r = integrate([&](double t) { return std::pow(std::fabs(dh(t)), p); }, kUnit.lo,
                                       kUnit.hi, breaks, tol);
        c.lp_norms[p] = up(std::pow(std::max(0.0, r.value + r.err_est), 1.0 / p));
    }
    const RangeBounds r = exact_range(h, kUnit.lo, kUnit.hi);
    c.range_bounds = RangeBounds{down(r.m), up(r.M)};
    c.monotone_nondecreasing = tv <= (h(kUnit.hi) - h(kUnit.lo)) * (1 + 1e-12) + 1e-15;
    return c;
}

std::vector<double> exponents(double p, double alpha) { return {1.0, 2.0, p, alpha}; }

Drawn draw_polynomial(Rng& rng, const std::vector<double>& exps) {
    const int deg = rng.integer(1, 5);
    const bool monotone = rng.chance(0.3);
    std::map<std::string, double> params{{"degree", deg}, {"monotone", monotone ? 1.0 : 0.0}};
    std::string src;
    for (int k = 0; k <= deg; ++k) {
        double c = rng.uniform(-1, 1);
        if (monotone) c = std::fabs(c);
        params["c" + std::to_string(k)] = c;
        if (k > 0) src += " + ";
        src += num(c);
        if (k == 1) src += "*x";
        if (k > 1) src += "*x^" + std::to_string(k);
    }
    FunctionSpec h = parse_function(src, kUnit);
    return {h.with_constants(smooth_constants(h, exps)), params};
}

Drawn draw_trig(Rng& rng, const std::vector<double>& exps) {
    const double c1 = rng.uniform(-1, 1), c2 = rng.uniform(-1, 1);
    const double k1 = rng.uniform(0.5, 8), k2 = rng.uniform(0.5, 8);
    const double phi = rng.uniform(0, 2 * std::numbers::pi);
    const std::string src =
        num(c1) + "*sin(" + num(k1) + "*x + " + num(phi) + ") + " + num(c2) + "*cos(" + num(k2) + "*x)";
    FunctionSpec h = parse_function(src, kUnit);
    return {h.with_constants(smooth_constants(h, exps)),
            {{"c1", c1}, {"c2", c2}, {"k1", k1}, {"k2", k2}, {"phi", phi}}};
}

Drawn draw_step(Rng& rng) {
    const int n = rng.integer(1, 3);
    const bool monotone = rng.chance(0.3);
    std::map<std::string, double> params{{"terms", n}};
    std::vector<double> cs, ts;
    std::string src;
    bool nondecreasing = true;
    for (int i = 0; i < n; ++i) {
        double c = rng.uniform(-1, 1);
        if (monotone) c = std::fabs(c);
        const double t = rng.uniform(0.05, 0.95);
        cs.push_back(c);
        ts.push_back(t);
        nondecreasing = nondecreasing && c >= 0;
        params["c" + std::to_string(i + 1)] = c;
        params["t" + std::to_string(i + 1)] = t;
        if (i > 0) src += " + ";
        src += num(c) + "*sign(x - " + num(t) + ")";
    }
    FunctionSpec h = parse_function(src, kUnit);
    ClassConstants c;
    double tv = 0.0;
    for (double ci : cs) tv += 2.0 * std::fabs(ci);
    c.total_variation = up(tv);
    // finitely many values: one per piece and one at each jump
    std::vector<double> pts = ts;
    pts.push_back(kUnit.lo);
    pts.push_back(kUnit.hi);
    std::sort(pts.begin(), pts.end());
    std::vector<double> samples = pts;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) samples.push_back(0.5 * (pts[i] + pts[i + 1]));
    double m = kInf, M = -kInf;
    for (double t : samples) {
        m = std::min(m, h(t));
        M = std::max(M, h(t));
    }
    c.range_bounds = RangeBounds{down(m), up(M)};
    c.monotone_nondecreasing = nondecreasing;
    return {h.with_constants(c), params};
}

Drawn draw_piecewise_linear(Rng& rng, const std::vector<double>& exps) {
    const int n = rng.integer(1, 3);
    const double c0 = rng.uniform(-1, 1);
    std::map<std::string, double> params{{"terms", n}, {"c0", c0}};
    std::string src = num(c0) + "*x";
    for (int i = 0; i < n; ++i) {
        const double c = rng.uniform(-1, 1);
        const double t = rng.uniform(0.05, 0.95);
        params["c" + std::to_string(i + 1)] = c;
        params["t" + std::to_string(i + 1)] = t;
        src += " + " + num(c) + "*abs(x - " + num(t) + ")";
    }
    FunctionSpec h = parse_function(src, kUnit);
    return {h.with_constants(smooth_constants(h, exps)), params};
}

Drawn draw_holder_root(Rng& rng, const std::vector<double>& exps) {
    double c = rng.uniform(-1, 1);
    if (c == 0.0) c = 0.5;
    const double x0 = rng.chance(0.2) ? 0.0 : rng.uniform(0.05, 0.95);
    static constexpr double kOrders[] = {0.25, 0.5, 0.75, 1.0};
    const double r = rng.pick(kOrders);
    const std::string base = "abs(x - " + num(x0) + ")";
    const std::string src = num(c) + "*" + (r == 1.0 ? base : base + "^" + num(r));
    FunctionSpec h = parse_function(src, kUnit);
    const double ac = std::fabs(c);
    ClassConstants k;
    k.total_variation = up(ac * (std::pow(x0, r) + std::pow(1.0 - x0, r)));
    k.holder = HolderConstant{r, up(ac)};
    if (r == 1.0) {
        k.lipschitz = up(ac);
        k.lp_norms[kInf] = up(ac);
    }
    for (double p : exps) {
        const double e = p * (r - 1.0) + 1.0;  // exponent after integrating |f'|^p
        if (e <= 0.0) continue;
        const double integral = std::pow(ac * r, p) * (std::pow(x0, e) + std::pow(1.0 - x0, e)) / e;
        k.lp_norms[p] = up(std::pow(integral, 1.0 / p));
    }
    const double top = ac * std::pow(std::max(x0, 1.0 - x0), r);
    k.range_bounds = c > 0 ? RangeBounds{down(0.0), up(top)} : RangeBounds{down(-top), up(0.0)};
    k.monotone_nondecreasing = x0 == 0.0 && c > 0;
    return {h.with_constants(k), {{"c", c}, {"x0", x0}, {"r", r}}};
}

Drawn draw(Family fam, Rng& rng, const std::vector<double>& exps) {
    switch (fam) {
        case Family::polynomial: return draw_polynomial(rng, exps);
        case Family::trig: return draw_trig(rng, exps);
        case Family::step: return draw_step(rng);
        case Family::piecewise_linear: return draw_piecewise_linear(rng, exps);
        case Family::holder_root: return draw_holder_root(rng, exps);
        case Family::witness: break;
    }
    throw PreconditionError("the witness family is not generated");
}

}  // namespace

std::string to_string(Family family) {
    switch (family) {
        case Family::polynomial: return "polynomial";
        case Family::trig: return "trig";
        case Family::step: return "step";
        case Family::piecewise_linear: return "piecewise-linear";
        case Family::holder_root: return "holder-root";
        case Family::witness: return "witness";
    }
    return "?";
}

Family family_from_string(const std::string& name) {
    for (Family f : {Family::polynomial, Family::trig, Family::step, Family::piecewise_linear, Family::holder_root,
                     Family::witness})
        if (to_string(f) == name) return f;
    throw PreconditionError("unknown family '" + name + "'");
}

std::set<Family> all_families() {
    return {Family::polynomial, Family::trig, Family::step, Family::piecewise_linear, Family::holder_root};
}

std::string CorpusEntry::family() const {
    if (same) return to_string(f_family);
    return to_string(f_family) + "/" + to_string(g_family);
}

std::vector<CorpusEntry> generate_corpus(std::uint64_t seed, std::size_t size, const std::set<Family>& families) {
    if (size < 1) throw PreconditionError("corpus size must be at least 1");
    if (families.empty()) throw PreconditionError("empty family set");
    if (families.contains(Family::witness)) throw PreconditionError("the witness family is not generated");
    const std::vector<Family> fams(families.begin(), families.end());
    std::vector<CorpusEntry> out;
    out.reserve(size);
    static constexpr double kExps[] = {1.5, 2.0, 3.0};
    for (std::size_t i = 0; i < size; ++i) {
        const std::uint64_t s = splitmix(seed ^ splitmix(i + 1));
        Rng rng(s);
        const double p = rng.pick(kExps);
        const double alpha = rng.pick(kExps);
        const auto exps = exponents(p, alpha);
        const Family ff = fams[static_cast<std::size_t>(rng.uniform() * fams.size())];
        Drawn df = draw(ff, rng, exps);
        const bool same = rng.chance(0.1);
        Family gf = ff;
        std::optional<Drawn> dg;
        if (!same) {
            gf = fams[static_cast<std::size_t>(rng.uniform() * fams.size())];
            dg = draw(gf, rng, exps);
        }
        CorpusEntry e(df.h, same ? df.h : dg->h);
        e.index = i;
        e.f_family = ff;
        e.g_family = gf;
        e.same = same;
        e.seed = s;
        e.p = p;
        e.alpha = alpha;
        for (const auto& [k, v] : df.params) e.params["f." + k] = v;
        if (dg)
            for (const auto& [k, v] : dg->params) e.params["g." + k] = v;
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<CorpusEntry> witness_entries(std::size_t first_index) {
    const std::vector<double> exps = exponents(2.0, 2.0);
    std::vector<CorpusEntry> out;
    auto add = [&](const FunctionSpec& h) {
        CorpusEntry e(h, h);
        e.index = first_index + out.size();
        e.f_family = e.g_family = Family::witness;
        e.same = true;
        out.push_back(std::move(e));
    };
    FunctionSpec x = parse_function("x", kUnit);
    add(x.with_constants(smooth_constants(x, exps)));
    FunctionSpec s = parse_function("sign(x - 0.5)", kUnit);
    ClassConstants cs;
    cs.total_variation = up(2.0);
    cs.range_bounds = RangeBounds{down(-1.0), up(1.0)};
    cs.monotone_nondecreasing = true;
    add(s.with_constants(cs));
    FunctionSpec c = parse_function("cos(3.141592653589793*x)", kUnit);
    add(c.with_constants(smooth_constants(c, exps)));
    return out;
}

// --- checks ---------------------------------------------------------------------

bool passes(double lhs, double lhs_err, double rhs) { return lhs <= rhs + lhs_err + 1e-9; }

std::optional<double> tightness(double lhs, double lhs_err, double rhs) {
    if (rhs > 10.0 * lhs_err && std::fabs(lhs) >= 10.0 * lhs_err && rhs > 0.0) return lhs / rhs;
    return std::nullopt;
}

bool is_full_interval(const std::string& id) {
    const std::string t = split_id(id).first;
    return t == "thm1" || t == "eq2.1";
}

bool is_mean_difference(const std::string& id) {
    const std::string t = split_id(id).first;
    return t == "bar4.3.1" || t == "cer4.3.2" || t == "cer4.3.3" || t == "cer4.3.4";
}

namespace {

struct Needs {
    std::vector<double> f_norms, g_norms;
    bool f_V = false, f_L = false, f_holder = false, g_holder = false;
    bool f_range = false, g_range = false;
    bool f_monotone = false, g_monotone = false;  // hypotheses, not skips
};

double case_norm(const std::string& c, const CorpusEntry& e) {
    if (c.starts_with("Linf")) return kInf;
    if (c.starts_with("Lp")) return e.p;
    return 1.0;
}

Needs needs_of(const std::string& id, const CorpusEntry& e) {
    const auto [t, c] = split_id(id);
    Needs n;
    if (t == "thm1") {
        if (c == "chebyshev") n.f_norms = n.g_norms = {kInf};
        if (c == "gruss") n.f_range = n.g_range = true;
        if (c == "lupas") n.f_norms = n.g_norms = {2.0};
        if (c == "ostrowski") {
            n.f_range = true;
            n.g_norms = {kInf};
        }
    } else if (t == "bar4.3.1") {
        n.f_norms = {kInf};
    } else if (t == "cer4.3.2") {
        n.f_norms = {c == "Lp" ? e.p : 1.0};
    } else if (t == "cer4.3.3") {
        n.f_holder = true;
    } else if (t == "cer4.3.4") {
        n.f_V = c == "bv";
        n.f_L = c == "lipschitz";
        n.f_monotone = c == "monotone";
    } else if (t == "thm4.5.1") {
        n.f_V = true;
        n.g_norms = {case_norm(c, e)};
    } else if (t == "thm4.5.3") {
        n.f_V = n.g_holder = true;
    } else if (t == "thm4.5.5") {
        n.f_V = n.g_monotone = true;
    } else if (t == "thm4.5.7") {
        n.f_L = true;
        n.g_norms = {case_norm(c, e)};
    } else if (t == "thm4.5.9") {
        n.f_L = n.g_holder = true;
    } else if (t == "thm4.5.12") {
        n.f_norms = {e.alpha};
        n.g_norms = {case_norm(c, e)};
    }
    return n;
}

bool declared(const Needs& n, const ClassConstants& cf, const ClassConstants& cg) {
    for (double p : n.f_norms)
        if (!cf.deriv_norm(p)) return false;
    for (double p : n.g_norms)
        if (!cg.deriv_norm(p)) return false;
    if (n.f_V && !cf.total_variation) return false;
    if (n.f_L && !cf.lipschitz) return false;
    if (n.f_holder && !cf.holder) return false;
    if (n.g_holder && !cg.holder) return false;
    if (n.f_range && !cf.range_bounds) return false;
    if (n.g_range && !cg.range_bounds) return false;
    return true;
}

struct Lhs {
    double value = 0.0;
    double err = 0.0;
    std::string error;  // non-empty: quadrature failed
};

Lhs compute_lhs(const CorpusEntry& e, const std::string& id, const IntervalConfig& cfg, double tol) {
    Lhs out;
    try {
        if (is_full_interval(id)) {
            const QuadResult r = chebyshev_functional(e.f, e.g, cfg.a, cfg.b, tol);
            out.value = std::fabs(r.value);
            out.err = r.err_est;
        } else if (is_mean_difference(id)) {
            const QuadResult r = mean_difference(e.f, cfg.a, cfg.b, cfg.u, cfg.v, tol);
            out.value = std::fabs(r.value);
            out.err = r.err_est;
        } else {
            const TwoFunctionalDiff d = functional_difference(e.f, e.g, cfg, tol);
            out.value = d.diff_abs;
            out.err = d.err_total;
        }
    } catch (const Error& ex) {
        out.error = ex.what();
    }
    return out;
}

// Which cached left side an id uses.
int lhs_kind(const std::string& id) {
    if (is_full_interval(id)) return 0;
    if (is_mean_difference(id)) return 1;
    return 2;
}

std::optional<VerificationRecord> check_with(const CorpusEntry& e, const std::string& id, const IntervalConfig& cfg_in,
                                             double tol, double scale_rhs, const Lhs* cached) {
    const Needs n = needs_of(id, e);
    const ClassConstants& cf = e.f.constants();
    const ClassConstants& cg = e.g.constants();
    if (!declared(n, cf, cg)) return std::nullopt;

    VerificationRecord rec;
    std::tie(rec.theorem, rec.case_) = split_id(id);
    rec.entry = e.index;
    rec.family = e.family();
    rec.seed = e.seed;
    IntervalConfig cfg = cfg_in;
    if (is_full_interval(id)) {
        cfg.u = cfg.a;
        cfg.v = cfg.b;
    }
    rec.cfg = cfg;
    if (n.f_monotone && !cf.monotone_nondecreasing) rec.hypothesis_ok = false;
    if (n.g_monotone && !cg.monotone_nondecreasing) rec.hypothesis_ok = false;

    const Lhs lhs = cached ? *cached : compute_lhs(e, id, cfg, tol);
    if (!lhs.error.empty()) {
        rec.status = "lhs-failed";
        rec.note = lhs.error;
        return rec;
    }
    rec.lhs = lhs.value;
    rec.lhs_err = lhs.err;

    try {
        const BoundParams params = is_mean_difference(id) ? params_from(e.f, e.f, cfg, e.p, e.alpha)
                                                          : params_from(e.f, e.g, cfg, e.p, e.alpha);
        const BoundResult r = evaluate_bound(id, params, cfg, &e.f, &e.g, tol);
        rec.rhs = r.rhs * scale_rhs;
        rec.params = r.inputs;
        if (auto it = r.inputs.find("rhs_err"); it != r.inputs.end()) rec.lhs_err += it->second;
        rec.hypothesis_ok = rec.hypothesis_ok && r.preconditions_ok;
        rec.note = r.note;
    } catch (const Error& ex) {
        rec.status = "rhs-failed";
        rec.note = ex.what();
        return rec;
    }
    rec.params["p_exp"] = e.p;
    rec.params["alpha"] = e.alpha;
    rec.pass = passes(rec.lhs, rec.lhs_err, rec.rhs);
    rec.tightness = tightness(rec.lhs, rec.lhs_err, rec.rhs);
    return rec;
}

}  // namespace

std::optional<VerificationRecord> check_theorem(const CorpusEntry& entry, const std::string& id,
                                                const IntervalConfig& cfg, double tol, double scale_rhs) {
    split_id(id);  // unknown ids throw
    return check_with(entry, id, cfg, tol, scale_rhs, nullptr);
}

std::vector<IntervalConfig> sample_configs(std::uint64_t seed, std::size_t count, double a, double b,
                                           IntervalConfig::Mode mode) {
    Rng rng(splitmix(seed ^ 0x636667ULL));
    const double min_width = 1e-3 * (b - a);
    std::vector<IntervalConfig> out;
    out.reserve(count);
    while (out.size() < count) {
        double u = rng.uniform(a, b), v = rng.uniform(a, b);
        if (u > v) std::swap(u, v);
        if (v - u < min_width) continue;
        out.push_back({a, u, v, b, mode});
    }
    return out;
}

std::vector<VerificationRecord> sweep(const std::vector<CorpusEntry>& corpus, const std::vector<std::string>& ids,
                                      const SweepOptions& options) {
    for (const auto& id : ids) split_id(id);
    std::vector<std::vector<VerificationRecord>> per_entry(corpus.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < corpus.size(); i = next++) {
            const CorpusEntry& e = corpus[i];
            const Interval dom = e.f.domain();
            const auto cfgs = sample_configs(splitmix(options.seed ^ splitmix(e.index + 0x1000)), options.configs,
                                             dom.lo, dom.hi, options.mode);
            // left sides shared by every id of the same kind
            std::vector<std::array<std::optional<Lhs>, 3>> cache(cfgs.size());
            std::optional<Lhs> full;
            auto& out = per_entry[i];
            for (const std::string& id : ids) {
                const int kind = lhs_kind(id);
                const std::size_t n = kind == 0 ? 1 : cfgs.size();
                for (std::size_t k = 0; k < n; ++k) {
                    IntervalConfig cfg = kind == 0 ? IntervalConfig{dom.lo, dom.lo, dom.hi, dom.hi} : cfgs[k];
                    if (kind == 1) cfg.mode = IntervalConfig::Mode::overlap;
                    std::optional<Lhs>& slot = kind == 0 ? full : cache[k][kind];
                    if (!declared(needs_of(id, e), e.f.constants(), e.g.constants())) break;
                    if (!slot) slot = compute_lhs(e, id, cfg, options.tol);
                    auto rec = check_with(e, id, cfg, options.tol, options.scale_rhs, &*slot);
                    if (!rec) break;
                    rec->cfg_index = k;
                    out.push_back(std::move(*rec));
                }
            }
        }
    };
    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, corpus.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    std::vector<VerificationRecord> all;
    for (auto& v : per_entry)
        for (auto& r : v) all.push_back(std::move(r));
    return all;
}

// --- limits ---------------------------------------------------------------------

std::string to_string(LimitMode mode) {
    switch (mode) {
        case LimitMode::v_to_u: return "v_to_u";
        case LimitMode::merge_to_full: return "merge_to_full";
        case LimitMode::collapse_to_a: return "collapse_to_a";
    }
    return "?";
}

LimitReport limit_consistency(const CorpusEntry& e, const std::string& id, LimitMode mode,
                              const std::vector<double>& eps, std::optional<double> u_opt, double tol) {
    if (eps.empty()) throw PreconditionError("empty eps schedule");
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!(eps[i] > 0.0)) throw PreconditionError("eps schedule must be positive");
        if (i > 0 && !(eps[i] < eps[i - 1])) throw PreconditionError("eps schedule must be strictly decreasing");
    }
    const double a = e.f.domain().lo, b = e.f.domain().hi;
    LimitReport rep;
    rep.theorem = id;
    rep.mode = mode;

    if (mode == LimitMode::v_to_u) {
        const double mid = 0.5 * (a + b);
        const double u = u_opt.value_or(mid);
        rep.target_id = id + (u == mid ? "/midpoint" : "/collapsed");
        const IntervalConfig at{a, u, u, b};
        const double target =
            evaluate_bound(rep.target_id, params_from(e.f, e.g, at, e.p, e.alpha), at, &e.f, &e.g, tol).rhs;
        for (double ep : eps) {
            const IntervalConfig cfg{a, u, std::min(b, u + ep), b};
            const double value =
                evaluate_bound(id, params_from(e.f, e.g, cfg, e.p, e.alpha), cfg, &e.f, &e.g, tol).rhs;
            rep.points.push_back({ep, value, target, std::fabs(value - target)});
        }
    } else {
        const bool eq22 = id == "thm4/eq2.2";
        double target;
        if (eq22) {
            rep.target_id = "eq2.1";
            target = pre_gruss_bound(e.f, e.g, a, b, tol).level1;
        } else {
            rep.target_id = "|T_a^b|";
            target = std::fabs(chebyshev_functional(e.f, e.g, a, b, tol).value);
        }
        for (double ep : eps) {
            const IntervalConfig cfg =
                mode == LimitMode::merge_to_full ? IntervalConfig{a, a, b - ep, b} : IntervalConfig{a, a, a + ep, b};
            const double value =
                eq22 ? generalized_pre_gruss(e.f, e.g, cfg, tol).level1 : functional_difference(e.f, e.g, cfg, tol).diff_abs;
            rep.points.push_back({ep, value, target, std::fabs(value - target)});
        }
    }
    rep.decreasing = true;
    for (std::size_t i = 0; i < rep.points.size(); ++i) {
        rep.fitted_c = std::max(rep.fitted_c, rep.points[i].diff / rep.points[i].eps);
        if (i == 0) continue;
        const double prev = rep.points[i - 1].diff, cur = rep.points[i].diff;
        const double noise = 1e-12 * std::max(1.0, std::fabs(rep.points[i].target));
        if (cur > prev + noise || (prev > noise && !(cur < prev))) rep.decreasing = false;
    }
    return rep;
}

std::vector<TightnessSummary> tightness_report(const std::vector<VerificationRecord>& records) {
    std::vector<TightnessSummary> out;
    std::map<std::string, std::size_t> where;
    for (const auto& r : records) {
        const std::string id = r.id();
        auto [it, fresh] = where.try_emplace(id, out.size());
        if (fresh) {
            out.emplace_back();
            out.back().id = id;
        }
        TightnessSummary& s = out[it->second];
        ++s.records;
        if (r.status != "ok") {
            ++s.failed;
            continue;
        }
        if (!r.tightness) ++s.indeterminate;
        if (!r.hypothesis_ok) continue;
        ++s.certified;
        if (r.pass)
            ++s.passed;
        else
            ++s.violations;
        if (r.tightness && (!s.max_tightness || *r.tightness > *s.max_tightness)) {
            s.max_tightness = r.tightness;
            s.argmax_entry = r.entry;
            s.argmax_cfg = r.cfg;
        }
    }
    for (auto& s : out) s.pass_rate = s.certified ? static_cast<double>(s.passed) / s.certified : 1.0;
    return out;
}

}  // namespace chebdiff
