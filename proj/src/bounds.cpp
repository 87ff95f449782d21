#include "chebdiff/bounds.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

#include "chebdiff/analyze.hpp"
#include "chebdiff/error.hpp"
#include "chebdiff/functional.hpp"

namespace chebdiff {

namespace {

// Geometry seen by the formulas (nested mode swaps a and u).
struct Geo {
    double a, u, v, b;
    double A() const { return v - a; }
    double B() const { return b - u; }
    double len() const { return b - a; }
    double mid() const { return 0.5 * (a + b); }
};

// Collapsed and midpoint forms only read u (or nothing), so u = v is fine.
Geo geometry(const IntervalConfig& cfg, Form form = Form::general) {
    if (form == Form::general) {
        cfg.validate();
    } else if (!(cfg.a <= cfg.u && cfg.u <= cfg.b && cfg.a < cfg.b)) {
        throw PreconditionError("collapsed forms need a <= u <= b with a < b");
    }
    const IntervalConfig view = cfg.formula_view();
    return {view.a, view.u, view.v, view.b};
}

// [(x + y)/2 + |x/2 - y/2|], kept in the average-plus-half-difference
// shape. Equals max(x, y).
double max_bracket(double x, double y) {
    const double br = (x + y) / 2.0 + std::fabs(x / 2.0 - y / 2.0);
    assert(std::fabs(br - std::max(x, y)) <= 1e-12 * std::max({1.0, std::fabs(x), std::fabs(y)}));
    return br;
}

void require_nonneg(const char* name, double value) {
    if (!(value >= 0.0) || std::isnan(value))
        throw PreconditionError(std::string(name) + " must be nonnegative (got " + std::to_string(value) + ")");
}

void require_holder_order(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw PreconditionError("p outside (0,1] (got " + std::to_string(p) + ")");
}

double qfactor(const ExponentPair& e) { return std::pow(e.q + 1.0, 1.0 / e.q); }

ExponentPair need_pair(const std::optional<ExponentPair>& e) {
    if (!e) throw MissingConstantError("Lp case needs conjugate exponents (p, q)");
    e->validate();
    return *e;
}

std::string with_form(std::string id, Form form) {
    if (form != Form::general) id += "/" + to_string(form);
    return id;
}

BoundResult make(std::string id) {
    BoundResult r;
    r.theorem = std::move(id);
    return r;
}

}  // namespace

void BoundResult::check(const std::string& name, bool ok) {
    checks.push_back(name + (ok ? ": ok" : ": failed"));
    if (!ok) preconditions_ok = false;
}

ExponentPair ExponentPair::conjugate_of(double p) {
    if (!(p > 1.0)) throw PreconditionError("exponent must exceed 1 (got " + std::to_string(p) + ")");
    if (std::isinf(p)) return {p, 1.0};
    return {p, p / (p - 1.0)};
}

void ExponentPair::validate() const {
    if (!(p > 1.0) || !(q > 1.0))
        throw PreconditionError("conjugate exponents must both exceed 1 (got p=" + std::to_string(p) +
                                ", q=" + std::to_string(q) + ")");
    if (std::fabs(1.0 / p + 1.0 / q - 1.0) > 1e-12)
        throw PreconditionError("exponents are not conjugate: 1/p + 1/q = " + std::to_string(1.0 / p + 1.0 / q));
}

std::string to_string(Form form) {
    switch (form) {
        case Form::general: return "general";
        case Form::collapsed: return "collapsed";
        case Form::midpoint: return "midpoint";
    }
    return "?";
}

std::string to_string(NormCase c) {
    switch (c) {
        case NormCase::Linf: return "Linf";
        case NormCase::Lp: return "Lp";
        case NormCase::L1: return "L1";
    }
    return "?";
}

std::string to_string(MeanDiffCase c) {
    switch (c) {
        case MeanDiffCase::Linf: return "Linf";
        case MeanDiffCase::Linf_coarse: return "coarse";
        case MeanDiffCase::Lp: return "Lp";
        case MeanDiffCase::L1: return "L1";
        case MeanDiffCase::holder: return "holder";
        case MeanDiffCase::bv: return "bv";
        case MeanDiffCase::lipschitz: return "lipschitz";
        case MeanDiffCase::monotone: return "monotone";
    }
    return "?";
}

// --- classical ---------------------------------------------------------------

BoundResult chebyshev_bound(double a, double b, double finf, double ginf) {
    require_nonneg("|f'|_inf", finf);
    require_nonneg("|g'|_inf", ginf);
    auto r = make("thm1/chebyshev");
    const double l = b - a;
    r.rhs = l * l / 12.0 * finf * ginf;
    r.inputs = {{"finf", finf}, {"ginf", ginf}};
    return r;
}

BoundResult gruss_bound(double m1, double M1, double m2, double M2) {
    auto r = make("thm1/gruss");
    if (M1 < m1 || M2 < m2) throw PreconditionError("range bounds need m <= M");
    r.rhs = (M1 - m1) * (M2 - m2) / 4.0;
    r.inputs = {{"m1", m1}, {"M1", M1}, {"m2", m2}, {"M2", M2}};
    return r;
}

BoundResult lupas_bound(double a, double b, double f2, double g2) {
    require_nonneg("|f'|_2", f2);
    require_nonneg("|g'|_2", g2);
    auto r = make("thm1/lupas");
    r.rhs = (b - a) / (std::numbers::pi * std::numbers::pi) * f2 * g2;
    r.inputs = {{"f2", f2}, {"g2", g2}};
    return r;
}

BoundResult ostrowski_bound(double a, double b, double m, double M, double ginf) {
    require_nonneg("|g'|_inf", ginf);
    if (M < m) throw PreconditionError("range bounds need m <= M");
    auto r = make("thm1/ostrowski");
    r.rhs = (b - a) / 8.0 * (M - m) * ginf;
    r.inputs = {{"m", m}, {"M", M}, {"ginf", ginf}};
    return r;
}

std::vector<BoundResult> classical_bounds(const FunctionSpec& f, const FunctionSpec& g, double a, double b) {
    std::vector<BoundResult> out;
    const auto& cf = f.constants();
    const auto& cg = g.constants();
    const auto finf = cf.deriv_norm(kInf), ginf = cg.deriv_norm(kInf);
    const auto f2 = cf.deriv_norm(2.0), g2 = cg.deriv_norm(2.0);
    if (finf && ginf) {
        out.push_back(chebyshev_bound(a, b, *finf, *ginf));
        out.back().check("f, g absolutely continuous", f.is_absolutely_continuous() && g.is_absolutely_continuous());
    }
    if (cf.range_bounds && cg.range_bounds)
        out.push_back(gruss_bound(cf.range_bounds->m, cf.range_bounds->M, cg.range_bounds->m, cg.range_bounds->M));
    if (f2 && g2) {
        out.push_back(lupas_bound(a, b, *f2, *g2));
        out.back().check("f, g absolutely continuous", f.is_absolutely_continuous() && g.is_absolutely_continuous());
    }
    if (cf.range_bounds && ginf) {
        out.push_back(ostrowski_bound(a, b, cf.range_bounds->m, cf.range_bounds->M, *ginf));
        out.back().check("g absolutely continuous", g.is_absolutely_continuous());
    }
    if (out.empty()) throw MissingConstantError("no classical bound has its constants declared");
    return out;
}

// --- pre-Gruss -------------------------------------------------------------------

namespace {

struct SelfT {
    double value;
    double err;
};

SelfT self_functional(const FunctionSpec& f, double lo, double hi, double tol) {
    const QuadResult r = chebyshev_functional(f, f, lo, hi, tol);
    if (r.value < -(r.err_est + 1e-12))
        throw QuadratureError("self-functional is negative beyond quadrature noise", r.value, r.err_est);
    return {std::max(0.0, r.value), r.err_est};
}

// sqrt(x) sqrt(y) and an error bound from |sqrt(x + e) - sqrt(x)| <= sqrt(e).
void add_product(PreGruss& out, const SelfT& x, const SelfT& y) {
    out.level1 += std::sqrt(x.value) * std::sqrt(y.value);
    out.err1 += std::sqrt(x.err * y.value) + std::sqrt(y.err * x.value) + std::sqrt(x.err * y.err);
    out.level2 += 0.5 * (x.value + y.value);
    out.err2 += 0.5 * (x.err + y.err);
}

}  // namespace

PreGruss pre_gruss_bound(const FunctionSpec& f, const FunctionSpec& g, double a, double b, double tol) {
    PreGruss out;
    const SelfT tf = self_functional(f, a, b, tol / 2.0);
    const SelfT tg = self_functional(g, a, b, tol / 2.0);
    add_product(out, tf, tg);
    return out;
}

PreGruss generalized_pre_gruss(const FunctionSpec& f, const FunctionSpec& g, const IntervalConfig& cfg,
                               double tol) {
    cfg.validate();
    double l1 = cfg.a, r1 = cfg.v, l2 = cfg.u, r2 = cfg.b;
    if (cfg.mode == IntervalConfig::Mode::nested) {
        l1 = cfg.u;
        r1 = cfg.v;
        l2 = cfg.a;
        r2 = cfg.b;
    }
    PreGruss out;
    add_product(out, self_functional(f, l1, r1, tol / 4.0), self_functional(g, l1, r1, tol / 4.0));
    add_product(out, self_functional(f, l2, r2, tol / 4.0), self_functional(g, l2, r2, tol / 4.0));
    return out;
}

// --- mean differences -----------------------------------------------------------

double monotone_split_point(double a, double b, double c, double d) {
    const double D = (b - a) - (d - c);
    if (D == 0.0) throw PreconditionError("degenerate denominator: d - c = b - a");
    return (c * b - a * d) / D;
}

BoundResult mean_diff_bound(double a, double b, double c, double d, MeanDiffCase which, const MeanDiffInputs& in) {
    if (!(a <= c && c < d && d <= b))
        throw PreconditionError("mean difference needs a <= c < d <= b");
    const double l = b - a;
    const double D = l - (d - c);
    const double m = (a + b) / 2.0 - (c + d) / 2.0;
    auto need_D = [&] {
        if (D == 0.0) throw PreconditionError("degenerate denominator: d - c = b - a");
    };
    BoundResult r;
    switch (which) {
        case MeanDiffCase::Linf:
        case MeanDiffCase::Linf_coarse: {
            require_nonneg("|f'|_inf", in.finf);
            r.theorem = which == MeanDiffCase::Linf ? "bar4.3.1" : "bar4.3.1/coarse";
            r.inputs = {{"finf", in.finf}};
            if (which == MeanDiffCase::Linf_coarse) {
                r.rhs = D / 2.0 * in.finf;
                break;
            }
            need_D();
            r.rhs = (0.25 + (m / D) * (m / D)) * D * in.finf;
            break;
        }
        case MeanDiffCase::Lp: {
            const ExponentPair e = need_pair(in.exps);
            require_nonneg("|f'|_p", in.fp);
            r.theorem = "cer4.3.2/Lp";
            const double nu = (c - a) / l, rho = (d - c) / l, lam = (b - d) / l;
            if (rho >= 1.0) need_D();
            const double t1 = std::pow(1.0 + std::pow(rho / (1.0 - rho), e.q), 1.0 / e.q);
            const double t2 = std::pow(std::pow(nu, e.q + 1.0) + std::pow(lam, e.q + 1.0), 1.0 / e.q);
            r.rhs = l / qfactor(e) * t1 * t2 * in.fp;
            r.inputs = {{"fp", in.fp}, {"p", e.p}, {"q", e.q}};
            break;
        }
        case MeanDiffCase::L1: {
            require_nonneg("|f'|_1", in.f1);
            r.theorem = "cer4.3.2/L1";
            const double nu = (c - a) / l, rho = (d - c) / l, lam = (b - d) / l;
            r.rhs = 0.5 * (1.0 - rho + std::fabs(nu - lam)) * in.f1;
            r.inputs = {{"f1", in.f1}};
            break;
        }
        case MeanDiffCase::holder: {
            require_holder_order(in.order);
            require_nonneg("H", in.H);
            r.theorem = "cer4.3.3";
            r.inputs = {{"H", in.H}, {"p", in.order}};
            need_D();
            const double k = in.order + 1.0;
            r.rhs = in.H * (std::pow(c - a, k) + std::pow(b - d, k)) / (k * D);
            break;
        }
        case MeanDiffCase::bv: {
            require_nonneg("V", in.V);
            r.theorem = "cer4.3.4/bv";
            r.rhs = (D / 2.0 + std::fabs((c + d) / 2.0 - (a + b) / 2.0)) * in.V / l;
            r.inputs = {{"V", in.V}};
            break;
        }
        case MeanDiffCase::lipschitz: {
            require_nonneg("L", in.L);
            r.theorem = "cer4.3.4/lipschitz";
            need_D();
            r.rhs = in.L * ((c - a) * (c - a) + (b - d) * (b - d)) / (2.0 * D);
            r.inputs = {{"L", in.L}};
            break;
        }
        case MeanDiffCase::monotone: {
            r.theorem = "cer4.3.4/monotone";
            need_D();
            r.rhs = (b - d) / l * in.fb - (c - a) / l * in.fa + (c + d - a - b) / l * in.fs0;
            r.inputs = {{"fa", in.fa}, {"fb", in.fb}, {"fs0", in.fs0}};
            r.check("f(a) <= f(s0) <= f(b)", in.fa <= in.fs0 && in.fs0 <= in.fb);
            break;
        }
    }
    return r;
}

// --- differences of two functionals -------------------------------------------

BoundResult bound_bv_abscont(double V, const IntervalConfig& cfg, NormCase which, double gnorm,
                             std::optional<ExponentPair> exps, Form form) {
    require_nonneg("V", V);
    require_nonneg("norm of g'", gnorm);
    const Geo g = geometry(cfg, form);
    auto r = make(with_form("thm4.5.1/" + to_string(which), form));
    r.inputs = {{"V", V}};
    const double l = g.len();
    // collapsed: v = u
    const double pos = form == Form::collapsed ? g.u : g.v;
    switch (which) {
        case NormCase::Linf: {
            r.inputs["ginf"] = gnorm;
            if (form == Form::midpoint) {
                r.rhs = V * l / 16.0 * gnorm;
            } else if (form == Form::collapsed) {
                r.rhs = V / 8.0 * (l / 2.0 + std::fabs(g.u - g.mid())) * gnorm;
            } else {
                r.rhs = V / 8.0 * max_bracket(g.A(), g.B()) * gnorm;
            }
            break;
        }
        case NormCase::Lp: {
            const ExponentPair e = need_pair(exps);
            r.inputs["gp"] = gnorm;
            r.inputs["p"] = e.p;
            r.inputs["q"] = e.q;
            if (form == Form::midpoint)
                r.rhs = V * l / (4.0 * qfactor(e)) * gnorm;
            else
                r.rhs = V / (2.0 * qfactor(e)) * (l / 2.0 + std::fabs(pos - g.mid())) * gnorm;
            break;
        }
        case NormCase::L1: {
            r.inputs["g1"] = gnorm;
            r.rhs = V / 2.0 * gnorm;
            break;
        }
    }
    return r;
}

std::pair<BoundResult, BoundResult> bound_bv_holder(double V, double H, double p, const IntervalConfig& cfg,
                                                    Form form) {
    require_holder_order(p);
    require_nonneg("H", H);
    require_nonneg("V", V);
    const Geo g = geometry(cfg, form);
    auto f1 = make(with_form("thm4.5.3/form1", form));
    auto f2 = make(with_form("thm4.5.3/form2", form));
    f1.inputs = f2.inputs = {{"V", V}, {"H", H}, {"p", p}};
    const double l = g.len();
    if (form == Form::midpoint) {
        f1.rhs = f2.rhs = H * std::pow(l, p) / (std::pow(2.0, 2.0 * p) * (p + 1.0)) * V;
        return {f1, f2};
    }
    double A = g.A(), B = g.B();
    if (form == Form::collapsed) {
        A = g.u - g.a;
        B = g.b - g.u;
    }
    f1.rhs = H * (std::pow(A, p) + std::pow(B, p)) / (std::pow(2.0, p + 1.0) * (p + 1.0)) * V;
    f2.rhs = H / (std::pow(2.0, p) * (p + 1.0)) * std::pow(max_bracket(A, B), p) * V;
    return {f1, f2};
}

BoundResult bound_bv_monotone(double V, const GValues& gv, const IntervalConfig& cfg, Form form) {
    require_nonneg("V", V);
    geometry(cfg, form);
    auto r = make(with_form("thm4.5.5", form));
    r.inputs = {{"V", V}, {"ga", gv.ga}, {"gb", gv.gb}};
    const double slack = 1e-12 * std::max({1.0, std::fabs(gv.ga), std::fabs(gv.gb)});
    if (form == Form::general) {
        r.inputs["gu"] = gv.gu;
        r.inputs["gv"] = gv.gv;
        // in nested mode ga, gu hold g(u), g(a)
        const bool nested = cfg.mode == IntervalConfig::Mode::nested;
        const double lo = nested ? gv.gu : gv.ga, mid = nested ? gv.ga : gv.gu;
        r.check("g(a) <= g(u) <= g(v) <= g(b)",
                lo <= mid + slack && mid <= gv.gv + slack && gv.gv <= gv.gb + slack);
        r.rhs = V / 4.0 *
                (((gv.gv - gv.ga) + (gv.gb - gv.gu)) / 2.0 +
                 std::fabs((gv.gv + gv.gu) / 2.0 - (gv.ga + gv.gb) / 2.0));
    } else {
        // the special-case forms carry no 1/4
        const double gx = form == Form::collapsed ? gv.gu : gv.gm;
        r.inputs[form == Form::collapsed ? "gu" : "gm"] = gx;
        r.check("g(a) <= g(u) <= g(b)", gv.ga <= gx + slack && gx <= gv.gb + slack);
        r.rhs = ((gv.gb - gv.ga) / 2.0 + std::fabs(gx - (gv.ga + gv.gb) / 2.0)) * V;
    }
    r.rhs = std::max(0.0, r.rhs);
    return r;
}

BoundResult bound_lip_abscont(double L, const IntervalConfig& cfg, NormCase which, double gnorm,
                              std::optional<ExponentPair> exps, Form form) {
    if (which == NormCase::L1) throw PreconditionError("thm4.5.7 has no L1 case");
    require_nonneg("L", L);
    require_nonneg("norm of g'", gnorm);
    const Geo g = geometry(cfg, form);
    auto r = make(with_form("thm4.5.7/" + to_string(which), form));
    r.inputs = {{"L", L}};
    double factor = 1.0;  // norm-dependent part
    if (which == NormCase::Linf) {
        r.inputs["ginf"] = gnorm;
    } else {
        const ExponentPair e = need_pair(exps);
        r.inputs["gp"] = gnorm;
        r.inputs["p"] = e.p;
        r.inputs["q"] = e.q;
        factor = beta(2.0, 1.0 + 1.0 / e.q) / qfactor(e);
    }
    const double l = g.len();
    if (form == Form::midpoint) {
        r.rhs = which == NormCase::Linf ? L * l * l / 24.0 * gnorm : L * l * l / 2.0 * factor * gnorm;
        return r;
    }
    if (form == Form::collapsed) {
        const double s = (g.u - g.a) * (g.u - g.a) + (g.b - g.u) * (g.b - g.u);
        r.rhs = which == NormCase::Linf ? L / 6.0 * gnorm * s / 2.0 : L * s * factor * gnorm;
        return r;
    }
    const double D = l - (g.v - g.u);
    if (D == 0.0) {
        r.note = "degenerate";
        r.rhs = 0.0;
        return r;
    }
    const double m = g.mid() - (g.u + g.v) / 2.0;
    const double bracket = 0.25 + (m / D) * (m / D);
    r.rhs = which == NormCase::Linf ? L * D / 6.0 * bracket * gnorm : L * 2.0 * D * bracket * factor * gnorm;
    return r;
}

BoundResult bound_lip_holder(double L, double H, double p, const IntervalConfig& cfg, Form form) {
    require_holder_order(p);
    require_nonneg("L", L);
    require_nonneg("H", H);
    const Geo g = geometry(cfg, form);
    auto r = make(with_form("thm4.5.9", form));
    r.inputs = {{"L", L}, {"H", H}, {"p", p}};
    const double l = g.len();
    if (form == Form::midpoint) {
        if (p != 1.0) throw PreconditionError("the midpoint form of thm4.5.9 is stated for p = 1");
        r.rhs = L * H * l * l / 24.0;
        return r;
    }
    const double k = L * H / ((p + 1.0) * (p + 1.0) * (p + 2.0));
    double bracket;
    if (form == Form::collapsed)
        bracket = l / 2.0 + std::fabs(g.u - g.mid());
    else
        bracket = (l + (g.v - g.u)) / 2.0 + std::fabs((g.u + g.v) / 2.0 - g.mid());
    r.rhs = k * std::pow(bracket, p + 1.0);
    return r;
}

BoundResult bound_abscont_pair(double falpha, const ExponentPair& ab, std::optional<ExponentPair> pq,
                               const IntervalConfig& cfg, NormCase which, double gnorm, Form form) {
    ab.validate();
    require_nonneg("|f'|_alpha", falpha);
    require_nonneg("norm of g'", gnorm);
    const Geo g = geometry(cfg, form);
    auto r = make(with_form("thm4.5.12/" + to_string(which), form));
    const double bt = ab.q;
    r.inputs = {{"falpha", falpha}, {"alpha", ab.p}, {"beta", bt}};
    const double l = g.len();
    double A = g.A(), B = g.B();
    if (form == Form::collapsed) {
        A = g.u - g.a;
        B = g.b - g.u;
    }
    switch (which) {
        case NormCase::Linf: {
            r.inputs["ginf"] = gnorm;
            const double bf = std::pow(beta(bt + 1.0, bt + 1.0), 1.0 / bt);
            if (form == Form::midpoint)
                r.rhs = std::pow(l / 2.0, 1.0 / bt) * bf * falpha * gnorm;
            else
                r.rhs = (std::pow(A, 1.0 / bt) + std::pow(B, 1.0 / bt)) / 2.0 * bf * falpha * gnorm;
            break;
        }
        case NormCase::Lp: {
            const ExponentPair e = need_pair(pq);
            r.inputs["gp"] = gnorm;
            r.inputs["p"] = e.p;
            r.inputs["q"] = e.q;
            const double bf = std::pow(beta(bt + 1.0, bt / e.q + 1.0), 1.0 / bt);
            const double k = 1.0 + 1.0 / bt;
            if (form == Form::midpoint)
                r.rhs = std::pow(l, k) / (std::pow(2.0, k) * qfactor(e)) * bf * gnorm * falpha;
            else
                r.rhs = (std::pow(A, k) + std::pow(B, k)) / qfactor(e) * bf * gnorm * falpha;
            break;
        }
        case NormCase::L1: {
            r.inputs["g1"] = gnorm;
            const double bf = std::pow(beta(bt + 1.0, bt + 1.0), 1.0 / bt);
            const double k = 1.0 + 1.0 / bt;
            if (form == Form::midpoint)
                r.rhs = std::pow(l / 2.0, k) * bf * gnorm * falpha;
            else
                r.rhs = (std::pow(A, k) + std::pow(B, k)) * bf * gnorm * falpha;
            break;
        }
    }
    return r;
}

// --- dispatcher -------------------------------------------------------------------

namespace {

const std::vector<std::string>& base_theorems() {
    static const std::vector<std::string> names = {
        "thm4/eq2.2", "thm1",     "eq2.1",    "bar4.3.1", "cer4.3.2", "cer4.3.3", "cer4.3.4", "thm4.5.12",
        "thm4.5.1",   "thm4.5.3", "thm4.5.5", "thm4.5.7", "thm4.5.9"};
    return names;
}

double need(const BoundParams& p, const std::string& key) {
    auto it = p.find(key);
    if (it == p.end()) throw MissingConstantError("missing constant '" + key + "'");
    return it->second;
}

std::optional<double> maybe(const BoundParams& p, const std::string& key) {
    auto it = p.find(key);
    if (it == p.end()) return std::nullopt;
    return it->second;
}

ExponentPair lebesgue_pair(const BoundParams& p) {
    const auto pp = maybe(p, "p");
    const auto qq = maybe(p, "q");
    if (!pp && !qq) throw MissingConstantError("missing constant 'p' (or 'q')");
    ExponentPair e;
    if (pp && qq && *pp > 1.0) {
        e = {*pp, *qq};
    } else if (qq) {
        // p <= 1 alongside q is a Holder order, not the Lebesgue exponent
        e = ExponentPair::conjugate_of(*qq);
        std::swap(e.p, e.q);
    } else {
        e = ExponentPair::conjugate_of(*pp);
    }
    e.validate();
    return e;
}

ExponentPair alpha_pair(const BoundParams& p) {
    const auto a = maybe(p, "alpha");
    const auto b = maybe(p, "beta");
    if (!a && !b) throw MissingConstantError("missing constant 'alpha' (or 'beta')");
    ExponentPair e;
    if (a && b) {
        e = {*a, *b};
    } else if (a) {
        e = ExponentPair::conjugate_of(*a);
    } else {
        e = ExponentPair::conjugate_of(*b);
        std::swap(e.p, e.q);
    }
    e.validate();
    return e;
}

NormCase norm_case(const std::string& c) {
    if (c == "Linf") return NormCase::Linf;
    if (c == "Lp") return NormCase::Lp;
    if (c == "L1") return NormCase::L1;
    throw PreconditionError("unknown case '" + c + "'");
}

double g_norm(const BoundParams& p, NormCase c) {
    switch (c) {
        case NormCase::Linf: return need(p, "ginf");
        case NormCase::Lp: return need(p, "gp");
        case NormCase::L1: return need(p, "g1");
    }
    return 0.0;
}

// Strips a trailing "/collapsed" or "/midpoint".
std::pair<std::string, Form> split_form(const std::string& c) {
    for (Form f : {Form::collapsed, Form::midpoint}) {
        const std::string suffix = to_string(f);
        if (c == suffix) return {"", f};
        if (c.size() > suffix.size() + 1 && c.ends_with("/" + suffix))
            return {c.substr(0, c.size() - suffix.size() - 1), f};
    }
    return {c, Form::general};
}

void require_general(Form form, const std::string& id) {
    if (form != Form::general) throw PreconditionError("'" + id + "' has no corollary form");
}

}  // namespace

std::vector<std::string> sweep_ids() {
    return {"thm1/chebyshev", "thm1/gruss",         "thm1/lupas",         "thm1/ostrowski",     "eq2.1",
            "thm4/eq2.2",     "bar4.3.1",           "cer4.3.2/Lp",        "cer4.3.2/L1",        "cer4.3.3",
            "cer4.3.4/bv",    "cer4.3.4/lipschitz", "cer4.3.4/monotone",  "thm4.5.1/Linf",      "thm4.5.1/Lp",
            "thm4.5.1/L1",    "thm4.5.3/form1",     "thm4.5.3/form2",     "thm4.5.5",           "thm4.5.7/Linf",
            "thm4.5.7/Lp",    "thm4.5.9",           "thm4.5.12/Linf",     "thm4.5.12/Lp",       "thm4.5.12/L1"};
}

std::vector<std::string> bound_ids() {
    std::vector<std::string> ids = sweep_ids();
    for (const char* extra : {"eq2.1/level2", "thm4/eq2.2/level2", "bar4.3.1/coarse"}) ids.emplace_back(extra);
    for (const char* base : {"thm4.5.1/Linf", "thm4.5.1/Lp", "thm4.5.1/L1", "thm4.5.3/form1", "thm4.5.3/form2",
                             "thm4.5.5", "thm4.5.7/Linf", "thm4.5.7/Lp", "thm4.5.9", "thm4.5.12/Linf",
                             "thm4.5.12/Lp", "thm4.5.12/L1"}) {
        ids.push_back(std::string(base) + "/collapsed");
        ids.push_back(std::string(base) + "/midpoint");
    }
    return ids;
}

std::pair<std::string, std::string> split_id(const std::string& id) {
    for (const std::string& base : base_theorems()) {
        if (id == base) return {base, ""};
        if (id.size() > base.size() && id.starts_with(base) && id[base.size()] == '/')
            return {base, id.substr(base.size() + 1)};
    }
    throw PreconditionError("unknown theorem id '" + id + "'");
}

BoundResult evaluate_bound(const std::string& id, const BoundParams& params, const IntervalConfig& cfg,
                           const FunctionSpec* f, const FunctionSpec* g, double tol) {
    const auto [theorem, full_case] = split_id(id);
    auto [c, form] = split_form(full_case);
    // u = v means the v = u corollary
    const bool has_corollary = theorem.starts_with("thm4.5.");
    if (form == Form::general && has_corollary && cfg.u == cfg.v) form = Form::collapsed;
    BoundResult r;

    if (theorem == "thm1") {
        require_general(form, id);
        const double a = cfg.a, b = cfg.b;
        if (c == "chebyshev")
            r = chebyshev_bound(a, b, need(params, "finf"), need(params, "ginf"));
        else if (c == "gruss")
            r = gruss_bound(need(params, "m1"), need(params, "M1"), need(params, "m2"), need(params, "M2"));
        else if (c == "lupas")
            r = lupas_bound(a, b, need(params, "f2"), need(params, "g2"));
        else if (c == "ostrowski")
            r = ostrowski_bound(a, b, need(params, "m"), need(params, "M"), need(params, "ginf"));
        else
            throw PreconditionError("unknown case '" + id + "'");
    } else if (theorem == "eq2.1" || theorem == "thm4/eq2.2") {
        require_general(form, id);
        if (!(c.empty() || c == "level1" || c == "level2")) throw PreconditionError("unknown case '" + id + "'");
        if (!f || !g) throw MissingConstantError("'" + id + "' needs the functions f and g");
        const PreGruss pg = theorem == "eq2.1" ? pre_gruss_bound(*f, *g, cfg.a, cfg.b, tol)
                                               : generalized_pre_gruss(*f, *g, cfg, tol);
        const bool second = c == "level2";
        r.theorem = id;
        r.rhs = second ? pg.level2 : pg.level1;
        r.inputs = {{"level1", pg.level1}, {"level2", pg.level2}, {"rhs_err", second ? pg.err2 : pg.err1}};
    } else if (theorem == "bar4.3.1" || theorem == "cer4.3.2" || theorem == "cer4.3.3" || theorem == "cer4.3.4") {
        require_general(form, id);
        MeanDiffCase which;
        MeanDiffInputs in;
        if (theorem == "bar4.3.1") {
            if (!(c.empty() || c == "coarse")) throw PreconditionError("unknown case '" + id + "'");
            which = c.empty() ? MeanDiffCase::Linf : MeanDiffCase::Linf_coarse;
            in.finf = need(params, "finf");
        } else if (theorem == "cer4.3.2") {
            if (c == "Lp") {
                which = MeanDiffCase::Lp;
                in.exps = lebesgue_pair(params);
                in.fp = need(params, "fp");
            } else if (c == "L1") {
                which = MeanDiffCase::L1;
                in.f1 = need(params, "f1");
            } else {
                throw PreconditionError("unknown case '" + id + "'");
            }
        } else if (theorem == "cer4.3.3") {
            if (!c.empty()) throw PreconditionError("unknown case '" + id + "'");
            which = MeanDiffCase::holder;
            in.H = need(params, "H");
            in.order = need(params, "p");
        } else {
            if (c == "bv") {
                which = MeanDiffCase::bv;
                in.V = need(params, "V");
            } else if (c == "lipschitz") {
                which = MeanDiffCase::lipschitz;
                in.L = need(params, "L");
            } else if (c == "monotone") {
                which = MeanDiffCase::monotone;
                in.fa = need(params, "fa");
                in.fb = need(params, "fb");
                in.fs0 = need(params, "fs0");
            } else {
                throw PreconditionError("unknown case '" + id + "'");
            }
        }
        r = mean_diff_bound(cfg.a, cfg.b, cfg.u, cfg.v, which, in);
    } else if (theorem == "thm4.5.1") {
        const NormCase nc = norm_case(c);
        std::optional<ExponentPair> e;
        if (nc == NormCase::Lp) e = lebesgue_pair(params);
        r = bound_bv_abscont(need(params, "V"), cfg, nc, g_norm(params, nc), e, form);
    } else if (theorem == "thm4.5.3") {
        if (c != "form1" && c != "form2") throw PreconditionError("unknown case '" + id + "'");
        auto [f1, f2] = bound_bv_holder(need(params, "V"), need(params, "H"), need(params, "p"), cfg, form);
        r = c == "form1" ? f1 : f2;
    } else if (theorem == "thm4.5.5") {
        if (!c.empty()) throw PreconditionError("unknown case '" + id + "'");
        GValues gv;
        gv.ga = need(params, "ga");
        gv.gb = need(params, "gb");
        if (form == Form::general) {
            gv.gu = need(params, "gu");
            gv.gv = need(params, "gv");
        } else if (form == Form::collapsed) {
            gv.gu = need(params, "gu");
        } else {
            gv.gm = need(params, "gm");
        }
        r = bound_bv_monotone(need(params, "V"), gv, cfg, form);
    } else if (theorem == "thm4.5.7") {
        const NormCase nc = norm_case(c);
        if (nc == NormCase::L1) throw PreconditionError("unknown case '" + id + "'");
        std::optional<ExponentPair> e;
        if (nc == NormCase::Lp) e = lebesgue_pair(params);
        r = bound_lip_abscont(need(params, "L"), cfg, nc, g_norm(params, nc), e, form);
    } else if (theorem == "thm4.5.9") {
        if (!c.empty()) throw PreconditionError("unknown case '" + id + "'");
        r = bound_lip_holder(need(params, "L"), need(params, "H"), need(params, "p"), cfg, form);
    } else if (theorem == "thm4.5.12") {
        const NormCase nc = norm_case(c);
        std::optional<ExponentPair> e;
        if (nc == NormCase::Lp) e = lebesgue_pair(params);
        r = bound_abscont_pair(need(params, "falpha"), alpha_pair(params), e, cfg, nc, g_norm(params, nc), form);
    }
    return r;
}

BoundParams params_from(const FunctionSpec& f, const FunctionSpec& g, const IntervalConfig& cfg, double p,
                        double alpha) {
    BoundParams out;
    const auto& cf = f.constants();
    const auto& cg = g.constants();
    auto put = [&](const char* key, std::optional<double> v) {
        if (v) out[key] = *v;
    };
    const ExponentPair pq = ExponentPair::conjugate_of(p);
    const ExponentPair ab = ExponentPair::conjugate_of(alpha);
    out["q"] = pq.q;
    out["alpha"] = ab.p;
    out["beta"] = ab.q;
    put("V", cf.total_variation);
    put("L", cf.lipschitz);
    put("finf", cf.deriv_norm(kInf));
    put("f1", cf.deriv_norm(1.0));
    put("f2", cf.deriv_norm(2.0));
    put("fp", cf.deriv_norm(pq.p));
    put("falpha", cf.deriv_norm(ab.p));
    put("ginf", cg.deriv_norm(kInf));
    put("g1", cg.deriv_norm(1.0));
    put("g2", cg.deriv_norm(2.0));
    put("gp", cg.deriv_norm(pq.p));
    if (cg.holder) {
        out["H"] = cg.holder->constant;
        out["p"] = cg.holder->order;  // Holder order where a theorem asks for one
    }
    // the Lebesgue exponent is carried by q; "p" is rebuilt from it when absent
    if (!cg.holder) out["p"] = pq.p;
    if (cf.range_bounds) {
        out["m1"] = out["m"] = cf.range_bounds->m;
        out["M1"] = out["M"] = cf.range_bounds->M;
    }
    if (cg.range_bounds) {
        out["m2"] = cg.range_bounds->m;
        out["M2"] = cg.range_bounds->M;
    }
    out["ga"] = g(cfg.formula_view().a);
    out["gu"] = g(cfg.formula_view().u);
    out["gv"] = g(cfg.v);
    out["gb"] = g(cfg.b);
    out["gm"] = g(0.5 * (cfg.a + cfg.b));
    out["fa"] = f(cfg.a);
    out["fb"] = f(cfg.b);
    const double D = (cfg.b - cfg.a) - (cfg.v - cfg.u);
    if (D != 0.0) out["fs0"] = f(monotone_split_point(cfg.a, cfg.b, cfg.u, cfg.v));
    return out;
}

}  // namespace chebdiff
