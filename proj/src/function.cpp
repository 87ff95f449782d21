#include "chebdiff/function.hpp"

#include <algorithm>
#include <cmath>

#include "chebdiff/error.hpp"

namespace chebdiff {

namespace {

constexpr std::size_t kRootCells = 1024;
constexpr std::size_t kFiniteSamples = 1024;

bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

// Arguments whose zeros are kinks, jumps or derivative singularities.
void collect_kink_arguments(const Expr& e, std::vector<Expr>& out, std::vector<double>& guards) {
    switch (e.op()) {
        case Op::Abs:
        case Op::Sign:
        case Op::Sqrt: out.push_back(e.args()[0]); break;
        case Op::Pow: {
            const Expr& exponent = e.args()[1];
            if (!exponent.is_number() || !is_integer(exponent.value()) || exponent.value() < 1.0)
                out.push_back(e.args()[0]);
            break;
        }
        case Op::Piecewise:
            for (const Condition& c : e.conditions()) guards.push_back(c.threshold);
            break;
        default: break;
    }
    for (const Expr& a : e.args()) collect_kink_arguments(a, out, guards);
}

void sort_unique(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::optional<std::vector<double>> find_roots(const Expr& e, double lo, double hi,
                                              std::size_t max_roots) {
    std::vector<double> roots;
    if (e.is_constant()) {
        if (e(lo) == 0.0) return std::nullopt;  // zero everywhere
        return roots;
    }
    const CompiledExpr f(e);
    const double h = (hi - lo) / static_cast<double>(kRootCells);
    std::vector<double> xs(kRootCells + 1);
    std::vector<double> fs(kRootCells + 1);
    for (std::size_t i = 0; i <= kRootCells; ++i) {
        xs[i] = i == kRootCells ? hi : lo + h * static_cast<double>(i);
        fs[i] = f(xs[i]);
    }
    for (std::size_t i = 0; i <= kRootCells; ++i) {
        if (fs[i] == 0.0) roots.push_back(xs[i]);
        if (i == kRootCells) break;
        const double fl = fs[i];
        const double fr = fs[i + 1];
        if (!std::isfinite(fl) || !std::isfinite(fr) || fl == 0.0 || fr == 0.0) continue;
        if ((fl < 0.0) == (fr < 0.0)) continue;
        double l = xs[i];
        double r = xs[i + 1];
        double fl_cur = fl;
        double found = std::nan("");
        for (int it = 0; it < 200; ++it) {
            const double m = 0.5 * (l + r);
            if (m <= l || m >= r) break;
            const double fm = f(m);
            if (fm == 0.0) {
                found = m;
                break;
            }
            if ((fm < 0.0) == (fl_cur < 0.0)) {
                l = m;
                fl_cur = fm;
            } else {
                r = m;
            }
        }
        if (std::isnan(found)) found = std::fabs(f(l)) <= std::fabs(f(r)) ? l : r;
        roots.push_back(found);
        if (roots.size() > max_roots) return std::nullopt;
    }
    sort_unique(roots);
    if (roots.size() > max_roots) return std::nullopt;
    return roots;
}

FunctionSpec::FunctionSpec(Expr expr, Interval domain, ClassConstants constants,
                           std::vector<double> extra_breakpoints)
    : expr_(std::move(expr)), compiled_(expr_), domain_(domain), constants_(std::move(constants)) {
    if (!(domain_.lo < domain_.hi) || !std::isfinite(domain_.lo) || !std::isfinite(domain_.hi))
        throw DomainError("domain must be a finite interval with lo < hi");
    source_ = expr_.str();
    detect_breakpoints(extra_breakpoints);
    check_finite(true);
    if (breakpoints_complete_) {
        deriv_ = expr_.derivative();
        deriv_compiled_.emplace(*deriv_);
    }
    detect_jumps();
}

FunctionSpec::FunctionSpec(AlmostEverywhere, Expr expr, Interval domain, std::vector<double> breakpoints)
    : expr_(std::move(expr)), compiled_(expr_), domain_(domain) {
    source_ = expr_.str();
    detect_breakpoints(breakpoints);
    check_finite(false);
    if (breakpoints_complete_) {
        deriv_ = expr_.derivative();
        deriv_compiled_.emplace(*deriv_);
    }
    detect_jumps();
}

void FunctionSpec::detect_breakpoints(const std::vector<double>& extra) {
    std::vector<Expr> kink_args;
    std::vector<double> guards;
    collect_kink_arguments(expr_, kink_args, guards);
    std::vector<double> bps;
    for (double g : guards)
        if (domain_.contains(g)) bps.push_back(g);
    for (double g : extra)
        if (domain_.contains(g)) bps.push_back(g);
    for (const Expr& arg : kink_args) {
        if (arg.is_constant()) continue;
        auto roots = find_roots(arg, domain_.lo, domain_.hi);
        if (!roots) {
            breakpoints_complete_ = false;
            continue;
        }
        bps.insert(bps.end(), roots->begin(), roots->end());
    }
    sort_unique(bps);
    breakpoints_ = std::move(bps);
}

void FunctionSpec::check_finite(bool include_breakpoints) const {
    const double h = domain_.length() / static_cast<double>(kFiniteSamples);
    auto is_break = [&](double t) {
        return std::binary_search(breakpoints_.begin(), breakpoints_.end(), t);
    };
    for (std::size_t i = 0; i <= kFiniteSamples; ++i) {
        const double t = i == kFiniteSamples ? domain_.hi : domain_.lo + h * static_cast<double>(i);
        if (!include_breakpoints && is_break(t)) continue;
        const double y = compiled_(t);
        if (!std::isfinite(y))
            throw DomainError("'" + source_ + "' is not finite at x = " + std::to_string(t));
    }
    if (!include_breakpoints) return;
    for (double t : breakpoints_) {
        if (!std::isfinite(compiled_(t)))
            throw DomainError("'" + source_ + "' is not finite at x = " + std::to_string(t));
    }
}

void FunctionSpec::detect_jumps() {
    jumps_.clear();
    double scale = 1.0;
    for (int i = 0; i <= 64; ++i) {
        const double y = compiled_(domain_.lo + domain_.length() * i / 64.0);
        if (std::isfinite(y)) scale = std::max(scale, std::fabs(y));
    }
    const double threshold = 1e-9 * scale;
    auto one_sided = [&](double t, double delta, int side) {
        // side = +1: f(t + delta) - f(t); side = -1: f(t) - f(t - delta)
        // side = 0: f(t + delta) - f(t - delta)
        if (side > 0) return compiled_(t + delta) - compiled_(t);
        if (side < 0) return compiled_(t) - compiled_(t - delta);
        return compiled_(t + delta) - compiled_(t - delta);
    };
    for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
        const double t = breakpoints_[k];
        const double s = std::max(1.0, std::fabs(t));
        double room = domain_.length();
        if (k > 0) room = std::min(room, t - breakpoints_[k - 1]);
        if (k + 1 < breakpoints_.size()) room = std::min(room, breakpoints_[k + 1] - t);
        const double d1 = std::min(1e-10 * s, 0.25 * room);
        const double d2 = d1 * 1e-2;
        int side = 0;
        if (t <= domain_.lo) side = 1;
        if (t >= domain_.hi) side = -1;
        const double j1 = one_sided(t, d1, side);
        double j2 = one_sided(t, d2, side);
        if (!std::isfinite(j2) || std::fabs(j2) <= threshold) continue;
        if (std::fabs(j1 - j2) > 1e-3 * std::fabs(j2) + threshold) continue;  // continuous, steep
        if (deriv_compiled_) {
            const double dr = side >= 0 ? (*deriv_compiled_)(t + d2) : 0.0;
            const double dl = side <= 0 ? (*deriv_compiled_)(t - d2) : 0.0;
            const double correction = d2 * (dr + dl);
            if (std::isfinite(correction) && std::fabs(correction) < 1e-6 * std::fabs(j2)) j2 -= correction;
        }
        jumps_.push_back({t, j2});
    }
}

double FunctionSpec::evaluate(double t) const {
    if (!domain_.contains(t))
        throw DomainError("x = " + std::to_string(t) + " is outside [" + std::to_string(domain_.lo) + ", " +
                          std::to_string(domain_.hi) + "]");
    return compiled_(t);
}

double FunctionSpec::derivative_at(double t) const {
    if (!deriv_compiled_) throw PreconditionError("'" + source_ + "' has no usable derivative");
    return (*deriv_compiled_)(t);
}

FunctionSpec FunctionSpec::with_constants(ClassConstants constants) const {
    FunctionSpec copy = *this;
    copy.constants_ = std::move(constants);
    return copy;
}

FunctionSpec FunctionSpec::with_source(std::string source) const {
    FunctionSpec copy = *this;
    copy.source_ = std::move(source);
    return copy;
}

FunctionSpec parse_function(std::string_view source, Interval domain, ClassConstants constants) {
    FunctionSpec f(parse_expression(source), domain, std::move(constants));
    return f.with_source(std::string(source));
}

FunctionSpec differentiate(const FunctionSpec& f) {
    if (!f.breakpoints_complete_ || !f.deriv_)
        throw PreconditionError("'" + f.source_ +
                                "' has a non-differentiable node whose breakpoints could not be isolated");
    return FunctionSpec(FunctionSpec::AlmostEverywhere{}, *f.deriv_, f.domain_, f.breakpoints_);
}

double evaluate(const FunctionSpec& f, double t) { return f.evaluate(t); }

void IntervalConfig::validate() const {
    if (!std::isfinite(a) || !std::isfinite(u) || !std::isfinite(v) || !std::isfinite(b))
        throw PreconditionError("interval configuration must be finite");
    if (!is_valid())
        throw PreconditionError("interval configuration needs a <= u < v <= b (got a=" + std::to_string(a) +
                                ", u=" + std::to_string(u) + ", v=" + std::to_string(v) +
                                ", b=" + std::to_string(b) + ")");
}

IntervalConfig IntervalConfig::formula_view() const noexcept {
    if (mode == Mode::overlap) return *this;
    IntervalConfig swapped = *this;
    swapped.a = u;
    swapped.u = a;
    return swapped;
}

std::string to_string(IntervalConfig::Mode mode) {
    return mode == IntervalConfig::Mode::overlap ? "overlap" : "nested";
}

}  // namespace chebdiff
