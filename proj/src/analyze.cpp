#include "chebdiff/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chebdiff/error.hpp"

namespace chebdiff {

namespace {

constexpr int kFirstLevel = 8;
constexpr int kLastLevel = 16;
constexpr double kSettle = 1e-8;

std::vector<double> grid(const FunctionSpec& f, double lo, double hi, int level, bool with_breaks = true) {
    const std::size_t n = std::size_t{1} << level;
    std::vector<double> xs;
    xs.reserve(n + 1 + f.breakpoints().size());
    for (std::size_t i = 0; i <= n; ++i)
        xs.push_back(i == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n));
    if (with_breaks) {
        for (double t : f.breakpoints())
            if (t > lo && t < hi) xs.push_back(t);
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    }
    return xs;
}

bool settled(double previous, double current) {
    return std::fabs(current - previous) <= kSettle * std::max(std::fabs(current), 1e-300);
}

// Golden-section search for the maximum of |f| on [l, r].
double refine_max(const FunctionSpec& f, double l, double r) {
    constexpr double kInvPhi = 0.6180339887498949;
    double c = r - kInvPhi * (r - l);
    double d = l + kInvPhi * (r - l);
    auto h = [&](double x) {
        const double y = std::fabs(f(x));
        return std::isfinite(y) ? y : 0.0;
    };
    double hc = h(c);
    double hd = h(d);
    for (int it = 0; it < 80 && r - l > 1e-15 * std::max(1.0, std::fabs(l)); ++it) {
        if (hc > hd) {
            r = d;
            d = c;
            hd = hc;
            c = r - kInvPhi * (r - l);
            hc = h(c);
        } else {
            l = c;
            c = d;
            hc = hd;
            d = l + kInvPhi * (r - l);
            hd = h(d);
        }
    }
    return std::max(hc, hd);
}

double sup_estimate(const FunctionSpec& f, double lo, double hi) {
    double best = 0.0;
    double previous = -1.0;
    for (int level = kFirstLevel; level <= kLastLevel; ++level) {
        const auto xs = grid(f, lo, hi, level);
        std::size_t arg = 0;
        double level_best = -1.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double y = std::fabs(f(xs[i]));
            if (std::isfinite(y) && y > level_best) {
                level_best = y;
                arg = i;
            }
        }
        best = std::max(best, level_best);
        const double l = xs[arg > 0 ? arg - 1 : 0];
        const double r = xs[std::min(arg + 1, xs.size() - 1)];
        if (r > l) best = std::max(best, refine_max(f, l, r));
        if (previous >= 0.0 && settled(previous, best)) break;
        previous = best;
    }
    return best;
}

double one_sided(const FunctionSpec& f, double t, int side) {
    const bool jump = std::any_of(f.jumps().begin(), f.jumps().end(), [&](const Jump& j) { return j.at == t; });
    if (!jump) return f(t);
    const double d = 1e-12 * std::max(1.0, std::fabs(t));
    double y = f(t + side * d);
    if (f.derivative_expr()) {
        const double s = f.derivative_at(t + side * d);
        if (std::isfinite(s)) y -= side * d * s;
    }
    return y;
}

// Points where `e` changes monotonicity on (l, r); empty when e is zero there.
std::vector<double> critical_points(const Expr& e, double l, double r, const std::string& what) {
    if (e.is_constant()) return {};
    auto roots = find_roots(e, l, r);
    if (roots) {
        std::vector<double> inside;
        for (double t : *roots)
            if (t > l && t < r) inside.push_back(t);
        return inside;
    }
    const CompiledExpr c(e);
    for (int i = 1; i < 64; ++i)
        if (c(l + (r - l) * i / 64.0) != 0.0)
            throw PreconditionError("too many critical points to isolate for " + what);
    return {};
}

std::vector<double> pieces(const FunctionSpec& f, double lo, double hi) {
    std::vector<double> edges{lo};
    for (double t : f.breakpoints())
        if (t > lo && t < hi) edges.push_back(t);
    edges.push_back(hi);
    return edges;
}

void require_derivative(const FunctionSpec& f) {
    if (!f.derivative_expr())
        throw PreconditionError("'" + f.source() + "' has no usable derivative (breakpoints not isolated)");
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::string to_string(NormValue::Kind kind) {
    return kind == NormValue::Kind::exact_declared ? "exact-declared" : "numeric-estimate";
}

NormValue lp_norm(const FunctionSpec& f, double p, double lo, double hi, double tol) {
    if (!(p >= 1.0)) throw PreconditionError("norm exponent must be at least 1");
    if (!(hi > lo)) throw PreconditionError("norm needs lo < hi");
    if (!f.domain().covers(lo, hi)) throw DomainError("norm interval is not inside the domain");
    if (p == kInf) return {p, sup_estimate(f, lo, hi), NormValue::Kind::numeric_estimate};
    const QuadResult r = integrate(
        [&](double t) { return std::pow(std::fabs(f(t)), p); }, lo, hi, f.breakpoints(), tol);
    return {p, std::pow(std::max(r.value, 0.0), 1.0 / p), NormValue::Kind::numeric_estimate};
}

NormValue total_variation(const FunctionSpec& f, double lo, double hi) {
    if (!(hi > lo)) throw PreconditionError("variation needs lo < hi");
    const auto& declared = f.constants().total_variation;
    if (declared && lo == f.domain().lo && hi == f.domain().hi)
        return {1.0, *declared, NormValue::Kind::exact_declared};
    double best = 0.0;
    double previous = -1.0;
    for (int level = kFirstLevel; level <= kLastLevel; ++level) {
        const auto xs = grid(f, lo, hi, level);
        double sum = 0.0;
        double last = f(xs[0]);
        for (std::size_t i = 1; i < xs.size(); ++i) {
            const double y = f(xs[i]);
            if (!std::isfinite(y)) continue;
            if (std::isfinite(last)) sum += std::fabs(y - last);
            last = y;
        }
        best = std::max(best, sum);
        if (previous >= 0.0 && settled(previous, best)) break;
        previous = best;
    }
    return {1.0, best, NormValue::Kind::numeric_estimate};
}

NormValue lipschitz_estimate(const FunctionSpec& f, double lo, double hi) {
    if (!(hi > lo)) throw PreconditionError("Lipschitz estimate needs lo < hi");
    double best = 0.0;
    double previous = -1.0;
    for (int level = kFirstLevel; level <= kLastLevel; ++level) {
        const auto xs = grid(f, lo, hi, level);
        for (std::size_t i = 1; i < xs.size(); ++i) {
            const double q = std::fabs(f(xs[i]) - f(xs[i - 1])) / (xs[i] - xs[i - 1]);
            if (std::isfinite(q)) best = std::max(best, q);
        }
        if (previous >= 0.0 && settled(previous, best)) break;
        previous = best;
    }
    return {1.0, best, NormValue::Kind::numeric_estimate};
}

NormValue holder_estimate(const FunctionSpec& f, double order, double lo, double hi) {
    if (!(order > 0.0 && order <= 1.0)) throw PreconditionError("Hölder order must lie in (0, 1]");
    if (!(hi > lo)) throw PreconditionError("Hölder estimate needs lo < hi");
    auto quotient = [&](double x, double fx, double y, double fy) {
        const double q = std::fabs(fx - fy) / std::pow(std::fabs(x - y), order);
        return std::isfinite(q) ? q : 0.0;
    };
    double best = 0.0;
    {
        // Every pair on the coarse grid, plus breakpoints against it.
        const auto xs = grid(f, lo, hi, kFirstLevel);
        std::vector<double> ys(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = f(xs[i]);
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = i + 1; j < xs.size(); ++j) best = std::max(best, quotient(xs[i], ys[i], xs[j], ys[j]));
    }
    double previous = -1.0;
    for (int level = kFirstLevel; level <= kLastLevel; ++level) {
        const auto xs = grid(f, lo, hi, level, false);
        std::vector<double> ys(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = f(xs[i]);
        for (std::size_t stride = 1; stride < xs.size(); stride *= 2)
            for (std::size_t i = 0; i + stride < xs.size(); ++i)
                best = std::max(best, quotient(xs[i], ys[i], xs[i + stride], ys[i + stride]));
        for (double t : f.breakpoints()) {
            if (t < lo || t > hi) continue;
            const double ft = f(t);
            for (std::size_t stride = 1; stride < xs.size(); stride *= 2) {
                const auto it = std::lower_bound(xs.begin(), xs.end(), t);
                const std::size_t k = static_cast<std::size_t>(it - xs.begin());
                if (k + stride - 1 < xs.size() && xs[k + stride - 1] != t)
                    best = std::max(best, quotient(t, ft, xs[k + stride - 1], ys[k + stride - 1]));
                if (k >= stride && xs[k - stride] != t)
                    best = std::max(best, quotient(t, ft, xs[k - stride], ys[k - stride]));
            }
        }
        if (previous >= 0.0 && settled(previous, best)) break;
        previous = best;
    }
    return {order, best, NormValue::Kind::numeric_estimate};
}

double beta(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
        throw DomainError("Beta function needs positive finite arguments (got " + fmt(x) + ", " + fmt(y) + ")");
    if (x + y < 170.0) return std::tgamma(x) * std::tgamma(y) / std::tgamma(x + y);
    return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

double exact_total_variation(const FunctionSpec& f, double lo, double hi) {
    require_derivative(f);
    const auto edges = pieces(f, lo, hi);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double l = edges[k];
        const double r = edges[k + 1];
        std::vector<double> chain{one_sided(f, l, +1)};
        for (double c : critical_points(*f.derivative_expr(), l, r, f.source())) chain.push_back(f(c));
        chain.push_back(one_sided(f, r, -1));
        for (std::size_t i = 1; i < chain.size(); ++i) total += std::fabs(chain[i] - chain[i - 1]);
    }
    // Values at the piece edges against their one-sided limits.
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const double t = edges[k];
        const double ft = f(t);
        if (k > 0) total += std::fabs(ft - one_sided(f, t, -1));
        if (k + 1 < edges.size()) total += std::fabs(one_sided(f, t, +1) - ft);
    }
    return total;
}

RangeBounds exact_range(const FunctionSpec& f, double lo, double hi) {
    require_derivative(f);
    const auto edges = pieces(f, lo, hi);
    RangeBounds rb{kInf, -kInf};
    auto take = [&](double y) {
        rb.m = std::min(rb.m, y);
        rb.M = std::max(rb.M, y);
    };
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double l = edges[k];
        const double r = edges[k + 1];
        take(f(l));
        take(one_sided(f, l, +1));
        take(one_sided(f, r, -1));
        for (double c : critical_points(*f.derivative_expr(), l, r, f.source())) take(f(c));
    }
    take(f(hi));
    return rb;
}

double exact_sup_abs_derivative(const FunctionSpec& f, double lo, double hi) {
    require_derivative(f);
    const Expr& d1 = *f.derivative_expr();
    const CompiledExpr df(d1);
    const Expr d2 = d1.derivative();
    const auto edges = pieces(f, lo, hi);
    double best = 0.0;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double l = edges[k];
        const double r = edges[k + 1];
        for (const auto& [t, side] : {std::pair{l, 1}, std::pair{r, -1}}) {
            const bool kink = std::binary_search(f.breakpoints().begin(), f.breakpoints().end(), t);
            const double s = std::max(1.0, std::fabs(t));
            const double d = side * 1e-12 * s;
            const double near = std::fabs(df(t + d));
            const double far = std::fabs(df(t + 100.0 * d));
            if (!std::isfinite(near) || near > 1.01 * far + 1e-6) return kInf;
            // one-sided limit by linear extrapolation when f' may jump at t
            best = std::max(best, kink ? std::fabs(2.0 * df(t + d) - df(t + 2.0 * d)) : std::fabs(df(t)));
        }
        for (double c : critical_points(d2, l, r, "the derivative of " + f.source())) best = std::max(best, std::fabs(df(c)));
    }
    return best;
}

std::vector<std::string> check_declared_constants(const FunctionSpec& f, double slack) {
    std::vector<std::string> out;
    const ClassConstants& c = f.constants();
    const double lo = f.domain().lo;
    const double hi = f.domain().hi;
    auto over = [&](double sampled, double declared) { return sampled > declared + slack * std::max(1.0, declared); };

    if (c.total_variation) {
        FunctionSpec bare = f.with_constants({});
        const double est = total_variation(bare, lo, hi).value;
        if (over(est, *c.total_variation))
            out.push_back("variation: sampled " + fmt(est) + " > declared " + fmt(*c.total_variation));
    }
    if (c.lipschitz) {
        const double est = lipschitz_estimate(f, lo, hi).value;
        if (over(est, *c.lipschitz))
            out.push_back("lipschitz: sampled " + fmt(est) + " > declared " + fmt(*c.lipschitz));
    }
    if (c.holder) {
        const double est = holder_estimate(f, c.holder->order, lo, hi).value;
        if (over(est, c.holder->constant))
            out.push_back("holder(" + fmt(c.holder->order) + "): sampled " + fmt(est) + " > declared " +
                          fmt(c.holder->constant));
        if (c.holder->order == 1.0 && c.lipschitz && c.holder->constant + slack < *c.lipschitz &&
            lipschitz_estimate(f, lo, hi).value > c.holder->constant + slack)
            out.push_back("holder(1) constant is below the sampled Lipschitz slope");
    }
    const auto xs = grid(f, lo, hi, 12);
    if (c.range_bounds) {
        for (double t : xs) {
            const double y = f(t);
            if (y < c.range_bounds->m - slack || y > c.range_bounds->M + slack) {
                out.push_back("range: f(" + fmt(t) + ") = " + fmt(y) + " outside [" + fmt(c.range_bounds->m) + ", " +
                              fmt(c.range_bounds->M) + "]");
                break;
            }
        }
    }
    if (c.monotone_nondecreasing) {
        for (std::size_t i = 1; i < xs.size(); ++i) {
            if (f(xs[i]) < f(xs[i - 1]) - slack) {
                out.push_back("monotone: decreases between " + fmt(xs[i - 1]) + " and " + fmt(xs[i]));
                break;
            }
        }
    }
    if (!c.lp_norms.empty() && f.derivative_expr()) {
        const FunctionSpec d = differentiate(f);
        for (const auto& [p, declared] : c.lp_norms) {
            double est = 0.0;
            try {
                est = lp_norm(d, p, lo, hi, 1e-9).value;
            } catch (const QuadratureError&) {
                continue;  // singular derivative: nothing sampled reliably
            }
            const double quad_slack = p == kInf ? 0.0 : 1e-6 * std::max(1.0, declared);
            if (over(est, declared + quad_slack))
                out.push_back("derivative norm p=" + fmt(p) + ": sampled " + fmt(est) + " > declared " + fmt(declared));
        }
    }
    return out;
}

}  // namespace chebdiff
