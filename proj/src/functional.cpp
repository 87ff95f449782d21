#include "chebdiff/functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chebdiff/error.hpp"

namespace chebdiff {

namespace {

void require_interval(double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw PreconditionError("interval ends must be finite");
    if (!(hi > lo))
        throw PreconditionError("degenerate interval [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

void require_cover(const FunctionSpec& f, double lo, double hi) {
    if (!f.domain().covers(lo, hi))
        throw DomainError("[" + std::to_string(lo) + ", " + std::to_string(hi) + "] is not inside the domain of '" +
                          f.source() + "'");
}

double sampled_sup(const FunctionSpec& f, double lo, double hi) {
    double s = 0.0;
    for (int i = 0; i <= 32; ++i) {
        const double y = f(lo + (hi - lo) * i / 32.0);
        if (std::isfinite(y)) s = std::max(s, std::fabs(y));
    }
    return s;
}

struct FunctionalParts {
    QuadResult fg;
    QuadResult f;
    QuadResult g;
};

double propagate(const FunctionalParts& p, double len) {
    return p.fg.err_est / len +
           (std::fabs(p.g.value) * p.f.err_est + std::fabs(p.f.value) * p.g.err_est + p.f.err_est * p.g.err_est) /
               (len * len);
}

bool jump_inside(const FunctionSpec& f, double lo, double hi) {
    return std::any_of(f.jumps().begin(), f.jumps().end(), [&](const Jump& j) { return j.at > lo && j.at < hi; });
}

// Kernel of the Stieltjes representation (times (hi - lo)^2).
class Kernel {
public:
    Kernel(const FunctionSpec& g, double lo, double hi, Identity which, double inner_tol)
        : g_(g), lo_(lo), hi_(hi), which_(which), tol_(inner_tol) {
        total_ = integrate(g_, lo_, hi_, tol_);
    }

    double operator()(double t) {
        if (t <= lo_ || t >= hi_) return 0.0;
        const QuadResult head = integrate(g_, lo_, t, tol_);
        evals_ += head.evals;
        if (which_ == Identity::cerone) {
            const QuadResult tail = integrate(g_, t, hi_, tol_);
            evals_ += tail.evals;
            return (t - lo_) * tail.value - (hi_ - t) * head.value;
        }
        return (t - lo_) * total_.value - (hi_ - lo_) * head.value;
    }

    // d/dt of the kernel; the same for both forms.
    double slope(double t) const { return total_.value - (hi_ - lo_) * g_(t); }

    // Bound on |kernel error| per unit of |df|.
    double pointwise_error() const { return 2.0 * (hi_ - lo_) * tol_ + (hi_ - lo_) * total_.err_est; }
    long evals() const { return evals_ + total_.evals; }

private:
    const FunctionSpec& g_;
    double lo_;
    double hi_;
    Identity which_;
    double tol_;
    QuadResult total_;
    long evals_ = 0;
};

bool derivative_blows_up(const FunctionSpec& f, double t, double reference) {
    const double h = 1e-10 * std::max(1.0, std::fabs(t));
    const double lo = f.domain().lo;
    const double hi = f.domain().hi;
    double worst = 0.0;
    if (t - h >= lo) worst = std::max(worst, std::fabs(f.derivative_at(t - h)));
    if (t + h <= hi) worst = std::max(worst, std::fabs(f.derivative_at(t + h)));
    return !std::isfinite(worst) || worst > 1e4 * (1.0 + reference);
}

}  // namespace

QuadResult chebyshev_functional(const FunctionSpec& f, const FunctionSpec& g, double lo, double hi, double tol) {
    require_interval(lo, hi);
    require_cover(f, lo, hi);
    require_cover(g, lo, hi);
    if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
    const double len = hi - lo;
    const double sf = sampled_sup(f, lo, hi);
    const double sg = sampled_sup(g, lo, hi);
    const auto breaks = merged_breaks(f, g, lo, hi);

    double scale = 1.0;
    for (int attempt = 0; attempt < 3; ++attempt) {
        const double t = tol * scale;
        FunctionalParts p;
        p.fg = integrate([&](double x) { return f(x) * g(x); }, lo, hi, breaks, len * t / 3.0);
        p.f = integrate(f, lo, hi, len * t / (3.0 * std::max(sg, 1.0)));
        p.g = integrate(g, lo, hi, len * t / (3.0 * std::max(sf, 1.0)));
        const double value = p.fg.value / len - (p.f.value / len) * (p.g.value / len);
        const double err = propagate(p, len);
        if (err <= tol || attempt == 2) {
            if (err > tol)
                throw QuadratureError("functional error estimate " + std::to_string(err) + " exceeds tolerance",
                                      value, err);
            return {value, err, p.fg.evals + p.f.evals + p.g.evals};
        }
        scale *= 0.5 * tol / err;
    }
    return {};  // unreachable
}

TwoFunctionalDiff functional_difference(const FunctionSpec& f, const FunctionSpec& g, const IntervalConfig& cfg,
                                        double tol) {
    cfg.validate();
    require_cover(f, cfg.a, cfg.b);
    require_cover(g, cfg.a, cfg.b);
    TwoFunctionalDiff d;
    if (cfg.mode == IntervalConfig::Mode::overlap) {
        d.t_left = chebyshev_functional(f, g, cfg.a, cfg.v, tol / 2.0);
        d.t_right = chebyshev_functional(f, g, cfg.u, cfg.b, tol / 2.0);
    } else {
        d.t_left = chebyshev_functional(f, g, cfg.u, cfg.v, tol / 2.0);
        d.t_right = chebyshev_functional(f, g, cfg.a, cfg.b, tol / 2.0);
    }
    d.diff_abs = std::fabs(d.t_left.value - d.t_right.value);
    d.err_total = d.t_left.err_est + d.t_right.err_est;
    return d;
}

QuadResult psi(const FunctionSpec& g, double t, double alpha, double beta, double tol) {
    require_interval(alpha, beta);
    require_cover(g, alpha, beta);
    if (!(alpha <= t && t <= beta))
        throw PreconditionError("t = " + std::to_string(t) + " is outside [" + std::to_string(alpha) + ", " +
                                std::to_string(beta) + "]");
    const double w = (t - alpha) / (beta - alpha);
    const QuadResult head = integrate(g, alpha, t, tol / 2.0);
    const QuadResult whole = integrate(g, alpha, beta, tol / 2.0);
    return {head.value - w * whole.value, head.err_est + w * whole.err_est, head.evals + whole.evals};
}

std::string to_string(Identity which) { return which == Identity::cerone ? "cerone" : "dragomir"; }

bool identity_hypothesis_ok(const FunctionSpec& f, const FunctionSpec& g, Identity which) {
    (void)f;
    if (which == Identity::cerone) return g.is_continuous();
    return true;
}

bool is_step_function(const FunctionSpec& f) {
    if (!f.derivative_expr()) return false;
    const Interval& dom = f.domain();
    for (int i = 1; i < 256; ++i) {
        const double t = dom.lo + dom.length() * i / 256.0;
        if (std::binary_search(f.breakpoints().begin(), f.breakpoints().end(), t)) continue;
        if (f.derivative_at(t) != 0.0) return false;
    }
    return true;
}

QuadResult chebyshev_via_identity(const FunctionSpec& f, const FunctionSpec& g, double lo, double hi,
                                  Identity which, double tol) {
    require_interval(lo, hi);
    require_cover(f, lo, hi);
    require_cover(g, lo, hi);
    const double len = hi - lo;
    const double len2 = len * len;

    if (f.derivative_expr() && !jump_inside(f, lo, hi) && !is_step_function(f)) {
        // Absolutely continuous f: the integrator is f'(t) dt.
        std::vector<double> breaks = merged_breaks(f, g, lo, hi);
        std::vector<double> singular;
        double mid_slope = 0.0;
        for (int i = 1; i < 16; ++i) {
            const double s = f.derivative_at(lo + len * i / 16.0);
            if (std::isfinite(s)) mid_slope = std::max(mid_slope, std::fabs(s));
        }
        for (double t : f.breakpoints())
            if (t >= lo && t <= hi && derivative_blows_up(f, t, mid_slope)) singular.push_back(t);

        // Carve a short piece next to each point where f' is unbounded; those
        // pieces are integrated by parts so quadrature never samples the blow-up.
        std::vector<std::pair<double, double>> carved;
        std::vector<double> all_edges = breaks;
        for (double t : singular) {
            double room = len;
            for (double b : breaks)
                if (b != t) room = std::min(room, std::fabs(b - t));
            if (t != lo) room = std::min(room, t - lo);
            if (t != hi) room = std::min(room, hi - t);
            const double delta = std::min(1e-6 * len, 0.25 * room);
            if (t > lo) carved.emplace_back(t - delta, t);
            if (t < hi) carved.emplace_back(t, t + delta);
            all_edges.push_back(t - delta);
            all_edges.push_back(t + delta);
        }
        std::sort(all_edges.begin(), all_edges.end());
        auto is_carved = [&](double x) {
            return std::any_of(carved.begin(), carved.end(),
                               [&](const auto& c) { return x > c.first && x < c.second; });
        };

        const QuadResult variation = integrate(
            [&](double t) { return is_carved(t) ? 0.0 : std::fabs(f.derivative_at(t)); }, lo, hi, all_edges,
            1e-6 * len, 0);
        double var_bound = variation.value + variation.err_est;
        for (const auto& [alpha, beta] : carved) var_bound += std::fabs(f(beta) - f(alpha));
        if (var_bound == 0.0) return {0.0, 0.0, variation.evals};
        const double inner_tol = tol * len / (8.0 * var_bound);
        Kernel kernel(g, lo, hi, which, inner_tol);

        const QuadResult outer = integrate(
            [&](double t) { return is_carved(t) ? 0.0 : kernel(t) * f.derivative_at(t); }, lo, hi, all_edges,
            tol * len2 / 2.0, 0);
        double value = outer.value;
        double err = outer.err_est;
        long evals = outer.evals;
        for (const auto& [alpha, beta] : carved) {
            const QuadResult piece = integrate([&](double t) { return kernel.slope(t) * f(t); }, alpha, beta,
                                               std::span<const double>{}, tol * len2 / 8.0, 0);
            value += kernel(beta) * f(beta) - kernel(alpha) * f(alpha) - piece.value;
            err += piece.err_est;
            evals += piece.evals;
        }
        err += kernel.pointwise_error() * var_bound;
        return {value / len2, err / len2, evals + kernel.evals() + variation.evals};
    }

    if (is_step_function(f)) {
        Kernel kernel(g, lo, hi, which, tol * len / 4.0);
        double value = 0.0;
        double mass = 0.0;
        for (const Jump& j : f.jumps()) {
            if (j.at <= lo || j.at >= hi) continue;
            value += kernel(j.at) * j.size;
            mass += std::fabs(j.size);
        }
        const double err = kernel.pointwise_error() * mass;
        return {value / len2, err / len2, kernel.evals()};
    }

    throw PreconditionError("'" + f.source() +
                            "' is neither absolutely continuous nor a finite-jump step function on the interval");
}

QuadResult mean_difference(const FunctionSpec& f, double a, double b, double c, double d, double tol) {
    require_interval(a, b);
    require_interval(c, d);
    if (!(a <= c && d <= b))
        throw PreconditionError("mean difference needs a <= c < d <= b (got a=" + std::to_string(a) +
                                ", b=" + std::to_string(b) + ", c=" + std::to_string(c) + ", d=" + std::to_string(d) +
                                ")");
    require_cover(f, a, b);
    const QuadResult outer = integrate(f, a, b, (b - a) * tol / 2.0);
    const QuadResult inner = integrate(f, c, d, (d - c) * tol / 2.0);
    return {outer.value / (b - a) - inner.value / (d - c), outer.err_est / (b - a) + inner.err_est / (d - c),
            outer.evals + inner.evals};
}

}  // namespace chebdiff
