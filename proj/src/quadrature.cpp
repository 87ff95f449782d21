#include "chebdiff/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "chebdiff/error.hpp"

namespace chebdiff {

namespace {

// Kronrod abscissae (descending) and weights; the odd-indexed abscissae and
// the centre are the 7-point Gauss nodes.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

std::atomic<long> g_default_budget{kDefaultBudget};

struct Panel {
    double lo;
    double hi;
    double value;
    double err;
    bool operator<(const Panel& other) const { return err < other.err; }
};

Panel gk15(const std::function<double(double)>& fn, double lo, double hi) {
    const double centr = 0.5 * (lo + hi);
    const double hlgth = 0.5 * (hi - lo);
    const double fc = fn(centr);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::fabs(resk);
    double fv1[7];
    double fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double absc = hlgth * kXgk[j];
        const double f1 = fn(centr - absc);
        const double f2 = fn(centr + absc);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
    const double result = resk * hlgth;
    resabs *= std::fabs(hlgth);
    resasc *= std::fabs(hlgth);
    double err = std::fabs((resk - resg) * hlgth);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
    if (!std::isfinite(result)) err = std::numeric_limits<double>::infinity();
    return {lo, hi, result, err};
}

}  // namespace

long default_budget() noexcept { return g_default_budget.load(std::memory_order_relaxed); }

void set_default_budget(long evals) {
    if (evals < 15) throw PreconditionError("quadrature budget must be at least 15 evaluations");
    g_default_budget.store(evals, std::memory_order_relaxed);
}

QuadResult integrate(const std::function<double(double)>& fn, double lo, double hi,
                     std::span<const double> breaks, double tol, long budget) {
    if (!(tol > 0.0)) throw PreconditionError("quadrature tolerance must be positive");
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw PreconditionError("integration limits must be finite");
    if (budget <= 0) budget = default_budget();
    if (lo == hi) return {0.0, 0.0, 0};
    double sign = 1.0;
    if (hi < lo) {
        std::swap(lo, hi);
        sign = -1.0;
    }

    std::vector<double> edges{lo};
    for (double t : breaks)
        if (t > lo && t < hi) edges.push_back(t);
    edges.push_back(hi);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<Panel> queue;
    double total = 0.0;
    double total_err = 0.0;
    long evals = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel p = gk15(fn, edges[i], edges[i + 1]);
        evals += 15;
        total += p.value;
        total_err += p.err;
        queue.push(p);
    }

    std::vector<Panel> settled;  // panels too narrow to split further
    while (total_err > tol && !queue.empty()) {
        if (evals + 30 > budget) break;
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi) ||
            worst.hi - worst.lo < 1e3 * kEps * std::max(std::fabs(worst.lo), std::fabs(worst.hi))) {
            settled.push_back(worst);
            continue;
        }
        Panel left = gk15(fn, worst.lo, mid);
        Panel right = gk15(fn, mid, worst.hi);
        evals += 30;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
    }

    // Re-sum to shed the drift of the running updates.
    double value = 0.0;
    double err = 0.0;
    for (const Panel& p : settled) {
        value += p.value;
        err += p.err;
    }
    while (!queue.empty()) {
        value += queue.top().value;
        err += queue.top().err;
        queue.pop();
    }
    if (!std::isfinite(value) || !(err <= tol)) {
        throw QuadratureError("quadrature on [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                  "] did not reach tolerance " + std::to_string(tol) + " (estimate " +
                                  std::to_string(err) + " after " + std::to_string(evals) + " evaluations)",
                              sign * value, err);
    }
    return {sign * value, err, evals};
}

QuadResult integrate(const FunctionSpec& f, double lo, double hi, double tol, long budget) {
    if (!f.domain().covers(std::min(lo, hi), std::max(lo, hi)))
        throw DomainError("integration interval is not inside the domain of '" + f.source() + "'");
    return integrate([&f](double t) { return f(t); }, lo, hi, f.breakpoints(), tol, budget);
}

std::vector<double> merged_breaks(const FunctionSpec& f, const FunctionSpec& g, double lo, double hi) {
    std::vector<double> out;
    for (const auto* s : {&f.breakpoints(), &g.breakpoints()})
        for (double t : *s)
            if (t > lo && t < hi) out.push_back(t);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace chebdiff
