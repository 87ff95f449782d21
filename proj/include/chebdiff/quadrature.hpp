#pragma once

#include <functional>
#include <span>

#include "chebdiff/function.hpp"

namespace chebdiff {

inline constexpr double kDefaultTol = 1e-10;
inline constexpr long kDefaultBudget = 1'000'000;

struct QuadResult {
    double value = 0.0;
    double err_est = 0.0;  // absolute
    long evals = 0;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature with a global error queue.
/// The initial panels are delimited by `breaks`; the integrand is never
/// evaluated at a panel end. Throws QuadratureError when the summed error
/// estimate is still above `tol` after `budget` evaluations. A budget of 0
/// means default_budget().
QuadResult integrate(const std::function<double(double)>& fn, double lo, double hi,
                     std::span<const double> breaks, double tol = kDefaultTol, long budget = 0);

/// Integral of `f` over [lo, hi], split first at the breakpoints of `f`.
QuadResult integrate(const FunctionSpec& f, double lo, double hi, double tol = kDefaultTol,
                     long budget = 0);

/// Budget used by the functional layer when none is given; 10^6 unless
/// overridden (the CLI reads CHEB_BUDGET).
long default_budget() noexcept;
void set_default_budget(long evals);

/// Union of the breakpoints of two functions restricted to (lo, hi).
std::vector<double> merged_breaks(const FunctionSpec& f, const FunctionSpec& g, double lo, double hi);

}  // namespace chebdiff
