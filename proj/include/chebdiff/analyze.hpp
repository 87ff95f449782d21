#pragma once

#include <string>
#include <vector>

#include "chebdiff/function.hpp"
#include "chebdiff/quadrature.hpp"

namespace chebdiff {

struct NormValue {
    enum class Kind { exact_declared, numeric_estimate };

    double exponent = 1.0;  // kInf for the sup norm
    double value = 0.0;
    Kind kind = Kind::numeric_estimate;
};

std::string to_string(NormValue::Kind kind);

/// (int |f|^p)^(1/p) over [lo, hi] by quadrature for finite p >= 1; for
/// p = kInf a sampled maximum of |f| (dense grids, breakpoints and local
/// refinement), which is a lower bound.
NormValue lp_norm(const FunctionSpec& f, double p, double lo, double hi, double tol = 1e-10);

/// Declared variation when `f` carries one for its whole domain and
/// [lo, hi] is that domain; otherwise a refining-partition sum (a lower bound).
NormValue total_variation(const FunctionSpec& f, double lo, double hi);

/// Largest sampled difference quotient over nested uniform grids.
NormValue lipschitz_estimate(const FunctionSpec& f, double lo, double hi);

/// Largest sampled |f(x) - f(y)| / |x - y|^order, order in (0, 1].
NormValue holder_estimate(const FunctionSpec& f, double order, double lo, double hi);

/// Euler Beta function. Throws DomainError unless x > 0 and y > 0.
double beta(double x, double y);

/// Values derived from critical points rather than sampling. Used to build
/// declared constants for generated functions; all throw PreconditionError
/// when the needed derivative or breakpoints are not available.
double exact_total_variation(const FunctionSpec& f, double lo, double hi);
RangeBounds exact_range(const FunctionSpec& f, double lo, double hi);
/// sup |f'| over [lo, hi]; kInf when f' is unbounded near a breakpoint.
double exact_sup_abs_derivative(const FunctionSpec& f, double lo, double hi);

/// Sampled witnesses that exceed a declared constant, one message each.
/// Empty means the declaration survived every check.
std::vector<std::string> check_declared_constants(const FunctionSpec& f, double slack = 1e-9);

}  // namespace chebdiff
