#pragma once

#include <string>

#include "chebdiff/function.hpp"
#include "chebdiff/quadrature.hpp"

namespace chebdiff {

/// T over [lo, hi]: mean(fg) - mean(f) mean(g), from three adaptive
/// integrals with a third of the tolerance each. Throws PreconditionError for
/// hi <= lo and DomainError when a domain does not cover [lo, hi].
QuadResult chebyshev_functional(const FunctionSpec& f, const FunctionSpec& g, double lo, double hi,
                                double tol = kDefaultTol);

struct TwoFunctionalDiff {
    QuadResult t_left;   // overlap: [a, v]; nested: [u, v]
    QuadResult t_right;  // overlap: [u, b]; nested: [a, b]
    double diff_abs = 0.0;
    double err_total = 0.0;
};

/// |T_a^v - T_u^b| in overlap mode, |T_u^v - T_a^b| in nested mode; each
/// functional gets half of `tol`.
TwoFunctionalDiff functional_difference(const FunctionSpec& f, const FunctionSpec& g, const IntervalConfig& cfg,
                                        double tol = kDefaultTol);

/// Psi_g(t; alpha, beta) = int_alpha^t g - (t - alpha)/(beta - alpha) int_alpha^beta g.
QuadResult psi(const FunctionSpec& g, double t, double alpha, double beta, double tol = kDefaultTol);

enum class Identity { cerone, dragomir };

std::string to_string(Identity which);

/// Right-hand side of the Stieltjes representation of T over [lo, hi].
/// `f` must be absolutely continuous (the integral becomes kernel * f') or a
/// finite-jump step function (a sum of kernel * jump). Throws
/// PreconditionError otherwise.
QuadResult chebyshev_via_identity(const FunctionSpec& f, const FunctionSpec& g, double lo, double hi,
                                  Identity which, double tol = kDefaultTol);

/// Whether the identity's own hypotheses hold: the Cerone form asks for a
/// continuous g, the Dragomir form only for an integrable one.
bool identity_hypothesis_ok(const FunctionSpec& f, const FunctionSpec& g, Identity which);

/// True when `f` is piecewise constant: derivative zero off the breakpoints.
bool is_step_function(const FunctionSpec& f);

/// mean over [a, b] minus mean over [c, d], for a <= c < d <= b.
QuadResult mean_difference(const FunctionSpec& f, double a, double b, double c, double d,
                           double tol = kDefaultTol);

/// |value| < 10 err_est: the value is dominated by quadrature noise.
inline bool near_zero(const QuadResult& r) noexcept {
    return !(r.value > 10.0 * r.err_est || r.value < -10.0 * r.err_est);
}

}  // namespace chebdiff
