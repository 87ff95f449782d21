#pragma once

// Right-hand sides of the inequalities for T and for the difference of two
// functionals, evaluated from class constants and interval geometry.
//
// Geometry conventions: A = v - a, B = b - u, l = b - a, all taken from
// IntervalConfig::formula_view() (so nested mode swaps a and u). Each
// evaluator has three forms: `general` uses (a, u, v, b); `collapsed` is the
// v = u statement at the given u; `midpoint` is the u = v = (a + b)/2
// statement. Collapsed and midpoint forms are the stated special cases, kept verbatim.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chebdiff/function.hpp"
#include "chebdiff/quadrature.hpp"

namespace chebdiff {

struct BoundResult {
    std::string theorem;  // full id, e.g. "thm4.5.1/Linf"
    double rhs = 0.0;
    std::map<std::string, double> inputs;
    bool preconditions_ok = true;
    std::vector<std::string> checks;  // "name: ok" or "name: failed"
    std::string note;                 // e.g. "degenerate"

    void check(const std::string& name, bool ok);
};

/// Conjugate exponents, 1/p + 1/q = 1 within 1e-12.
struct ExponentPair {
    double p = 2.0;
    double q = 2.0;

    static ExponentPair conjugate_of(double p);
    /// Throws PreconditionError unless p, q > 1 and conjugate.
    void validate() const;
};

enum class Form { general, collapsed, midpoint };
enum class NormCase { Linf, Lp, L1 };

std::string to_string(Form form);
std::string to_string(NormCase c);

// --- single-interval bounds -------------------------------------------------

/// Chebyshev: l^2/12 |f'|_inf |g'|_inf.
BoundResult chebyshev_bound(double a, double b, double finf, double ginf);
/// Gruss: (M1 - m1)(M2 - m2)/4.
BoundResult gruss_bound(double m1, double M1, double m2, double M2);
/// Lupas: l/pi^2 |f'|_2 |g'|_2.
BoundResult lupas_bound(double a, double b, double f2, double g2);
/// Ostrowski type: l/8 (M - m) |g'|_inf.
BoundResult ostrowski_bound(double a, double b, double m, double M, double ginf);

/// The four classical bounds for which `f` and `g` declare constants.
std::vector<BoundResult> classical_bounds(const FunctionSpec& f, const FunctionSpec& g, double a, double b);

struct PreGruss {
    double level1 = 0.0;  // products of square roots
    double level2 = 0.0;  // arithmetic means
    double err1 = 0.0;    // quadrature error carried by level1
    double err2 = 0.0;
};

/// sqrt(T(f,f)) sqrt(T(g,g)) and (T(f,f) + T(g,g))/2 over [a, b]. Throws
/// QuadratureError when a self-functional is negative beyond its error.
PreGruss pre_gruss_bound(const FunctionSpec& f, const FunctionSpec& g, double a, double b,
                         double tol = kDefaultTol);

/// Two-interval version: sums of the above over [a, v] and [u, b] (over
/// [u, v] and [a, b] in nested mode).
PreGruss generalized_pre_gruss(const FunctionSpec& f, const FunctionSpec& g, const IntervalConfig& cfg,
                               double tol = kDefaultTol);

// --- differences of integral means -----------------------------------------

enum class MeanDiffCase { Linf, Linf_coarse, Lp, L1, holder, bv, lipschitz, monotone };

std::string to_string(MeanDiffCase c);

struct MeanDiffInputs {
    double finf = 0.0;  // |f'|_inf
    double fp = 0.0;    // |f'|_p
    double f1 = 0.0;    // |f'|_1
    std::optional<ExponentPair> exps;
    double H = 0.0;
    double order = 1.0;  // Holder order r
    double V = 0.0;
    double L = 0.0;
    double fa = 0.0, fb = 0.0, fs0 = 0.0;  // monotone case
};

/// Bound on |mean_[a,b] f - mean_[c,d] f| for a <= c < d <= b.
/// Cases dividing by (b - a) - (d - c) throw PreconditionError there.
BoundResult mean_diff_bound(double a, double b, double c, double d, MeanDiffCase which, const MeanDiffInputs& in);

/// s0 = (cb - ad)/((b - a) - (d - c)), the point used by the monotone case.
double monotone_split_point(double a, double b, double c, double d);

// --- differences of two functionals ----------------------------------------

/// f of bounded variation V, g absolutely continuous with |g'| in the case norm.
BoundResult bound_bv_abscont(double V, const IntervalConfig& cfg, NormCase which, double gnorm,
                             std::optional<ExponentPair> exps = std::nullopt, Form form = Form::general);

/// f of bounded variation V, g of p-H-Holder type. Returns (form1, form2).
std::pair<BoundResult, BoundResult> bound_bv_holder(double V, double H, double p, const IntervalConfig& cfg,
                                                    Form form = Form::general);

struct GValues {
    double ga = 0.0, gu = 0.0, gv = 0.0, gb = 0.0;
    double gm = 0.0;  // g((a + b)/2), midpoint form only
};

/// f of bounded variation V, g monotone nondecreasing.
BoundResult bound_bv_monotone(double V, const GValues& g, const IntervalConfig& cfg, Form form = Form::general);

/// f L-Lipschitz, g absolutely continuous (Linf or Lp only).
BoundResult bound_lip_abscont(double L, const IntervalConfig& cfg, NormCase which, double gnorm,
                              std::optional<ExponentPair> exps = std::nullopt, Form form = Form::general);

/// f L-Lipschitz, g of p-H-Holder type. The midpoint form exists for p = 1.
BoundResult bound_lip_holder(double L, double H, double p, const IntervalConfig& cfg, Form form = Form::general);

/// f' in L_alpha with norm `falpha`, (alpha, beta) conjugate; g' in the case
/// norm, Lp needing the pair (p, q).
BoundResult bound_abscont_pair(double falpha, const ExponentPair& alpha_beta, std::optional<ExponentPair> pq,
                               const IntervalConfig& cfg, NormCase which, double gnorm, Form form = Form::general);

// --- dispatch by identifier ---------------------------------------------------

/// Named inputs: V L H p q alpha beta finf fp f1 f2 falpha ginf gp g1 g2
/// m1 M1 m2 M2 m M ga gu gv gb gm fa fb fs0. `p` is the Holder order for
/// thm4.5.3, thm4.5.9 and cer4.3.3 and the Lebesgue exponent elsewhere.
using BoundParams = std::map<std::string, double>;

/// Every identifier accepted by evaluate_bound, general forms first.
std::vector<std::string> bound_ids();
/// Identifiers swept by verification (general forms only).
std::vector<std::string> sweep_ids();

/// Splits a full id into (theorem, case): "thm4.5.1/Linf/midpoint" gives
/// ("thm4.5.1", "Linf/midpoint").
std::pair<std::string, std::string> split_id(const std::string& id);

/// Evaluates `id`. eq2.1 and thm4/eq2.2 need `f` and `g` (quadrature); every
/// other id reads `params`. Throws PreconditionError for unknown ids or bad
/// parameter ranges and MissingConstantError for absent inputs.
BoundResult evaluate_bound(const std::string& id, const BoundParams& params, const IntervalConfig& cfg,
                           const FunctionSpec* f = nullptr, const FunctionSpec* g = nullptr,
                           double tol = kDefaultTol);

/// Inputs read from the declared constants of f and g and from g's values
/// at the configuration points. `p` picks the Lebesgue exponent of the Lp
/// cases and `alpha` the exponent of f' for thm4.5.12.
BoundParams params_from(const FunctionSpec& f, const FunctionSpec& g, const IntervalConfig& cfg, double p = 2.0,
                        double alpha = 2.0);

}  // namespace chebdiff
