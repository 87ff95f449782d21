#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chebdiff/expression.hpp"

namespace chebdiff {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    double length() const noexcept { return hi - lo; }
    bool contains(double t) const noexcept { return lo <= t && t <= hi; }
    bool covers(double a, double b) const noexcept { return lo <= a && b <= hi; }
};

struct HolderConstant {
    double order = 1.0;     // in (0, 1]
    double constant = 0.0;  // H
};

struct RangeBounds {
    double m = 0.0;
    double M = 0.0;
};

/// Declared function-class constants. Every value is an upper bound that is
/// valid on the function's whole domain; missing means "not in this class".
struct ClassConstants {
    std::optional<double> total_variation;
    std::optional<double> lipschitz;
    std::optional<HolderConstant> holder;
    /// Lebesgue norms of the derivative keyed by exponent (kInf for sup norm).
    std::map<double, double> lp_norms;
    bool monotone_nondecreasing = false;
    std::optional<RangeBounds> range_bounds;

    std::optional<double> deriv_norm(double p) const {
        auto it = lp_norms.find(p);
        if (it == lp_norms.end()) return std::nullopt;
        return it->second;
    }
};

/// A discontinuity of a function: f(at+) - f(at-).
struct Jump {
    double at = 0.0;
    double size = 0.0;
};

/// An expression restricted to a closed domain, together with its kinks and
/// discontinuities and its declared class constants. Immutable once built.
class FunctionSpec {
public:
    /// Builds and validates: the expression must be finite at 1025 uniform
    /// samples and at every breakpoint. `extra_breakpoints` are added to the
    /// detected ones (roots of abs/sign/sqrt/pow arguments and piecewise
    /// guards). Throws DomainError.
    FunctionSpec(Expr expr, Interval domain, ClassConstants constants = {},
                 std::vector<double> extra_breakpoints = {});

    const Expr& expr() const noexcept { return expr_; }
    const Interval& domain() const noexcept { return domain_; }
    const ClassConstants& constants() const noexcept { return constants_; }
    /// Sorted, inside the domain (endpoints included when detected there).
    const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
    /// False when a kink argument had too many roots to isolate.
    bool breakpoints_complete() const noexcept { return breakpoints_complete_; }
    const std::optional<Expr>& derivative_expr() const noexcept { return deriv_; }
    /// Source string the function was parsed from, or the printed tree.
    const std::string& source() const noexcept { return source_; }

    /// Unchecked evaluation for t inside the domain.
    double operator()(double t) const { return compiled_(t); }
    /// Checked evaluation. Throws DomainError when t is outside the domain.
    double evaluate(double t) const;

    /// Evaluates the symbolic derivative (defined away from breakpoints).
    double derivative_at(double t) const;

    /// Interior discontinuities with nonzero size.
    const std::vector<Jump>& jumps() const noexcept { return jumps_; }
    bool is_continuous() const noexcept { return jumps_.empty(); }
    /// Continuous with a usable symbolic derivative.
    bool is_absolutely_continuous() const noexcept { return is_continuous() && deriv_.has_value(); }

    FunctionSpec with_constants(ClassConstants constants) const;
    FunctionSpec with_source(std::string source) const;

private:
    struct AlmostEverywhere {};
    FunctionSpec(AlmostEverywhere, Expr expr, Interval domain, std::vector<double> breakpoints);

    void detect_breakpoints(const std::vector<double>& extra);
    void detect_jumps();
    void check_finite(bool include_breakpoints) const;

    friend FunctionSpec differentiate(const FunctionSpec& f);

    Expr expr_;
    CompiledExpr compiled_;
    Interval domain_;
    ClassConstants constants_;
    std::vector<double> breakpoints_;
    bool breakpoints_complete_ = true;
    std::optional<Expr> deriv_;
    std::optional<CompiledExpr> deriv_compiled_;
    std::vector<Jump> jumps_;
    std::string source_;
};

/// Parses `source` (see expression.hpp for the grammar) on `domain`.
FunctionSpec parse_function(std::string_view source, Interval domain, ClassConstants constants = {});

/// Symbolic derivative as a function on the same domain, defined almost
/// everywhere (breakpoints are kept so quadrature splits there). Throws
/// PreconditionError when the breakpoints of `f` could not be isolated.
FunctionSpec differentiate(const FunctionSpec& f);

/// Checked evaluation, free-function form.
double evaluate(const FunctionSpec& f, double t);

/// Sorted roots of `e` on [lo, hi], located by sampling on 1024 cells and
/// bisection. Returns nullopt when more than `max_roots` were found.
std::optional<std::vector<double>> find_roots(const Expr& e, double lo, double hi,
                                              std::size_t max_roots = 64);

/// Interval geometry for the difference of two functionals.
///
/// overlap: compares T over [a, v] and [u, b] with a <= u < v <= b.
/// nested:  compares T over [u, v] and [a, b] (the inner interval lies in the
///          outer one); bound formulas swap the roles of a and u.
struct IntervalConfig {
    enum class Mode { overlap, nested };

    double a = 0.0;
    double u = 0.0;
    double v = 1.0;
    double b = 1.0;
    Mode mode = Mode::overlap;

    /// a <= u < v <= b. Throws PreconditionError otherwise.
    void validate() const;
    bool is_valid() const noexcept { return a <= u && u < v && v <= b; }

    /// The configuration seen by the bound formulas: identity in overlap
    /// mode, (a, u) swapped in nested mode.
    IntervalConfig formula_view() const noexcept;
};

std::string to_string(IntervalConfig::Mode mode);

}  // namespace chebdiff
