#pragma once

// Expression trees over a single real variable `x`.
//
// Grammar accepted by parse_expression():
//
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := unary ("^" factor)?
//   unary  := ("-")? atom
//   atom   := number | "x" | fn "(" expr ")" | "(" expr ")" | piecewise
//   fn     := sin | cos | exp | log | abs | sign | sqrt
//   piecewise := "piecewise(" ("(" cond "," expr ")" ",")+ expr ")"
//   cond   := "x" ("<"|"<=") number
//
// Note that unary minus binds to an atom, so "-x^2" is (-x)^2.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chebdiff {

enum class Op : std::uint8_t {
    Number,
    Var,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Neg,
    Sin,
    Cos,
    Exp,
    Log,
    Abs,
    Sign,
    Sqrt,
    Piecewise,
};

/// Branch guard of a piecewise node: `x < threshold` or `x <= threshold`.
struct Condition {
    double threshold = 0.0;
    bool inclusive = false;

    bool holds(double x) const noexcept { return inclusive ? x <= threshold : x < threshold; }
    bool operator==(const Condition&) const = default;
};

class Expr {
public:
    /// The constant 0.
    Expr();

    static Expr number(double value);
    static Expr var();
    static Expr unary(Op op, Expr arg);
    static Expr binary(Op op, Expr lhs, Expr rhs);
    /// `branches[i]` applies when `conditions[i]` is the first guard that
    /// holds; `otherwise` applies when none does.
    static Expr piecewise(std::vector<Condition> conditions, std::vector<Expr> branches,
                          Expr otherwise);

    Op op() const noexcept;
    /// Literal value of a Number node; 0 for other nodes.
    double value() const noexcept;
    /// Children. For Piecewise: the branches followed by the fallback.
    std::span<const Expr> args() const noexcept;
    std::span<const Condition> conditions() const noexcept;

    bool is_number() const noexcept { return op() == Op::Number; }
    /// True if the tree does not reference `x`.
    bool is_constant() const noexcept;

    /// Tree-walking evaluation; sign(0) = 0.
    double operator()(double x) const;

    /// Symbolic derivative with light constant folding. abs and sign are
    /// differentiated almost everywhere: abs(u)' = sign(u) u', sign(u)' = 0.
    Expr derivative() const;

    /// Structural equality (same node kinds, literals, guards and shape).
    bool same_as(const Expr& other) const;

    /// Source text that parses back to a structurally identical tree.
    std::string str() const;

    /// Number of nodes in the tree.
    std::size_t size() const;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

Expr operator+(Expr lhs, Expr rhs);
Expr operator-(Expr lhs, Expr rhs);
Expr operator*(Expr lhs, Expr rhs);
Expr operator/(Expr lhs, Expr rhs);
Expr operator-(Expr arg);
Expr pow(Expr base, Expr exponent);

/// Parses `source`. Throws ParseError carrying the 1-based column of the fault.
Expr parse_expression(std::string_view source);

/// Flat postfix form of an expression for fast repeated evaluation.
class CompiledExpr {
public:
    CompiledExpr() = default;
    explicit CompiledExpr(const Expr& expr);

    double operator()(double x) const;

private:
    struct Instr {
        Op op;
        std::uint32_t count = 0;  // Piecewise: number of guards; index into guards_
        std::uint32_t first_guard = 0;
        double value = 0.0;
    };
    void emit(const Expr& e);

    std::vector<Instr> code_;
    std::vector<Condition> guards_;
    std::size_t max_stack_ = 0;
};

}  // namespace chebdiff
