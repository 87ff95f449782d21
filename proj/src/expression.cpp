#include "chebdiff/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "chebdiff/error.hpp"

namespace chebdiff {

struct Expr::Node {
    Op op = Op::Number;
    double value = 0.0;
    std::vector<Expr> args;
    std::vector<Condition> guards;
    bool has_var = false;
};

namespace {

double sign_of(double v) noexcept { return static_cast<double>((v > 0.0) - (v < 0.0)); }

double apply_unary(Op op, double a) {
    switch (op) {
        case Op::Neg: return -a;
        case Op::Sin: return std::sin(a);
        case Op::Cos: return std::cos(a);
        case Op::Exp: return std::exp(a);
        case Op::Log: return std::log(a);
        case Op::Abs: return std::fabs(a);
        case Op::Sign: return sign_of(a);
        case Op::Sqrt: return std::sqrt(a);
        default: break;
    }
    throw std::logic_error("not a unary operator");
}

double apply_binary(Op op, double a, double b) {
    switch (op) {
        case Op::Add: return a + b;
        case Op::Sub: return a - b;
        case Op::Mul: return a * b;
        case Op::Div: return a / b;
        case Op::Pow: return std::pow(a, b);
        default: break;
    }
    throw std::logic_error("not a binary operator");
}

bool is_unary(Op op) noexcept {
    switch (op) {
        case Op::Neg:
        case Op::Sin:
        case Op::Cos:
        case Op::Exp:
        case Op::Log:
        case Op::Abs:
        case Op::Sign:
        case Op::Sqrt: return true;
        default: return false;
    }
}

const char* function_name(Op op) noexcept {
    switch (op) {
        case Op::Sin: return "sin";
        case Op::Cos: return "cos";
        case Op::Exp: return "exp";
        case Op::Log: return "log";
        case Op::Abs: return "abs";
        case Op::Sign: return "sign";
        case Op::Sqrt: return "sqrt";
        default: return nullptr;
    }
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf.data(), end);
}

bool is_zero(const Expr& e) { return e.is_number() && e.value() == 0.0; }
bool is_one(const Expr& e) { return e.is_number() && e.value() == 1.0; }

}  // namespace

// -- construction -----------------------------------------------------------

Expr::Expr() : Expr(number(0.0)) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::number(double value) {
    auto n = std::make_shared<Node>();
    n->op = Op::Number;
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::var() {
    auto n = std::make_shared<Node>();
    n->op = Op::Var;
    n->has_var = true;
    return Expr(std::move(n));
}

Expr Expr::unary(Op op, Expr arg) {
    if (!is_unary(op)) throw std::invalid_argument("Expr::unary: not a unary operator");
    auto n = std::make_shared<Node>();
    n->op = op;
    n->has_var = arg.node_->has_var;
    n->args.push_back(std::move(arg));
    return Expr(std::move(n));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
    switch (op) {
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div:
        case Op::Pow: break;
        default: throw std::invalid_argument("Expr::binary: not a binary operator");
    }
    auto n = std::make_shared<Node>();
    n->op = op;
    n->has_var = lhs.node_->has_var || rhs.node_->has_var;
    n->args.push_back(std::move(lhs));
    n->args.push_back(std::move(rhs));
    return Expr(std::move(n));
}

Expr Expr::piecewise(std::vector<Condition> conditions, std::vector<Expr> branches,
                     Expr otherwise) {
    if (conditions.empty() || conditions.size() != branches.size())
        throw std::invalid_argument("Expr::piecewise: need one branch per condition");
    auto n = std::make_shared<Node>();
    n->op = Op::Piecewise;
    n->has_var = true;  // guards test x
    n->guards = std::move(conditions);
    n->args = std::move(branches);
    n->args.push_back(std::move(otherwise));
    return Expr(std::move(n));
}

Op Expr::op() const noexcept { return node_->op; }
double Expr::value() const noexcept { return node_->value; }
std::span<const Expr> Expr::args() const noexcept { return node_->args; }
std::span<const Condition> Expr::conditions() const noexcept { return node_->guards; }
bool Expr::is_constant() const noexcept { return !node_->has_var; }

std::size_t Expr::size() const {
    std::size_t total = 1;
    for (const auto& a : node_->args) total += a.size();
    return total;
}

// -- evaluation -------------------------------------------------------------

double Expr::operator()(double x) const {
    const Node& n = *node_;
    switch (n.op) {
        case Op::Number: return n.value;
        case Op::Var: return x;
        case Op::Piecewise:
            for (std::size_t i = 0; i < n.guards.size(); ++i)
                if (n.guards[i].holds(x)) return n.args[i](x);
            return n.args.back()(x);
        default: break;
    }
    if (is_unary(n.op)) return apply_unary(n.op, n.args[0](x));
    return apply_binary(n.op, n.args[0](x), n.args[1](x));
}

// -- algebra with folding ---------------------------------------------------

Expr operator+(Expr lhs, Expr rhs) {
    if (is_zero(lhs)) return rhs;
    if (is_zero(rhs)) return lhs;
    if (lhs.is_number() && rhs.is_number()) return Expr::number(lhs.value() + rhs.value());
    return Expr::binary(Op::Add, std::move(lhs), std::move(rhs));
}

Expr operator-(Expr lhs, Expr rhs) {
    if (is_zero(rhs)) return lhs;
    if (is_zero(lhs)) return -std::move(rhs);
    if (lhs.is_number() && rhs.is_number()) return Expr::number(lhs.value() - rhs.value());
    return Expr::binary(Op::Sub, std::move(lhs), std::move(rhs));
}

Expr operator*(Expr lhs, Expr rhs) {
    if (is_zero(lhs) || is_zero(rhs)) return Expr::number(0.0);
    if (is_one(lhs)) return rhs;
    if (is_one(rhs)) return lhs;
    if (lhs.is_number() && rhs.is_number()) return Expr::number(lhs.value() * rhs.value());
    // keep numeric factors on the left: 2*x rather than x*2
    if (rhs.is_number() && !lhs.is_number())
        return Expr::binary(Op::Mul, std::move(rhs), std::move(lhs));
    return Expr::binary(Op::Mul, std::move(lhs), std::move(rhs));
}

Expr operator/(Expr lhs, Expr rhs) {
    if (is_zero(lhs)) return Expr::number(0.0);
    if (is_one(rhs)) return lhs;
    if (lhs.is_number() && rhs.is_number() && rhs.value() != 0.0)
        return Expr::number(lhs.value() / rhs.value());
    return Expr::binary(Op::Div, std::move(lhs), std::move(rhs));
}

Expr operator-(Expr arg) {
    if (arg.is_number()) return Expr::number(-arg.value());
    if (arg.op() == Op::Neg) return arg.args()[0];
    return Expr::unary(Op::Neg, std::move(arg));
}

Expr pow(Expr base, Expr exponent) {
    if (is_zero(exponent)) return Expr::number(1.0);
    if (is_one(exponent)) return base;
    if (base.is_number() && exponent.is_number())
        return Expr::number(std::pow(base.value(), exponent.value()));
    return Expr::binary(Op::Pow, std::move(base), std::move(exponent));
}

// -- differentiation --------------------------------------------------------

Expr Expr::derivative() const {
    const Node& n = *node_;
    if (!n.has_var) return number(0.0);
    switch (n.op) {
        case Op::Var: return number(1.0);
        case Op::Add: return n.args[0].derivative() + n.args[1].derivative();
        case Op::Sub: return n.args[0].derivative() - n.args[1].derivative();
        case Op::Mul: {
            const Expr& u = n.args[0];
            const Expr& v = n.args[1];
            return u.derivative() * v + u * v.derivative();
        }
        case Op::Div: {
            const Expr& u = n.args[0];
            const Expr& v = n.args[1];
            if (v.is_constant()) return u.derivative() / v;
            return (u.derivative() * v - u * v.derivative()) / pow(v, number(2.0));
        }
        case Op::Pow: {
            const Expr& u = n.args[0];
            const Expr& v = n.args[1];
            if (v.is_constant()) {
                Expr lowered = v.is_number() ? number(v.value() - 1.0) : v - number(1.0);
                return v * pow(u, std::move(lowered)) * u.derivative();
            }
            // u^v (v' log u + v u' / u)
            return *this * (v.derivative() * unary(Op::Log, u) + v * u.derivative() / u);
        }
        case Op::Neg: return -n.args[0].derivative();
        case Op::Sin: return unary(Op::Cos, n.args[0]) * n.args[0].derivative();
        case Op::Cos: return -(unary(Op::Sin, n.args[0]) * n.args[0].derivative());
        case Op::Exp: return *this * n.args[0].derivative();
        case Op::Log: return n.args[0].derivative() / n.args[0];
        case Op::Abs: return unary(Op::Sign, n.args[0]) * n.args[0].derivative();
        case Op::Sign: return number(0.0);
        case Op::Sqrt: return n.args[0].derivative() / (number(2.0) * *this);
        case Op::Piecewise: {
            std::vector<Expr> branches;
            branches.reserve(n.guards.size());
            for (std::size_t i = 0; i < n.guards.size(); ++i)
                branches.push_back(n.args[i].derivative());
            return piecewise(n.guards, std::move(branches), n.args.back().derivative());
        }
        case Op::Number: break;
    }
    return number(0.0);
}

// -- structural equality ----------------------------------------------------

bool Expr::same_as(const Expr& other) const {
    const Node& a = *node_;
    const Node& b = *other.node_;
    if (&a == &b) return true;
    if (a.op != b.op || a.args.size() != b.args.size() || a.guards != b.guards) return false;
    if (a.op == Op::Number && a.value != b.value) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!a.args[i].same_as(b.args[i])) return false;
    return true;
}

// -- printing ---------------------------------------------------------------

namespace {

constexpr int kAtomPrec = 5;

int precedence(const Expr& e) {
    switch (e.op()) {
        case Op::Add:
        case Op::Sub: return 1;
        case Op::Mul:
        case Op::Div: return 2;
        case Op::Pow: return 3;
        case Op::Neg: return 4;
        case Op::Number: return e.value() < 0.0 ? kAtomPrec : kAtomPrec;
        default: return kAtomPrec;
    }
}

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool wrap, std::string& out) {
    if (wrap) out += '(';
    print(e, out);
    if (wrap) out += ')';
}

void print(const Expr& e, std::string& out) {
    switch (e.op()) {
        case Op::Number:
            if (std::signbit(e.value()) && e.value() != 0.0) {
                out += "(-";
                out += format_number(-e.value());
                out += ')';
            } else {
                out += format_number(e.value() == 0.0 ? 0.0 : e.value());
            }
            return;
        case Op::Var: out += 'x'; return;
        case Op::Neg:
            out += '-';
            print_wrapped(e.args()[0], precedence(e.args()[0]) < kAtomPrec, out);
            return;
        case Op::Piecewise: {
            out += "piecewise(";
            const auto guards = e.conditions();
            for (std::size_t i = 0; i < guards.size(); ++i) {
                out += "(x ";
                out += guards[i].inclusive ? "<= " : "< ";
                out += format_number(guards[i].threshold);
                out += ", ";
                print(e.args()[i], out);
                out += "), ";
            }
            print(e.args().back(), out);
            out += ')';
            return;
        }
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div: {
            const int p = precedence(e);
            print_wrapped(e.args()[0], precedence(e.args()[0]) < p, out);
            switch (e.op()) {
                case Op::Add: out += " + "; break;
                case Op::Sub: out += " - "; break;
                case Op::Mul: out += "*"; break;
                default: out += "/"; break;
            }
            print_wrapped(e.args()[1], precedence(e.args()[1]) <= p, out);
            return;
        }
        case Op::Pow:
            // base is a unary, exponent a factor
            print_wrapped(e.args()[0], precedence(e.args()[0]) < 4, out);
            out += '^';
            print_wrapped(e.args()[1], precedence(e.args()[1]) < 3, out);
            return;
        default: break;
    }
    out += function_name(e.op());
    out += '(';
    print(e.args()[0], out);
    out += ')';
}

}  // namespace

std::string Expr::str() const {
    std::string out;
    print(*this, out);
    return out;
}

// -- parsing ----------------------------------------------------------------

namespace {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Expr parse() {
        Expr e = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_ + 1); }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' but input ended");
            fail(std::string("expected '") + c + "'");
        }
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    Expr expr() {
        Expr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = Expr::binary(Op::Add, std::move(lhs), term());
            } else if (accept('-')) {
                lhs = Expr::binary(Op::Sub, std::move(lhs), term());
            } else {
                return lhs;
            }
        }
    }

    Expr term() {
        Expr lhs = factor();
        for (;;) {
            if (accept('*')) {
                lhs = Expr::binary(Op::Mul, std::move(lhs), factor());
            } else if (accept('/')) {
                lhs = Expr::binary(Op::Div, std::move(lhs), factor());
            } else {
                return lhs;
            }
        }
    }

    Expr factor() {
        Expr base = unary();
        if (accept('^')) return Expr::binary(Op::Pow, std::move(base), factor());
        return base;
    }

    Expr unary() {
        if (accept('-')) return Expr::unary(Op::Neg, atom());
        return atom();
    }

    double number_literal() {
        skip_ws();
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t n = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            n += digits();
        }
        if (n == 0) {
            pos_ = start;
            fail("expected a number");
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            const std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (digits() == 0) {
                pos_ = mark;
                fail("malformed exponent");
            }
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
        if (ec != std::errc{} || ptr != src_.data() + pos_) {
            pos_ = start;
            fail("malformed number");
        }
        return value;
    }

    std::string_view identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        return src_.substr(start, pos_ - start);
    }

    Expr atom() {
        const char c = peek();
        if (c == '\0') fail("unexpected end of input");
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Expr::number(number_literal());
        if (c == '(') {
            ++pos_;
            Expr inner = expr();
            expect(')');
            return inner;
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
        const std::size_t start = pos_;
        const std::string_view name = identifier();
        if (name == "x") return Expr::var();
        if (name == "piecewise") return piecewise();
        static constexpr std::array<std::pair<std::string_view, Op>, 7> kFunctions{{
            {"sin", Op::Sin},
            {"cos", Op::Cos},
            {"exp", Op::Exp},
            {"log", Op::Log},
            {"abs", Op::Abs},
            {"sign", Op::Sign},
            {"sqrt", Op::Sqrt},
        }};
        for (const auto& [fname, op] : kFunctions) {
            if (name == fname) {
                expect('(');
                Expr arg = expr();
                expect(')');
                return Expr::unary(op, std::move(arg));
            }
        }
        pos_ = start;
        fail("unknown identifier '" + std::string(name) + "'");
    }

    // Lookahead: "(" "x" ("<"|"<=")
    bool at_condition() {
        const std::size_t save = pos_;
        bool result = false;
        if (accept('(') && peek() == 'x') {
            ++pos_;
            result = peek() == '<';
        }
        pos_ = save;
        return result;
    }

    Expr piecewise() {
        expect('(');
        std::vector<Condition> guards;
        std::vector<Expr> branches;
        while (at_condition()) {
            expect('(');
            expect('x');
            expect('<');
            Condition cond;
            cond.inclusive = accept('=');
            const bool negative = accept('-');
            cond.threshold = number_literal();
            if (negative) cond.threshold = -cond.threshold;
            expect(',');
            branches.push_back(expr());
            expect(')');
            expect(',');
            guards.push_back(cond);
        }
        if (guards.empty()) fail("piecewise needs at least one (condition, expr) branch");
        Expr otherwise = expr();
        expect(')');
        return Expr::piecewise(std::move(guards), std::move(branches), std::move(otherwise));
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view source) { return Parser(source).parse(); }

// -- compiled form ----------------------------------------------------------

CompiledExpr::CompiledExpr(const Expr& expr) {
    emit(expr);
    // exact stack depth: simulate
    std::size_t depth = 0;
    for (const Instr& ins : code_) {
        switch (ins.op) {
            case Op::Number:
            case Op::Var: ++depth; break;
            case Op::Piecewise: depth -= ins.count; break;
            default:
                if (!is_unary(ins.op)) --depth;
                break;
        }
        max_stack_ = std::max(max_stack_, depth);
    }
}

void CompiledExpr::emit(const Expr& e) {
    for (const Expr& a : e.args()) emit(a);
    Instr ins{e.op()};
    if (e.op() == Op::Number) ins.value = e.value();
    if (e.op() == Op::Piecewise) {
        ins.count = static_cast<std::uint32_t>(e.conditions().size());
        ins.first_guard = static_cast<std::uint32_t>(guards_.size());
        guards_.insert(guards_.end(), e.conditions().begin(), e.conditions().end());
    }
    code_.push_back(ins);
}

double CompiledExpr::operator()(double x) const {
    constexpr std::size_t kSmall = 32;
    std::array<double, kSmall> small{};
    std::vector<double> large;
    double* stack = small.data();
    if (max_stack_ > kSmall) {
        large.resize(max_stack_);
        stack = large.data();
    }
    std::size_t top = 0;
    for (const Instr& ins : code_) {
        switch (ins.op) {
            case Op::Number: stack[top++] = ins.value; break;
            case Op::Var: stack[top++] = x; break;
            case Op::Add: --top; stack[top - 1] += stack[top]; break;
            case Op::Sub: --top; stack[top - 1] -= stack[top]; break;
            case Op::Mul: --top; stack[top - 1] *= stack[top]; break;
            case Op::Div: --top; stack[top - 1] /= stack[top]; break;
            case Op::Pow: --top; stack[top - 1] = std::pow(stack[top - 1], stack[top]); break;
            case Op::Piecewise: {
                const std::size_t n = ins.count;
                const std::size_t base = top - (n + 1);
                std::size_t chosen = n;
                for (std::size_t i = 0; i < n; ++i) {
                    if (guards_[ins.first_guard + i].holds(x)) {
                        chosen = i;
                        break;
                    }
                }
                stack[base] = stack[base + chosen];
                top = base + 1;
                break;
            }
            default: stack[top - 1] = apply_unary(ins.op, stack[top - 1]); break;
        }
    }
    return code_.empty() ? 0.0 : stack[0];
}

}  // namespace chebdiff
