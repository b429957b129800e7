#pragma once

#include <memory>
#include <span>
#include <string>

#include "acstk/error.hpp"

namespace acstk {

/// Syntax error with a 1-based character position.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& message, std::size_t position);
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Immutable expression tree over real literals, variables x1..xn,
/// + - * /, integer powers and sin/cos/exp. Cheap to copy (shared nodes).
class Expr {
public:
    enum class Kind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp };

    Expr() : Expr(number(0.0)) {}

    static Expr number(double value);
    /// 0-based variable index (prints as x<index+1>).
    static Expr variable(int index);
    static Expr neg(Expr a);
    static Expr add(Expr a, Expr b);
    static Expr sub(Expr a, Expr b);
    static Expr mul(Expr a, Expr b);
    static Expr div(Expr a, Expr b);
    static Expr pow(Expr a, int exponent);
    static Expr sin(Expr a);
    static Expr cos(Expr a);
    static Expr exp(Expr a);

    Kind kind() const { return node_->kind; }
    double value() const { return node_->value; }
    int var() const { return node_->var; }
    int exponent() const { return node_->exponent; }
    Expr lhs() const { return Expr(node_->a); }
    Expr rhs() const { return Expr(node_->b); }

    bool is_number() const { return kind() == Kind::Number; }
    bool is_number(double v) const { return is_number() && value() == v; }

    /// Largest variable index used plus one (0 for constants).
    int arity() const;

    /// Evaluates at x; throws NumericalError on division by (near) zero,
    /// 0 raised to a negative power, or a non-finite result.
    double eval(std::span<const double> x) const;

    /// Structural equality (literals compared exactly).
    bool operator==(const Expr& other) const;

private:
    struct Node {
        Kind kind;
        double value = 0.0;
        int var = 0;
        int exponent = 0;
        std::shared_ptr<const Node> a;
        std::shared_ptr<const Node> b;
    };
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Expr make(Node n) { return Expr(std::make_shared<const Node>(std::move(n))); }

    std::shared_ptr<const Node> node_;
};

/// Parses infix text. Grammar (lowest to highest precedence):
///   expr  := term (('+' | '-') term)*
///   term  := unary (('*' | '/') unary)*
///   unary := '-' unary | power
///   power := atom ('^' ['-'] digits)*
///   atom  := number | 'x' digits | ('sin'|'cos'|'exp') '(' expr ')' | '(' expr ')'
/// Variable indices must lie in 1..max_vars when max_vars > 0.
Expr parse_expr(const std::string& text, int max_vars = 0);

/// Minimal-parenthesis rendering; parse(to_string(e)) == e for any parsed e.
std::string to_string(const Expr& e);

/// Exact partial derivative with respect to variable `index` (0-based),
/// with constant folding.
Expr diff_expr(const Expr& e, int index);

/// Folds constants and the identities 0+a, a*1, a*0, a^1, a^0, --a.
Expr simplify(const Expr& e);

}  // namespace acstk
