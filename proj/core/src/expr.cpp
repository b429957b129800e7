#include "acstk/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

namespace acstk {

ParseError::ParseError(const std::string& message, std::size_t position)
    : ValidationError("syntax error at position " + std::to_string(position) + ": " + message),
      position_(position) {}

Expr Expr::number(double value) {
    Node n{Kind::Number, value, 0, 0, nullptr, nullptr};
    return make(std::move(n));
}
Expr Expr::variable(int index) { return make({Kind::Variable, 0.0, index, 0, nullptr, nullptr}); }
Expr Expr::neg(Expr a) { return make({Kind::Neg, 0.0, 0, 0, a.node_, nullptr}); }
Expr Expr::add(Expr a, Expr b) { return make({Kind::Add, 0.0, 0, 0, a.node_, b.node_}); }
Expr Expr::sub(Expr a, Expr b) { return make({Kind::Sub, 0.0, 0, 0, a.node_, b.node_}); }
Expr Expr::mul(Expr a, Expr b) { return make({Kind::Mul, 0.0, 0, 0, a.node_, b.node_}); }
Expr Expr::div(Expr a, Expr b) { return make({Kind::Div, 0.0, 0, 0, a.node_, b.node_}); }
Expr Expr::pow(Expr a, int exponent) { return make({Kind::Pow, 0.0, 0, exponent, a.node_, nullptr}); }
Expr Expr::sin(Expr a) { return make({Kind::Sin, 0.0, 0, 0, a.node_, nullptr}); }
Expr Expr::cos(Expr a) { return make({Kind::Cos, 0.0, 0, 0, a.node_, nullptr}); }
Expr Expr::exp(Expr a) { return make({Kind::Exp, 0.0, 0, 0, a.node_, nullptr}); }

int Expr::arity() const {
    switch (kind()) {
        case Kind::Number: return 0;
        case Kind::Variable: return var() + 1;
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Div: return std::max(lhs().arity(), rhs().arity());
        default: return lhs().arity();
    }
}

double Expr::eval(std::span<const double> x) const {
    double r = 0.0;
    switch (kind()) {
        case Kind::Number: return value();
        case Kind::Variable:
            if (static_cast<std::size_t>(var()) >= x.size())
                throw ValidationError("variable x" + std::to_string(var() + 1) + " not supplied");
            return x[var()];
        case Kind::Neg: return -lhs().eval(x);
        case Kind::Add: r = lhs().eval(x) + rhs().eval(x); break;
        case Kind::Sub: r = lhs().eval(x) - rhs().eval(x); break;
        case Kind::Mul: r = lhs().eval(x) * rhs().eval(x); break;
        case Kind::Div: {
            const double den = rhs().eval(x);
            if (std::abs(den) < 1e-300) throw NumericalError("division by zero in expression");
            r = lhs().eval(x) / den;
            break;
        }
        case Kind::Pow: {
            const double base = lhs().eval(x);
            if (base == 0.0 && exponent() < 0) throw NumericalError("0 raised to a negative power");
            r = std::pow(base, exponent());
            break;
        }
        case Kind::Sin: r = std::sin(lhs().eval(x)); break;
        case Kind::Cos: r = std::cos(lhs().eval(x)); break;
        case Kind::Exp: r = std::exp(lhs().eval(x)); break;
    }
    if (!std::isfinite(r)) throw NumericalError("non-finite value in expression");
    return r;
}

bool Expr::operator==(const Expr& o) const {
    if (node_ == o.node_) return true;
    if (kind() != o.kind()) return false;
    switch (kind()) {
        case Kind::Number: return value() == o.value();
        case Kind::Variable: return var() == o.var();
        case Kind::Pow: return exponent() == o.exponent() && lhs() == o.lhs();
        case Kind::Neg:
        case Kind::Sin:
        case Kind::Cos:
        case Kind::Exp: return lhs() == o.lhs();
        default: return lhs() == o.lhs() && rhs() == o.rhs();
    }
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
    Parser(const std::string& text, int max_vars) : s_(text), max_vars_(max_vars) {}

    Expr parse() {
        Expr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_ + 1); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr expr() {
        Expr e = term();
        for (;;) {
            if (accept('+')) e = Expr::add(e, term());
            else if (accept('-')) e = Expr::sub(e, term());
            else return e;
        }
    }

    Expr term() {
        Expr e = unary();
        for (;;) {
            if (accept('*')) e = Expr::mul(e, unary());
            else if (accept('/')) e = Expr::div(e, unary());
            else return e;
        }
    }

    Expr unary() {
        if (accept('-')) return Expr::neg(unary());
        return power();
    }

    Expr power() {
        Expr e = atom();
        while (accept('^')) {
            skip();
            const bool negative = pos_ < s_.size() && s_[pos_] == '-';
            if (negative) ++pos_;
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected integer exponent");
            int value = 0;
            auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, value);
            if (ec != std::errc{} || value > 1000) {
                pos_ = start;
                fail("exponent out of range");
            }
            e = Expr::pow(e, negative ? -value : value);
        }
        return e;
    }

    Expr atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Expr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            const std::size_t b = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return pos_ - b;
        };
        std::size_t n = digits();
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            n += digits();
        }
        if (n == 0) fail("malformed number");
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            const std::size_t save = pos_;
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (digits() == 0) pos_ = save;
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, value);
        if (ec != std::errc{} || ptr != s_.data() + pos_) {
            pos_ = start;
            fail("malformed number");
        }
        return Expr::number(value);
    }

    Expr identifier() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        const std::string id = s_.substr(start, pos_ - start);
        if (id.size() > 1 && id[0] == 'x' &&
            id.find_first_not_of("0123456789", 1) == std::string::npos) {
            int index = 0;
            auto [ptr, ec] = std::from_chars(id.data() + 1, id.data() + id.size(), index);
            if (ec != std::errc{} || index < 1 || (max_vars_ > 0 && index > max_vars_)) {
                pos_ = start;
                fail("variable index out of range in '" + id + "'" +
                     (max_vars_ > 0 ? " (allowed x1..x" + std::to_string(max_vars_) + ")" : ""));
            }
            return Expr::variable(index - 1);
        }
        Expr (*fn)(Expr) = nullptr;
        if (id == "sin") fn = &Expr::sin;
        else if (id == "cos") fn = &Expr::cos;
        else if (id == "exp") fn = &Expr::exp;
        if (!fn) {
            pos_ = start;
            fail("unknown identifier '" + id + "'");
        }
        if (!accept('(')) fail("expected '(' after " + id);
        Expr arg = expr();
        if (!accept(')')) fail("expected ')'");
        return fn(arg);
    }

    const std::string& s_;
    int max_vars_;
    std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        case Expr::Kind::Number: return e.value() < 0 || std::signbit(e.value()) ? 3 : 5;
        default: return 5;
    }
}

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string render(const Expr& e);

std::string wrap(const Expr& e, bool parens) {
    return parens ? "(" + render(e) + ")" : render(e);
}

std::string render(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Number: return format_number(e.value());
        case K::Variable: return "x" + std::to_string(e.var() + 1);
        case K::Neg: return "-" + wrap(e.lhs(), precedence(e.lhs()) < 3);
        case K::Pow: return wrap(e.lhs(), precedence(e.lhs()) < 4) + "^" + std::to_string(e.exponent());
        case K::Sin: return "sin(" + render(e.lhs()) + ")";
        case K::Cos: return "cos(" + render(e.lhs()) + ")";
        case K::Exp: return "exp(" + render(e.lhs()) + ")";
        default: break;
    }
    const int p = precedence(e);
    const char* op = e.kind() == K::Add ? "+" : e.kind() == K::Sub ? "-" : e.kind() == K::Mul ? "*" : "/";
    // Left-associative: the right operand needs parentheses at equal precedence.
    const int pl = precedence(e.lhs());
    const int pr = precedence(e.rhs());
    const bool rhs_neg_ok = pr == 3;  // "a*-b", "a+-b" parse back as written
    return wrap(e.lhs(), pl < p) + op + wrap(e.rhs(), !rhs_neg_ok && pr <= p);
}

}  // namespace

Expr parse_expr(const std::string& text, int max_vars) { return Parser(text, max_vars).parse(); }

std::string to_string(const Expr& e) { return render(e); }

// ----------------------------------------------------------- simplification

Expr simplify(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Number:
        case K::Variable: return e;
        case K::Neg: {
            Expr a = simplify(e.lhs());
            if (a.is_number()) return Expr::number(-a.value());
            if (a.kind() == K::Neg) return a.lhs();
            return Expr::neg(a);
        }
        case K::Pow: {
            Expr a = simplify(e.lhs());
            if (e.exponent() == 0) return Expr::number(1.0);
            if (e.exponent() == 1) return a;
            if (a.is_number() && !(a.value() == 0.0 && e.exponent() < 0))
                return Expr::number(std::pow(a.value(), e.exponent()));
            return Expr::pow(a, e.exponent());
        }
        case K::Sin:
        case K::Cos:
        case K::Exp: {
            Expr a = simplify(e.lhs());
            if (a.is_number()) {
                const double v = e.kind() == K::Sin ? std::sin(a.value())
                                 : e.kind() == K::Cos ? std::cos(a.value())
                                                      : std::exp(a.value());
                return Expr::number(v);
            }
            return e.kind() == K::Sin ? Expr::sin(a) : e.kind() == K::Cos ? Expr::cos(a) : Expr::exp(a);
        }
        default: break;
    }
    Expr a = simplify(e.lhs());
    Expr b = simplify(e.rhs());
    switch (e.kind()) {
        case K::Add:
            if (a.is_number() && b.is_number()) return Expr::number(a.value() + b.value());
            if (a.is_number(0.0)) return b;
            if (b.is_number(0.0)) return a;
            return Expr::add(a, b);
        case K::Sub:
            if (a.is_number() && b.is_number()) return Expr::number(a.value() - b.value());
            if (b.is_number(0.0)) return a;
            if (a.is_number(0.0)) return simplify(Expr::neg(b));
            return Expr::sub(a, b);
        case K::Mul:
            if (a.is_number() && b.is_number()) return Expr::number(a.value() * b.value());
            if (a.is_number(0.0) || b.is_number(0.0)) return Expr::number(0.0);
            if (a.is_number(1.0)) return b;
            if (b.is_number(1.0)) return a;
            if (a.is_number(-1.0)) return simplify(Expr::neg(b));
            if (b.is_number(-1.0)) return simplify(Expr::neg(a));
            return Expr::mul(a, b);
        case K::Div:
            if (a.is_number() && b.is_number() && b.value() != 0.0)
                return Expr::number(a.value() / b.value());
            if (a.is_number(0.0) && !b.is_number(0.0)) return Expr::number(0.0);
            if (b.is_number(1.0)) return a;
            return Expr::div(a, b);
        default: return e;
    }
}

// ----------------------------------------------------------- differentiation

namespace {

Expr derive(const Expr& e, int i) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Number: return Expr::number(0.0);
        case K::Variable: return Expr::number(e.var() == i ? 1.0 : 0.0);
        case K::Neg: return Expr::neg(derive(e.lhs(), i));
        case K::Add: return Expr::add(derive(e.lhs(), i), derive(e.rhs(), i));
        case K::Sub: return Expr::sub(derive(e.lhs(), i), derive(e.rhs(), i));
        case K::Mul:
            return Expr::add(Expr::mul(derive(e.lhs(), i), e.rhs()),
                             Expr::mul(e.lhs(), derive(e.rhs(), i)));
        case K::Div:
            return Expr::div(Expr::sub(Expr::mul(derive(e.lhs(), i), e.rhs()),
                                       Expr::mul(e.lhs(), derive(e.rhs(), i))),
                             Expr::pow(e.rhs(), 2));
        case K::Pow:
            return Expr::mul(Expr::mul(Expr::number(e.exponent()), Expr::pow(e.lhs(), e.exponent() - 1)),
                             derive(e.lhs(), i));
        case K::Sin: return Expr::mul(Expr::cos(e.lhs()), derive(e.lhs(), i));
        case K::Cos: return Expr::neg(Expr::mul(Expr::sin(e.lhs()), derive(e.lhs(), i)));
        case K::Exp: return Expr::mul(e, derive(e.lhs(), i));
    }
    return Expr::number(0.0);
}

}  // namespace

Expr diff_expr(const Expr& e, int index) { return simplify(derive(e, index)); }

}  // namespace acstk
