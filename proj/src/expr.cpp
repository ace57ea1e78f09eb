#include "umbilic/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>
#include <vector>

#include "umbilic/errors.hpp"

namespace umb {

namespace {

ExprPtr make_node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

ExprPtr make_leaf(ExprKind k, double number, int var) {
    ExprNode n;
    n.kind = k;
    n.number = number;
    n.var = var;
    n.depends_on_vars = (k == ExprKind::Variable);
    return make_node(std::move(n));
}

ExprPtr make_inner(ExprKind k, ExprPtr a, ExprPtr b = nullptr) {
    ExprNode n;
    n.kind = k;
    n.depends_on_vars = a->depends_on_vars || (b && b->depends_on_vars);
    n.a = std::move(a);
    n.b = std::move(b);
    return make_node(std::move(n));
}

// ---------------------------------------------------------------- lexer

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    Tok kind;
    std::size_t offset;
    std::string text;
    double number = 0.0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return cur_; }

    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        cur_.offset = pos_;
        cur_.text.clear();
        if (pos_ >= src_.size()) {
            cur_.kind = Tok::End;
            return;
        }
        const char c = src_[pos_];
        switch (c) {
            case '+': cur_.kind = Tok::Plus; ++pos_; return;
            case '-': cur_.kind = Tok::Minus; ++pos_; return;
            case '*': cur_.kind = Tok::Star; ++pos_; return;
            case '/': cur_.kind = Tok::Slash; ++pos_; return;
            case '^': cur_.kind = Tok::Caret; ++pos_; return;
            case '(': cur_.kind = Tok::LParen; ++pos_; return;
            case ')': cur_.kind = Tok::RParen; ++pos_; return;
            case ',': cur_.kind = Tok::Comma; ++pos_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double value = 0.0;
            const char* first = src_.data() + pos_;
            const char* last = src_.data() + src_.size();
            auto [end, ec] = std::from_chars(first, last, value);
            if (ec != std::errc() || end == first)
                throw ParseError("malformed number literal", pos_, {"number"});
            cur_.kind = Tok::Number;
            cur_.number = value;
            cur_.text.assign(first, end);
            pos_ += static_cast<std::size_t>(end - first);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            cur_.kind = Tok::Ident;
            cur_.text = std::string(src_.substr(start, pos_ - start));
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_,
                         {"number", "identifier", "operator", "(", ")"});
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token cur_;
};

// --------------------------------------------------------------- parser

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    ExprPtr run() {
        ExprPtr e = parse_expr();
        if (lex_.peek().kind != Tok::End)
            throw ParseError("trailing input after expression", lex_.peek().offset,
                             {"+", "-", "*", "/", "^", "end of input"});
        return e;
    }

private:
    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        while (true) {
            const Tok k = lex_.peek().kind;
            if (k == Tok::Plus || k == Tok::Minus) {
                lex_.take();
                ExprPtr rhs = parse_term();
                lhs = make_inner(k == Tok::Plus ? ExprKind::Add : ExprKind::Sub, lhs, rhs);
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_unary();
        while (true) {
            const Tok k = lex_.peek().kind;
            if (k == Tok::Star || k == Tok::Slash) {
                lex_.take();
                ExprPtr rhs = parse_unary();
                lhs = make_inner(k == Tok::Star ? ExprKind::Mul : ExprKind::Div, lhs, rhs);
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_unary() {
        if (lex_.peek().kind == Tok::Minus) {
            lex_.take();
            return make_inner(ExprKind::Neg, parse_unary());
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (lex_.peek().kind == Tok::Caret) {
            lex_.take();
            // Exponent re-enters at unary so that x^-2 and x^y^z work.
            ExprPtr exponent = parse_unary();
            return make_inner(ExprKind::Pow, base, exponent);
        }
        return base;
    }

    ExprPtr parse_atom() {
        const Token t = lex_.peek();
        switch (t.kind) {
            case Tok::Number:
                lex_.take();
                return make_leaf(ExprKind::Number, t.number, 0);
            case Tok::Ident:
                lex_.take();
                return finish_ident(t);
            case Tok::LParen: {
                lex_.take();
                ExprPtr e = parse_expr();
                expect(Tok::RParen, ")");
                return e;
            }
            default:
                throw ParseError("expected an operand", t.offset,
                                 {"number", "identifier", "(", "-"});
        }
    }

    ExprPtr finish_ident(const Token& t) {
        if (t.text == "u") return make_leaf(ExprKind::Variable, 0.0, 0);
        if (t.text == "v") return make_leaf(ExprKind::Variable, 0.0, 1);

        ExprKind kind;
        int arity = 1;
        if (t.text == "sin") kind = ExprKind::Sin;
        else if (t.text == "cos") kind = ExprKind::Cos;
        else if (t.text == "exp") kind = ExprKind::Exp;
        else if (t.text == "log") kind = ExprKind::Log;
        else if (t.text == "sqrt") kind = ExprKind::Sqrt;
        else if (t.text == "atan2") { kind = ExprKind::Atan2; arity = 2; }
        else
            throw ParseError("unknown identifier '" + t.text + "'", t.offset,
                             {"u", "v", "sin", "cos", "exp", "log", "sqrt", "atan2"});

        expect(Tok::LParen, "(");
        ExprPtr first = parse_expr();
        ExprPtr second;
        if (arity == 2) {
            expect(Tok::Comma, ",");
            second = parse_expr();
        }
        expect(Tok::RParen, ")");
        return make_inner(kind, first, second);
    }

    void expect(Tok kind, const char* what) {
        if (lex_.peek().kind != kind)
            throw ParseError(std::string("expected '") + what + "'", lex_.peek().offset, {what});
        lex_.take();
    }

    Lexer lex_;
};

// ------------------------------------------------------------ evaluation

double checked_log(double a) {
    if (a <= 0.0) throw EvalError("log of a non-positive value");
    return std::log(a);
}

double checked_sqrt(double a) {
    if (a < 0.0) throw EvalError("sqrt of a negative value");
    return std::sqrt(a);
}

double checked_atan2(double y, double x) {
    if (x == 0.0 && y == 0.0) throw EvalError("atan2 at the origin");
    return std::atan2(y, x);
}

Dual2 checked_log(const Dual2& a) { return log(a); }
Dual2 checked_sqrt(const Dual2& a) { return sqrt(a); }
Dual2 checked_atan2(const Dual2& y, const Dual2& x) { return atan2(y, x); }

double checked_div(double a, double b) {
    if (b == 0.0) throw EvalError("division by zero");
    return a / b;
}
Dual2 checked_div(const Dual2& a, const Dual2& b) { return a / b; }

double value_of(double x) { return x; }
double value_of(const Dual2& x) { return x.v; }

template <class T>
T general_pow(const T& base, const T& exponent) {
    if (value_of(base) <= 0.0)
        throw EvalError("non-integer power requires a positive base");
    return exp(exponent * checked_log(base));
}

template <>
double general_pow<double>(const double& base, const double& exponent) {
    if (base <= 0.0) throw EvalError("non-integer power requires a positive base");
    return std::exp(exponent * std::log(base));
}

template <class T>
T eval_node(const ExprNode& n, double u, double v);

// Constant integral exponents take the repeated-multiplication path, which
// keeps polynomial jets exact; everything else goes through exp(b log a).
template <class T>
T eval_pow(const ExprNode& n, double u, double v) {
    const T base = eval_node<T>(*n.a, u, v);
    if (!n.b->depends_on_vars) {
        const double e = eval_node<double>(*n.b, u, v);
        if (std::isfinite(e) && e == std::nearbyint(e) && std::fabs(e) < 1e9)
            return ipow(base, static_cast<long long>(e));
    }
    return general_pow(base, eval_node<T>(*n.b, u, v));
}

template <class T>
T eval_node(const ExprNode& n, double u, double v) {
    using std::sin;
    using std::cos;
    using std::exp;
    switch (n.kind) {
        case ExprKind::Number: return T(n.number);
        case ExprKind::Variable:
            if constexpr (std::is_same_v<T, Dual2>)
                return n.var == 0 ? Dual2::variable_u(u) : Dual2::variable_v(v);
            else
                return n.var == 0 ? u : v;
        case ExprKind::Add: return eval_node<T>(*n.a, u, v) + eval_node<T>(*n.b, u, v);
        case ExprKind::Sub: return eval_node<T>(*n.a, u, v) - eval_node<T>(*n.b, u, v);
        case ExprKind::Mul: return eval_node<T>(*n.a, u, v) * eval_node<T>(*n.b, u, v);
        case ExprKind::Div: return checked_div(eval_node<T>(*n.a, u, v), eval_node<T>(*n.b, u, v));
        case ExprKind::Pow: return eval_pow<T>(n, u, v);
        case ExprKind::Neg: return -eval_node<T>(*n.a, u, v);
        case ExprKind::Sin: return sin(eval_node<T>(*n.a, u, v));
        case ExprKind::Cos: return cos(eval_node<T>(*n.a, u, v));
        case ExprKind::Exp: return exp(eval_node<T>(*n.a, u, v));
        case ExprKind::Log: return checked_log(eval_node<T>(*n.a, u, v));
        case ExprKind::Sqrt: return checked_sqrt(eval_node<T>(*n.a, u, v));
        case ExprKind::Atan2:
            return checked_atan2(eval_node<T>(*n.a, u, v), eval_node<T>(*n.b, u, v));
    }
    throw EvalError("corrupt expression node");
}

// --------------------------------------------------------- pretty-print

// Precedence levels used for minimal parenthesisation. Must agree with the
// grammar in parse_expression so that printing round-trips structurally.
int precedence(ExprKind k) {
    switch (k) {
        case ExprKind::Add:
        case ExprKind::Sub: return 1;
        case ExprKind::Mul:
        case ExprKind::Div: return 2;
        case ExprKind::Neg: return 3;
        case ExprKind::Pow: return 4;
        default: return 5;
    }
}

std::string format_number(double x) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, end);
}

void print_node(const ExprNode& n, std::string& out);

void print_child(const ExprNode& child, int min_prec, std::string& out) {
    if (precedence(child.kind) < min_prec) {
        out += '(';
        print_node(child, out);
        out += ')';
    } else {
        print_node(child, out);
    }
}

void print_node(const ExprNode& n, std::string& out) {
    switch (n.kind) {
        case ExprKind::Number:
            out += format_number(n.number);
            return;
        case ExprKind::Variable:
            out += (n.var == 0 ? 'u' : 'v');
            return;
        case ExprKind::Add:
            print_child(*n.a, 1, out);
            out += " + ";
            print_child(*n.b, 2, out);
            return;
        case ExprKind::Sub:
            print_child(*n.a, 1, out);
            out += " - ";
            print_child(*n.b, 2, out);
            return;
        case ExprKind::Mul:
            print_child(*n.a, 2, out);
            out += '*';
            print_child(*n.b, 3, out);
            return;
        case ExprKind::Div:
            print_child(*n.a, 2, out);
            out += '/';
            print_child(*n.b, 3, out);
            return;
        case ExprKind::Neg:
            out += '-';
            print_child(*n.a, 3, out);
            return;
        case ExprKind::Pow:
            print_child(*n.a, 5, out);
            out += '^';
            print_child(*n.b, 3, out);
            return;
        case ExprKind::Sin: out += "sin("; break;
        case ExprKind::Cos: out += "cos("; break;
        case ExprKind::Exp: out += "exp("; break;
        case ExprKind::Log: out += "log("; break;
        case ExprKind::Sqrt: out += "sqrt("; break;
        case ExprKind::Atan2: out += "atan2("; break;
    }
    print_node(*n.a, out);
    if (n.b) {
        out += ", ";
        print_node(*n.b, out);
    }
    out += ')';
}

}  // namespace

ExprPtr parse_expression(std::string_view source) { return Parser(source).run(); }

std::string to_string(const ExprPtr& e) {
    std::string out;
    print_node(*e, out);
    return out;
}

bool expr_equal(const ExprPtr& lhs, const ExprPtr& rhs) {
    if (lhs == rhs) return true;
    if (!lhs || !rhs) return false;
    if (lhs->kind != rhs->kind) return false;
    switch (lhs->kind) {
        case ExprKind::Number: return lhs->number == rhs->number;
        case ExprKind::Variable: return lhs->var == rhs->var;
        default:
            return expr_equal(lhs->a, rhs->a) && expr_equal(lhs->b, rhs->b);
    }
}

double eval_value(const ExprPtr& e, double u, double v) { return eval_node<double>(*e, u, v); }

Dual2 eval_dual2(const ExprPtr& e, double u, double v) { return eval_node<Dual2>(*e, u, v); }

namespace ast {

ExprPtr num(double value) { return make_leaf(ExprKind::Number, value, 0); }
ExprPtr var_u() { return make_leaf(ExprKind::Variable, 0.0, 0); }
ExprPtr var_v() { return make_leaf(ExprKind::Variable, 0.0, 1); }
ExprPtr add(ExprPtr a, ExprPtr b) { return make_inner(ExprKind::Add, std::move(a), std::move(b)); }
ExprPtr sub(ExprPtr a, ExprPtr b) { return make_inner(ExprKind::Sub, std::move(a), std::move(b)); }
ExprPtr mul(ExprPtr a, ExprPtr b) { return make_inner(ExprKind::Mul, std::move(a), std::move(b)); }
ExprPtr div(ExprPtr a, ExprPtr b) { return make_inner(ExprKind::Div, std::move(a), std::move(b)); }
ExprPtr pow(ExprPtr base, ExprPtr exponent) {
    return make_inner(ExprKind::Pow, std::move(base), std::move(exponent));
}
ExprPtr neg(ExprPtr a) { return make_inner(ExprKind::Neg, std::move(a)); }
ExprPtr sin(ExprPtr a) { return make_inner(ExprKind::Sin, std::move(a)); }
ExprPtr cos(ExprPtr a) { return make_inner(ExprKind::Cos, std::move(a)); }
ExprPtr exp(ExprPtr a) { return make_inner(ExprKind::Exp, std::move(a)); }
ExprPtr log(ExprPtr a) { return make_inner(ExprKind::Log, std::move(a)); }
ExprPtr sqrt(ExprPtr a) { return make_inner(ExprKind::Sqrt, std::move(a)); }
ExprPtr atan2(ExprPtr y, ExprPtr x) {
    return make_inner(ExprKind::Atan2, std::move(y), std::move(x));
}

}  // namespace ast

}  // namespace umb
