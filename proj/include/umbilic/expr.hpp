#ifndef UMBILIC_EXPR_HPP
#define UMBILIC_EXPR_HPP

#include <memory>
#include <string>
#include <string_view>

#include "umbilic/dual2.hpp"

namespace umb {

enum class ExprKind {
    Number,
    Variable,  // u or v
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
    Sqrt,
    Atan2
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

// Immutable AST node. Subtrees are shared freely; evaluation never mutates.
struct ExprNode {
    ExprKind kind;
    double number = 0.0;  // Number payload
    int var = 0;          // Variable payload: 0 = u, 1 = v
    ExprPtr a, b;         // children (b used by binary ops and atan2)
    bool depends_on_vars = false;
};

// Recursive-descent parse of the expression grammar:
//   expr  := term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' unary)?            (right-associative)
//   atom  := number | 'u' | 'v' | func '(' expr (',' expr)? ')' | '(' expr ')'
// Throws ParseError with byte offset and expected-token set.
ExprPtr parse_expression(std::string_view source);

// Minimal-parenthesis rendering; parsing the result reproduces the tree.
std::string to_string(const ExprPtr& e);

bool expr_equal(const ExprPtr& lhs, const ExprPtr& rhs);

double eval_value(const ExprPtr& e, double u, double v);
Dual2 eval_dual2(const ExprPtr& e, double u, double v);

// Programmatic tree builders (gallery surfaces, sphere inversion).
namespace ast {
ExprPtr num(double value);
ExprPtr var_u();
ExprPtr var_v();
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr div(ExprPtr a, ExprPtr b);
ExprPtr pow(ExprPtr base, ExprPtr exponent);
ExprPtr neg(ExprPtr a);
ExprPtr sin(ExprPtr a);
ExprPtr cos(ExprPtr a);
ExprPtr exp(ExprPtr a);
ExprPtr log(ExprPtr a);
ExprPtr sqrt(ExprPtr a);
ExprPtr atan2(ExprPtr y, ExprPtr x);
}  // namespace ast

}  // namespace umb

#endif
