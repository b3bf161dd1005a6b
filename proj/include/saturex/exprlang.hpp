#pragma once

// A small expression language for target functions of one variable x.
// Supported nodes keep every expressible function C-infinity on the real
// line: +, -, *, integer powers, sin, cos, exp. No division, no log.

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace saturex {

enum class ExprKind { var, constant, add, sub, mul, neg, pow_int, sin, cos, exp };

struct ExprNode;
using ExprAst = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprKind kind;
    double value = 0.0; // constant
    int exponent = 0;   // pow_int, >= 0
    ExprAst lhs;        // unary operand or left child
    ExprAst rhs;
};

struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(const std::string& message, std::size_t byte_offset)
        : std::runtime_error(message + " at offset " + std::to_string(byte_offset)),
          offset(byte_offset) {}
};

// Recursive-descent parser for
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*          ('/' is rejected)
//   factor := '-' factor | atom ('^' uint)?
//   atom   := number | 'x' | ('sin'|'cos'|'exp') '(' expr ')' | '(' expr ')'
// Whitespace is insignificant; errors carry the byte offset.
ExprAst parse(std::string_view text);

// Canonical text form; parse(print_expr(ast)) reproduces ast exactly.
std::string print_expr(const ExprAst& ast);

double eval_scalar(const ExprAst& ast, double x);

bool ast_equal(const ExprAst& a, const ExprAst& b);

struct PolyInfo {
    bool is_polynomial = false;
    int degree = 0; // meaningful only when is_polynomial
};

// Structural polynomial test (no sin/cos/exp node) with the degree computed
// by Chebyshev expansion at the syntactic degree bound and trimming, so that
// cancellations like x^2 - x^2 + x are detected.
PolyInfo poly_detect(const ExprAst& ast);

namespace ast {
ExprAst var();
ExprAst constant(double c);
ExprAst add(ExprAst a, ExprAst b);
ExprAst sub(ExprAst a, ExprAst b);
ExprAst mul(ExprAst a, ExprAst b);
ExprAst neg(ExprAst a);
ExprAst pow_int(ExprAst base, int exponent);
ExprAst sin(ExprAst a);
ExprAst cos(ExprAst a);
ExprAst exp(ExprAst a);
// Horner-form polynomial from monomial coefficients a_0..a_d.
ExprAst polynomial(std::span<const double> monomial_coeffs);
} // namespace ast

} // namespace saturex
