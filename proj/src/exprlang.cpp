#include "saturex/exprlang.hpp"

#include "saturex/chebcore.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>
#include <utility>
#include <vector>

namespace saturex {

namespace ast {

namespace {
ExprAst node(ExprKind kind, ExprAst lhs = nullptr, ExprAst rhs = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}
} // namespace

ExprAst var() { return node(ExprKind::var); }

ExprAst constant(double c) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::constant;
    n->value = c;
    return n;
}

ExprAst add(ExprAst a, ExprAst b) { return node(ExprKind::add, std::move(a), std::move(b)); }
ExprAst sub(ExprAst a, ExprAst b) { return node(ExprKind::sub, std::move(a), std::move(b)); }
ExprAst mul(ExprAst a, ExprAst b) { return node(ExprKind::mul, std::move(a), std::move(b)); }
ExprAst neg(ExprAst a) { return node(ExprKind::neg, std::move(a)); }

ExprAst pow_int(ExprAst base, int exponent) {
    if (exponent < 0) throw std::invalid_argument("pow_int: exponent must be nonnegative");
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::pow_int;
    n->exponent = exponent;
    n->lhs = std::move(base);
    return n;
}

ExprAst sin(ExprAst a) { return node(ExprKind::sin, std::move(a)); }
ExprAst cos(ExprAst a) { return node(ExprKind::cos, std::move(a)); }
ExprAst exp(ExprAst a) { return node(ExprKind::exp, std::move(a)); }

ExprAst polynomial(std::span<const double> monomial_coeffs) {
    if (monomial_coeffs.empty()) return constant(0.0);
    // Horner: (((a_d x + a_{d-1}) x + ...) x + a_0
    ExprAst acc = constant(monomial_coeffs.back());
    for (std::size_t k = monomial_coeffs.size() - 1; k-- > 0;)
        acc = add(mul(acc, var()), constant(monomial_coeffs[k]));
    return acc;
}

} // namespace ast

namespace {

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprAst run() {
        ExprAst e = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return e;
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ == text_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ExprAst expr() {
        ExprAst e = term();
        while (true) {
            const char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                ExprAst r = term();
                e = c == '+' ? ast::add(std::move(e), std::move(r))
                             : ast::sub(std::move(e), std::move(r));
            } else {
                return e;
            }
        }
    }

    ExprAst term() {
        ExprAst e = factor();
        while (true) {
            const char c = peek();
            if (c == '*') {
                ++pos_;
                e = ast::mul(std::move(e), factor());
            } else if (c == '/') {
                throw ParseError("unsupported operator: /", pos_);
            } else {
                return e;
            }
        }
    }

    ExprAst factor() {
        if (peek() == '-') {
            ++pos_;
            return ast::neg(factor());
        }
        ExprAst base = atom();
        if (peek() == '^') {
            ++pos_;
            return ast::pow_int(std::move(base), uint_literal());
        }
        return base;
    }

    ExprAst atom() {
        if (at_end()) throw ParseError("expected expression", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ExprAst e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const std::string_view name = text_.substr(start, pos_ - start);
            if (name == "x") return ast::var();
            ExprAst (*fn)(ExprAst) = nullptr;
            if (name == "sin")
                fn = ast::sin;
            else if (name == "cos")
                fn = ast::cos;
            else if (name == "exp")
                fn = ast::exp;
            else
                throw ParseError("unknown identifier '" + std::string(name) + "'", start);
            expect('(');
            ExprAst arg = expr();
            expect(')');
            return fn(std::move(arg));
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    void expect(char c) {
        if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    int uint_literal() {
        skip_ws();
        const std::size_t start = pos_;
        if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError("expected nonnegative integer exponent", pos_);
        long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 1000000) throw ParseError("exponent too large", start);
            ++pos_;
        }
        return static_cast<int>(v);
    }

    ExprAst number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw ParseError("expected digits after decimal point", pos_);
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw ParseError("expected digits in exponent", pos_);
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        const std::string token(text_.substr(start, pos_ - start));
        return ast::constant(std::stod(token));
    }
};

int precedence(ExprKind k) {
    switch (k) {
        case ExprKind::add:
        case ExprKind::sub: return 1;
        case ExprKind::mul: return 2;
        case ExprKind::neg: return 3;
        case ExprKind::pow_int: return 4;
        default: return 5;
    }
}

std::string format_constant(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void print_node(const ExprAst& n, std::string& out);

void print_child(const ExprAst& child, int min_prec, std::string& out) {
    if (precedence(child->kind) < min_prec) {
        out += '(';
        print_node(child, out);
        out += ')';
    } else {
        print_node(child, out);
    }
}

void print_node(const ExprAst& n, std::string& out) {
    switch (n->kind) {
        case ExprKind::var: out += 'x'; break;
        case ExprKind::constant: out += format_constant(n->value); break;
        case ExprKind::add:
            print_child(n->lhs, 1, out);
            out += " + ";
            print_child(n->rhs, 2, out);
            break;
        case ExprKind::sub:
            print_child(n->lhs, 1, out);
            out += " - ";
            print_child(n->rhs, 2, out);
            break;
        case ExprKind::mul:
            print_child(n->lhs, 2, out);
            out += " * ";
            print_child(n->rhs, 3, out);
            break;
        case ExprKind::neg:
            out += '-';
            print_child(n->lhs, 4, out);
            break;
        case ExprKind::pow_int:
            print_child(n->lhs, 5, out);
            out += '^';
            out += std::to_string(n->exponent);
            break;
        case ExprKind::sin:
        case ExprKind::cos:
        case ExprKind::exp:
            out += n->kind == ExprKind::sin ? "sin(" : (n->kind == ExprKind::cos ? "cos(" : "exp(");
            print_node(n->lhs, out);
            out += ')';
            break;
    }
}

// Syntactic degree bound; nullopt marks a transcendental subtree.
std::optional<long> degree_bound(const ExprAst& n) {
    switch (n->kind) {
        case ExprKind::var: return 1;
        case ExprKind::constant: return 0;
        case ExprKind::add:
        case ExprKind::sub: {
            auto a = degree_bound(n->lhs), b = degree_bound(n->rhs);
            if (!a || !b) return std::nullopt;
            return std::max(*a, *b);
        }
        case ExprKind::mul: {
            auto a = degree_bound(n->lhs), b = degree_bound(n->rhs);
            if (!a || !b) return std::nullopt;
            return std::min(*a + *b, long{1} << 20);
        }
        case ExprKind::neg: return degree_bound(n->lhs);
        case ExprKind::pow_int: {
            auto a = degree_bound(n->lhs);
            if (!a) return std::nullopt;
            return std::min(*a * n->exponent, long{1} << 20);
        }
        default: return std::nullopt;
    }
}

} // namespace

ExprAst parse(std::string_view text) { return Parser(text).run(); }

std::string print_expr(const ExprAst& ast) {
    std::string out;
    print_node(ast, out);
    return out;
}

double eval_scalar(const ExprAst& ast, double x) {
    switch (ast->kind) {
        case ExprKind::var: return x;
        case ExprKind::constant: return ast->value;
        case ExprKind::add: return eval_scalar(ast->lhs, x) + eval_scalar(ast->rhs, x);
        case ExprKind::sub: return eval_scalar(ast->lhs, x) - eval_scalar(ast->rhs, x);
        case ExprKind::mul: return eval_scalar(ast->lhs, x) * eval_scalar(ast->rhs, x);
        case ExprKind::neg: return -eval_scalar(ast->lhs, x);
        case ExprKind::pow_int: return std::pow(eval_scalar(ast->lhs, x), ast->exponent);
        case ExprKind::sin: return std::sin(eval_scalar(ast->lhs, x));
        case ExprKind::cos: return std::cos(eval_scalar(ast->lhs, x));
        case ExprKind::exp: return std::exp(eval_scalar(ast->lhs, x));
    }
    return 0.0; // unreachable
}

bool ast_equal(const ExprAst& a, const ExprAst& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case ExprKind::constant: return a->value == b->value;
        case ExprKind::var: return true;
        case ExprKind::pow_int:
            return a->exponent == b->exponent && ast_equal(a->lhs, b->lhs);
        case ExprKind::neg:
        case ExprKind::sin:
        case ExprKind::cos:
        case ExprKind::exp: return ast_equal(a->lhs, b->lhs);
        default: return ast_equal(a->lhs, b->lhs) && ast_equal(a->rhs, b->rhs);
    }
}

PolyInfo poly_detect(const ExprAst& ast) {
    const auto bound = degree_bound(ast);
    if (!bound) return PolyInfo{false, 0};
    if (*bound > 4096) throw std::invalid_argument("poly_detect: degree bound too large");

    const int n = static_cast<int>(*bound);
    const NodeSet nodes = cheb_roots(n + 1);
    std::vector<double> samples(nodes.points.size());
    for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = eval_scalar(ast, nodes.points[i]);
    const ChebSeries expansion = fit_at_roots(samples, n);
    return PolyInfo{true, expansion.degree()};
}

} // namespace saturex
