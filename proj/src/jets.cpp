#include "saturex/jets.hpp"

#include "saturex/chebcore.hpp"
#include "saturex/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace saturex {

namespace {

using Coeffs = std::vector<double>;

Coeffs cauchy_product(const Coeffs& a, const Coeffs& b) {
    const std::size_t m = a.size();
    Coeffs out(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j <= k; ++j) s += a[j] * b[k - j];
        out[k] = s;
    }
    return out;
}

// v_k = (1/k) sum_{j=1..k} j u_j v_{k-j}, seeded with v_0 = exp(u_0).
Coeffs exp_jet(const Coeffs& u) {
    Coeffs v(u.size(), 0.0);
    v[0] = std::exp(u[0]);
    for (std::size_t k = 1; k < u.size(); ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * u[j] * v[k - j];
        v[k] = s / static_cast<double>(k);
    }
    return v;
}

// Coupled recurrences for sine and cosine of a jet.
void sincos_jet(const Coeffs& u, Coeffs& s, Coeffs& c) {
    s.assign(u.size(), 0.0);
    c.assign(u.size(), 0.0);
    s[0] = std::sin(u[0]);
    c[0] = std::cos(u[0]);
    for (std::size_t k = 1; k < u.size(); ++k) {
        double ss = 0.0, cs = 0.0;
        for (std::size_t j = 1; j <= k; ++j) {
            const double ju = static_cast<double>(j) * u[j];
            ss += ju * c[k - j];
            cs += ju * s[k - j];
        }
        s[k] = ss / static_cast<double>(k);
        c[k] = -cs / static_cast<double>(k);
    }
}

Coeffs pow_jet(Coeffs base, int exponent, std::size_t len) {
    Coeffs acc(len, 0.0);
    acc[0] = 1.0;
    while (exponent > 0) {
        if (exponent & 1) acc = cauchy_product(acc, base);
        exponent >>= 1;
        if (exponent > 0) base = cauchy_product(base, base);
    }
    return acc;
}

Coeffs eval_coeffs(const ExprAst& ast, double center, std::size_t len) {
    switch (ast->kind) {
        case ExprKind::var: {
            Coeffs v(len, 0.0);
            v[0] = center;
            if (len > 1) v[1] = 1.0;
            return v;
        }
        case ExprKind::constant: {
            Coeffs v(len, 0.0);
            v[0] = ast->value;
            return v;
        }
        case ExprKind::add: {
            Coeffs a = eval_coeffs(ast->lhs, center, len);
            const Coeffs b = eval_coeffs(ast->rhs, center, len);
            for (std::size_t k = 0; k < len; ++k) a[k] += b[k];
            return a;
        }
        case ExprKind::sub: {
            Coeffs a = eval_coeffs(ast->lhs, center, len);
            const Coeffs b = eval_coeffs(ast->rhs, center, len);
            for (std::size_t k = 0; k < len; ++k) a[k] -= b[k];
            return a;
        }
        case ExprKind::mul:
            return cauchy_product(eval_coeffs(ast->lhs, center, len),
                                  eval_coeffs(ast->rhs, center, len));
        case ExprKind::neg: {
            Coeffs a = eval_coeffs(ast->lhs, center, len);
            for (double& v : a) v = -v;
            return a;
        }
        case ExprKind::pow_int:
            return pow_jet(eval_coeffs(ast->lhs, center, len), ast->exponent, len);
        case ExprKind::sin:
        case ExprKind::cos: {
            Coeffs s, c;
            sincos_jet(eval_coeffs(ast->lhs, center, len), s, c);
            return ast->kind == ExprKind::sin ? s : c;
        }
        case ExprKind::exp: return exp_jet(eval_coeffs(ast->lhs, center, len));
    }
    return Coeffs(len, 0.0); // unreachable
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

struct GridScan {
    std::vector<double> xs;
    std::vector<double> vals; // signed f^(k)
};

GridScan scan_grid(const ExprAst& ast, int k, double a, double b, int grid_size) {
    GridScan g;
    const NodeSet unit = cheb_extrema(grid_size - 1);
    g.xs.reserve(unit.points.size());
    g.vals.reserve(unit.points.size());
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const double fact = factorial(k);
    for (double t : unit.points) {
        const double x = (t <= -1.0) ? a : (t >= 1.0 ? b : mid + half * t);
        const Coeffs co = eval_coeffs(ast, x, static_cast<std::size_t>(k) + 1);
        g.xs.push_back(x);
        g.vals.push_back(fact * co[static_cast<std::size_t>(k)]);
    }
    return g;
}

DerivativeRange range_from_scan(const ExprAst& ast, int k, const GridScan& g) {
    const auto& xs = g.xs;
    const std::size_t m = xs.size();
    const double fact = factorial(k);
    auto abs_deriv = [&](double x) {
        const Coeffs co = eval_coeffs(ast, x, static_cast<std::size_t>(k) + 1);
        return std::fabs(fact * co[static_cast<std::size_t>(k)]);
    };

    std::vector<double> mag(m);
    double scale = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mag[i] = std::fabs(g.vals[i]);
        scale = std::max(scale, mag[i]);
    }

    DerivativeRange r;
    r.order = k;
    const PolyInfo info = poly_detect(ast);
    r.estimated = !(info.is_polynomial && info.degree <= k);
    r.sup = mag[0];
    r.argmax = xs[0];
    r.min_abs = mag[0];
    r.argmin = xs[0];
    auto note_max = [&r](double x, double v) {
        if (v > r.sup) {
            r.sup = v;
            r.argmax = x;
        }
    };
    auto note_min = [&r](double x, double v) {
        if (v < r.min_abs) {
            r.min_abs = v;
            r.argmin = x;
        }
    };
    for (std::size_t i = 1; i < m; ++i) {
        note_max(xs[i], mag[i]);
        note_min(xs[i], mag[i]);
    }

    // Refine interior extrema of |f^(k)|. A symmetric derivative samples its
    // peak as a tied pair of mirrored points, so a candidate only needs to
    // rise strictly on the left and not keep rising on the right; fully flat
    // runs at the noise floor still carry nothing beyond their grid value.
    const double prominence = 4e-16 * std::max(scale, 1e-300);
    for (std::size_t i = 1; i + 1 < m; ++i) {
        if (mag[i] > mag[i - 1] + prominence && mag[i] + prominence >= mag[i + 1]) {
            const Extremum e = golden_section_max(abs_deriv, xs[i - 1], xs[i + 1], 1e-12);
            note_max(e.x, e.value);
        }
        if (mag[i] + prominence < mag[i - 1] && mag[i] <= mag[i + 1] + prominence) {
            const Extremum e = golden_section_min(abs_deriv, xs[i - 1], xs[i + 1], 1e-12);
            note_min(e.x, e.value);
        }
    }
    // A sign change hides a zero of f^(k) between the two samples.
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (g.vals[i] * g.vals[i + 1] < 0.0) {
            const Extremum e = golden_section_min(abs_deriv, xs[i], xs[i + 1], 1e-12);
            note_min(e.x, e.value);
        }
    }
    return r;
}

} // namespace

Jet eval_jet(const ExprAst& ast, double center, int order) {
    if (order < 0) throw std::invalid_argument("eval_jet: negative order");
    Jet jet;
    jet.center = center;
    jet.order = order;
    jet.taylor = eval_coeffs(ast, center, static_cast<std::size_t>(order) + 1);
    return jet;
}

double derivative_at(const ExprAst& ast, double x, int k) {
    if (k < 0) throw std::invalid_argument("derivative_at: negative order");
    if (k > 170) throw std::range_error("derivative_at: k! overflows double for k > 170");
    const Coeffs co = eval_coeffs(ast, x, static_cast<std::size_t>(k) + 1);
    return factorial(k) * co[static_cast<std::size_t>(k)];
}

DerivativeRange derivative_range(const ExprAst& ast, int k, int grid_size) {
    if (grid_size < 64) throw std::invalid_argument("derivative_range: grid_size must be >= 64");
    return range_from_scan(ast, k, scan_grid(ast, k, -1.0, 1.0, grid_size));
}

DerivativeRange derivative_range_on(const ExprAst& ast, int k, double a, double b, int grid_size) {
    if (!(a < b)) throw std::invalid_argument("derivative_range_on: need a < b");
    if (grid_size < 64) throw std::invalid_argument("derivative_range_on: grid_size must be >= 64");
    return range_from_scan(ast, k, scan_grid(ast, k, a, b, grid_size));
}

SignedRange signed_derivative_range(const ExprAst& ast, int k, int grid_size) {
    if (grid_size < 64)
        throw std::invalid_argument("signed_derivative_range: grid_size must be >= 64");
    const GridScan g = scan_grid(ast, k, -1.0, 1.0, grid_size);
    const double fact = factorial(k);
    auto deriv = [&](double x) {
        const Coeffs co = eval_coeffs(ast, x, static_cast<std::size_t>(k) + 1);
        return fact * co[static_cast<std::size_t>(k)];
    };

    SignedRange r{g.vals[0], g.vals[0], g.xs[0], g.xs[0]};
    auto note = [&r](double x, double v) {
        if (v > r.hi) {
            r.hi = v;
            r.arghi = x;
        }
        if (v < r.lo) {
            r.lo = v;
            r.arglo = x;
        }
    };
    double scale = 0.0;
    for (std::size_t i = 0; i < g.xs.size(); ++i) {
        note(g.xs[i], g.vals[i]);
        scale = std::max(scale, std::fabs(g.vals[i]));
    }
    // Plateau rule as in range_from_scan: a tied mirrored pair still counts
    // as one extremum, anchored at its left sample.
    const double prominence = 4e-16 * std::max(scale, 1e-300);
    for (std::size_t i = 1; i + 1 < g.xs.size(); ++i) {
        if (g.vals[i] > g.vals[i - 1] + prominence && g.vals[i] + prominence >= g.vals[i + 1]) {
            const Extremum e = golden_section_max(deriv, g.xs[i - 1], g.xs[i + 1], 1e-12);
            note(e.x, e.value);
        }
        if (g.vals[i] + prominence < g.vals[i - 1] && g.vals[i] <= g.vals[i + 1] + prominence) {
            const Extremum e = golden_section_min(deriv, g.xs[i - 1], g.xs[i + 1], 1e-12);
            note(e.x, e.value);
        }
    }
    return r;
}

} // namespace saturex
