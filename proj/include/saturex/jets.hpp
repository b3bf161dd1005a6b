#pragma once

// Truncated Taylor (jet) arithmetic: exact high-order derivatives of parsed
// expressions at a point, plus derivative range scans over an interval.

#include "saturex/exprlang.hpp"

#include <vector>

namespace saturex {

// Taylor coefficients of f at a center: taylor[j] = f^(j)(center) / j!.
struct Jet {
    double center = 0.0;
    int order = 0;
    std::vector<double> taylor; // size order+1
};

Jet eval_jet(const ExprAst& ast, double center, int order);

// f^(k)(x) = k! * taylor[k]; exact up to floating rounding.
// Throws std::range_error for k > 170 (k! overflows double).
double derivative_at(const ExprAst& ast, double x, int k);

// Extremes of |f^(k)| over [-1,1] with their locations. The range comes from
// a grid scan, so it is a lower estimate of the true sup unless f^(k) is
// constant by structure (f polynomial of degree <= k); `estimated` records
// which case applies.
struct DerivativeRange {
    int order = 0;
    double min_abs = 0.0;
    double sup = 0.0;
    double argmin = 0.0;
    double argmax = 0.0;
    bool estimated = true;
};

// Samples f^(k) on a Chebyshev-extrema grid of grid_size points and refines
// each local extremum of |f^(k)| by golden-section to 1e-12 in x.
// grid_size >= 64.
DerivativeRange derivative_range(const ExprAst& ast, int k, int grid_size);

// Same scan on an arbitrary interval [a, b] (used by the lemma checks).
DerivativeRange derivative_range_on(const ExprAst& ast, int k, double a, double b, int grid_size);

// Signed extremes of f^(k) over [-1,1] (the containment check of the
// interpolation error identity needs the signed range, not |.|).
struct SignedRange {
    double lo = 0.0;
    double hi = 0.0;
    double arglo = 0.0;
    double arghi = 0.0;
};

SignedRange signed_derivative_range(const ExprAst& ast, int k, int grid_size);

} // namespace saturex
