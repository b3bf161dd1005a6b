#pragma once

// One-dimensional bracketed refinement used to polish grid extrema.

#include <cmath>
#include <functional>
#include <utility>

namespace saturex {

struct Extremum {
    double x = 0.0;
    double value = 0.0;
};

// Golden-section maximization of fn over [lo, hi] down to width xtol.
// Returns the best probe seen, endpoints included.
template <class Fn>
Extremum golden_section_max(Fn&& fn, double lo, double hi, double xtol) {
    constexpr double inv_phi = 0.6180339887498949; // (sqrt(5)-1)/2
    Extremum best{lo, fn(lo)};
    const double fhi = fn(hi);
    if (fhi > best.value) best = {hi, fhi};

    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = fn(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = fn(x1);
        }
    }
    if (f1 > best.value) best = {x1, f1};
    if (f2 > best.value) best = {x2, f2};
    return best;
}

template <class Fn>
Extremum golden_section_min(Fn&& fn, double lo, double hi, double xtol) {
    auto neg = [&fn](double x) { return -fn(x); };
    Extremum e = golden_section_max(neg, lo, hi, xtol);
    return {e.x, -e.value};
}

// Safeguarded parabolic maximization: successive three-point parabola fits
// with bisection fallback, bracket (lo, mid, hi) with fn(mid) >= fn(lo), fn(hi).
template <class Fn>
Extremum parabolic_max(Fn&& fn, double lo, double mid, double hi, double xtol) {
    double xs[3] = {lo, mid, hi};
    double fs[3] = {fn(lo), fn(mid), fn(hi)};
    Extremum best{xs[1], fs[1]};
    for (int i : {0, 2})
        if (fs[i] > best.value) best = {xs[i], fs[i]};

    for (int iter = 0; iter < 200 && xs[2] - xs[0] > xtol; ++iter) {
        const double d1 = xs[1] - xs[0], d2 = xs[1] - xs[2];
        const double g1 = fs[1] - fs[2], g2 = fs[1] - fs[0];
        const double num = d1 * d1 * g1 - d2 * d2 * g2;
        const double den = d1 * g1 - d2 * g2;
        double cand;
        if (std::fabs(den) > 1e-300) {
            cand = xs[1] - 0.5 * num / den;
        } else {
            cand = 0.5 * (xs[0] + xs[2]);
        }
        // Keep the probe strictly inside the bracket and away from the midpoint.
        const double span = xs[2] - xs[0];
        if (!(cand > xs[0] + 0.01 * span) || !(cand < xs[2] - 0.01 * span) ||
            std::fabs(cand - xs[1]) < 0.05 * xtol) {
            cand = xs[1] > 0.5 * (xs[0] + xs[2]) ? 0.5 * (xs[0] + xs[1]) : 0.5 * (xs[1] + xs[2]);
        }
        const double fc = fn(cand);
        if (fc > best.value) best = {cand, fc};
        if (cand < xs[1]) {
            if (fc >= fs[1]) {
                xs[2] = xs[1];
                fs[2] = fs[1];
                xs[1] = cand;
                fs[1] = fc;
            } else {
                xs[0] = cand;
                fs[0] = fc;
            }
        } else {
            if (fc >= fs[1]) {
                xs[0] = xs[1];
                fs[0] = fs[1];
                xs[1] = cand;
                fs[1] = fc;
            } else {
                xs[2] = cand;
                fs[2] = fc;
            }
        }
    }
    return best;
}

} // namespace saturex
