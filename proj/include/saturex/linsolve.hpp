#pragma once

// Small dense linear solve with partial pivoting. The systems in this
// project are tiny (order n+2 with n <= 12) and well separated, so a plain
// elimination is all that is needed.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace saturex {

// Solves A x = b in place; A is row-major m x m. Throws std::runtime_error
// on a (near-)singular pivot.
inline std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b) {
    const std::size_t m = b.size();
    if (a.size() != m * m) throw std::invalid_argument("solve_dense: shape mismatch");

    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = col;
        double best = std::fabs(a[col * m + col]);
        for (std::size_t r = col + 1; r < m; ++r) {
            const double v = std::fabs(a[r * m + col]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (!(best > 1e-300)) throw std::runtime_error("solve_dense: singular system");
        if (pivot != col) {
            for (std::size_t c = col; c < m; ++c) std::swap(a[col * m + c], a[pivot * m + c]);
            std::swap(b[col], b[pivot]);
        }
        const double inv = 1.0 / a[col * m + col];
        for (std::size_t r = col + 1; r < m; ++r) {
            const double factor = a[r * m + col] * inv;
            if (factor == 0.0) continue;
            a[r * m + col] = 0.0;
            for (std::size_t c = col + 1; c < m; ++c) a[r * m + c] -= factor * a[col * m + c];
            b[r] -= factor * b[col];
        }
    }

    std::vector<double> x(m);
    for (std::size_t i = m; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < m; ++c) s -= a[i * m + c] * x[c];
        x[i] = s / a[i * m + i];
    }
    return x;
}

} // namespace saturex
