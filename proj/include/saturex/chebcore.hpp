#pragma once

// Chebyshev polynomial machinery on [-1,1]: nodes, evaluation, basis
// handling, differentiation and interpolation at Chebyshev roots.

#include <span>
#include <vector>

namespace saturex {

// Trailing coefficients with |c| below this are dropped when a series is
// normalized, so that degree() is meaningful in the presence of float noise.
inline constexpr double kTrimThreshold = 1e-14;

// Polynomial in the Chebyshev basis: sum of coeff(k) * T_k(x) on [-1,1].
// Stored coefficients are always trimmed; the zero polynomial is the empty
// coefficient list.
class ChebSeries {
  public:
    ChebSeries() = default;
    explicit ChebSeries(std::vector<double> coeffs);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1; }

    // Coefficient of T_k; zero beyond the stored degree.
    double coeff(int k) const;
    const std::vector<double>& coeffs() const { return coeffs_; }

    double operator()(double x) const;

  private:
    std::vector<double> coeffs_;
};

enum class NodeKind { roots, extrema, custom };

// Strictly increasing points in [-1,1].
struct NodeSet {
    std::vector<double> points;
    NodeKind kind = NodeKind::custom;
};

// T_k(x) by the three-term recurrence. Exact at the endpoints, unlike the
// cos/arccos form. Throws std::domain_error if |x| > 1 + 1e-12.
double cheb_eval(int k, double x);

// Roots of T_k: cos((2i+1)pi/(2k)), ascending. k >= 1.
NodeSet cheb_roots(int k);

// Extrema of T_k on [-1,1]: cos(j*pi/k) for j = k..0, ascending; k+1 points
// with endpoints -1 and 1, on which T_k alternates +-1. k >= 1.
NodeSet cheb_extrema(int k);

// Degree-<=n interpolant through the values of f at cheb_roots(n+1), via the
// discrete orthogonality formula c_j = (2 - delta_{j0})/(n+1) * sum_i f(x_i) T_j(x_i).
// samples must hold exactly n+1 values ordered like cheb_roots(n+1).
ChebSeries fit_at_roots(std::span<const double> samples, int n);

// Stable evaluation of a series by the Clenshaw recurrence.
// Throws std::domain_error if |x| > 1 + 1e-12.
double clenshaw(const ChebSeries& series, double x);

// Chebyshev coefficients of the derivative (degree drops by exactly one).
ChebSeries derive_series(const ChebSeries& series);

// max |series(x)| over a Chebyshev-extrema grid of grid_size points followed
// by local parabolic refinement at each interior local maximum. grid_size >= 2.
double series_sup_norm(const ChebSeries& series, int grid_size);

ChebSeries add(const ChebSeries& a, const ChebSeries& b);
ChebSeries scale(const ChebSeries& s, double factor);

// Monomial coefficients a_0..a_d with series(x) = sum a_k x^k.
std::vector<double> to_monomial(const ChebSeries& series);

// Degree-<=(xs.size()-1) interpolant through arbitrary distinct points,
// solved on the Chebyshev-Vandermonde system. Points must lie in [-1,1].
ChebSeries fit_through_points(std::span<const double> xs, std::span<const double> ys);

} // namespace saturex
