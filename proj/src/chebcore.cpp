#include "saturex/chebcore.hpp"

#include "saturex/linsolve.hpp"
#include "saturex/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace saturex {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDomainSlack = 1e-12;

void check_domain(double x) {
    if (std::fabs(x) > 1.0 + kDomainSlack) throw std::domain_error("evaluation point outside [-1,1]");
}

// Symmetrize a node list about 0: x_i <- (x_i - x_rev)/2 with x_rev the
// mirror partner. Kills asymmetric rounding from the cos() calls and pins
// the middle node of an odd set to exactly 0.
std::vector<double> symmetrized(std::vector<double> raw) {
    const std::size_t m = raw.size();
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = 0.5 * (raw[i] - raw[m - 1 - i]);
    return out;
}

} // namespace

ChebSeries::ChebSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    for (double c : coeffs_)
        if (!std::isfinite(c)) throw std::invalid_argument("ChebSeries: non-finite coefficient");
    while (!coeffs_.empty() && std::fabs(coeffs_.back()) < kTrimThreshold) coeffs_.pop_back();
}

double ChebSeries::coeff(int k) const {
    if (k < 0 || static_cast<std::size_t>(k) >= coeffs_.size()) return 0.0;
    return coeffs_[static_cast<std::size_t>(k)];
}

double ChebSeries::operator()(double x) const { return clenshaw(*this, x); }

double cheb_eval(int k, double x) {
    if (k < 0) throw std::invalid_argument("cheb_eval: negative order");
    check_domain(x);
    if (k == 0) return 1.0;
    double prev = 1.0;
    double cur = x;
    for (int j = 2; j <= k; ++j) {
        const double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

NodeSet cheb_roots(int k) {
    if (k < 1) throw std::invalid_argument("cheb_roots: k must be positive");
    std::vector<double> raw(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        // i = k-1 gives the smallest root, so fill ascending directly.
        const int j = k - 1 - i;
        raw[static_cast<std::size_t>(i)] = std::cos((2.0 * j + 1.0) * kPi / (2.0 * k));
    }
    return NodeSet{symmetrized(std::move(raw)), NodeKind::roots};
}

NodeSet cheb_extrema(int k) {
    if (k < 1) throw std::invalid_argument("cheb_extrema: k must be positive");
    std::vector<double> raw(static_cast<std::size_t>(k) + 1);
    for (int j = 0; j <= k; ++j) raw[static_cast<std::size_t>(j)] = std::cos((k - j) * kPi / k);
    return NodeSet{symmetrized(std::move(raw)), NodeKind::extrema};
}

ChebSeries fit_at_roots(std::span<const double> samples, int n) {
    if (n < 0) throw std::invalid_argument("fit_at_roots: negative degree");
    if (samples.size() != static_cast<std::size_t>(n) + 1)
        throw std::invalid_argument("fit_at_roots: need exactly n+1 samples");

    const NodeSet nodes = cheb_roots(n + 1);
    const std::size_t m = samples.size();
    // t_prev/t_cur hold T_{j-1}(x_i), T_j(x_i); advanced by the recurrence.
    std::vector<double> t_prev(m, 1.0);
    std::vector<double> t_cur(nodes.points);
    std::vector<double> coeffs(m, 0.0);

    for (int j = 0; j <= n; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < m; ++i) sum += samples[i] * (j == 0 ? 1.0 : t_cur[i]);
        coeffs[static_cast<std::size_t>(j)] = (j == 0 ? 1.0 : 2.0) / (n + 1.0) * sum;
        if (j >= 1) {
            for (std::size_t i = 0; i < m; ++i) {
                const double next = 2.0 * nodes.points[i] * t_cur[i] - t_prev[i];
                t_prev[i] = t_cur[i];
                t_cur[i] = next;
            }
        }
    }
    return ChebSeries(std::move(coeffs));
}

double clenshaw(const ChebSeries& series, double x) {
    check_domain(x);
    const auto& c = series.coeffs();
    if (c.empty()) return 0.0;
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) {
        const double b = c[k] + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b;
    }
    return c[0] + x * b1 - b2;
}

ChebSeries derive_series(const ChebSeries& series) {
    const auto& c = series.coeffs();
    if (c.size() <= 1) return ChebSeries{};
    const std::size_t d = c.size() - 1;
    std::vector<double> b(d + 2, 0.0); // b[d] = b[d+1] = 0
    for (std::size_t k = d; k >= 1; --k) b[k - 1] = b[k + 1] + 2.0 * static_cast<double>(k) * c[k];
    b[0] *= 0.5;
    b.resize(d);
    return ChebSeries(std::move(b));
}

double series_sup_norm(const ChebSeries& series, int grid_size) {
    if (grid_size < 2) throw std::invalid_argument("series_sup_norm: grid_size must be >= 2");
    if (series.is_zero()) return 0.0;

    const NodeSet grid = cheb_extrema(grid_size - 1);
    const auto& xs = grid.points;
    std::vector<double> vals(xs.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        vals[i] = std::fabs(clenshaw(series, xs[i]));
        sup = std::max(sup, vals[i]);
    }

    auto abs_eval = [&series](double x) { return std::fabs(clenshaw(series, x)); };
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        if (vals[i] > vals[i - 1] && vals[i] > vals[i + 1]) {
            const Extremum e = parabolic_max(abs_eval, xs[i - 1], xs[i], xs[i + 1], 1e-10);
            sup = std::max(sup, e.value);
        }
    }
    return sup;
}

ChebSeries add(const ChebSeries& a, const ChebSeries& b) {
    std::vector<double> out(std::max(a.coeffs().size(), b.coeffs().size()), 0.0);
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
    return ChebSeries(std::move(out));
}

ChebSeries scale(const ChebSeries& s, double factor) {
    std::vector<double> out = s.coeffs();
    for (double& c : out) c *= factor;
    return ChebSeries(std::move(out));
}

std::vector<double> to_monomial(const ChebSeries& series) {
    const auto& c = series.coeffs();
    if (c.empty()) return {};
    const std::size_t d = c.size() - 1;
    std::vector<double> acc(d + 1, 0.0);
    // Walk T_0, T_1, ... via the recurrence on monomial coefficient vectors.
    std::vector<double> prev(d + 1, 0.0), cur(d + 1, 0.0), next(d + 1, 0.0);
    prev[0] = 1.0; // T_0
    acc[0] = c[0];
    if (d >= 1) {
        cur[1] = 1.0; // T_1
        for (std::size_t k = 1; k <= d; ++k) {
            for (std::size_t j = 0; j <= d; ++j) acc[j] += c[k] * cur[j];
            if (k == d) break;
            std::fill(next.begin(), next.end(), 0.0);
            for (std::size_t j = 0; j + 1 <= d; ++j) next[j + 1] = 2.0 * cur[j];
            for (std::size_t j = 0; j <= d; ++j) next[j] -= prev[j];
            prev = cur;
            cur = next;
        }
    }
    return acc;
}

ChebSeries fit_through_points(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("fit_through_points: need matching nonempty node/value lists");
    const std::size_t m = xs.size();
    std::vector<double> a(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) a[i * m + j] = cheb_eval(static_cast<int>(j), xs[i]);
    std::vector<double> rhs(ys.begin(), ys.end());
    return ChebSeries(solve_dense(std::move(a), std::move(rhs)));
}

} // namespace saturex
