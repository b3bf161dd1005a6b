#include "saturex/remez.hpp"

#include "saturex/errors.hpp"
#include "saturex/linsolve.hpp"
#include "saturex/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace saturex {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Residuals below 1e-13 * (1 + scale) are treated as exact zero: the function
// is already a polynomial of the requested degree and iterating would only
// chase rounding noise.
double degenerate_floor(double scale) { return 1e-13 * (1.0 + scale); }

double function_scale(const ExprAst& f) {
    const NodeSet grid = cheb_extrema(511);
    double s = 0.0;
    for (double x : grid.points) s = std::max(s, std::fabs(eval_scalar(f, x)));
    return s;
}

double residual_at(const ExprAst& f, const ChebSeries& p, double x) {
    return eval_scalar(f, x) - p(x);
}

LevelledSolution solve_on_points(const ExprAst& f, std::span<const double> pts, int n) {
    const int m = n + 2;
    std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0);
    std::vector<double> b(m);
    for (int i = 0; i < m; ++i) {
        const double x = pts[static_cast<std::size_t>(i)];
        double* row = a.data() + static_cast<std::size_t>(i) * m;
        row[0] = 1.0;
        double t_prev = 1.0, t_cur = x;
        for (int j = 1; j <= n; ++j) {
            row[j] = t_cur;
            const double t_next = 2.0 * x * t_cur - t_prev;
            t_prev = t_cur;
            t_cur = t_next;
        }
        row[n + 1] = (i % 2 == 0) ? 1.0 : -1.0;
        b[static_cast<std::size_t>(i)] = eval_scalar(f, x);
    }
    std::vector<double> sol = solve_dense(std::move(a), std::move(b));
    const double signed_lambda = sol[static_cast<std::size_t>(n) + 1];
    sol.resize(static_cast<std::size_t>(n) + 1);

    LevelledSolution out;
    out.poly = ChebSeries(std::move(sol));
    out.sign = signed_lambda < 0.0 ? -1 : 1;
    out.lambda = std::fabs(signed_lambda);
    return out;
}

// Indices of an alternating-sign subset of target size: collapse sign runs
// keeping the largest |r| per run, then trim weak points pairwise so the
// alternation and a global maximum survive. Empty when no such subset exists.
std::vector<std::size_t> alternating_subset(std::span<const double> rs, std::size_t target) {
    std::vector<std::size_t> alt;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (rs[i] == 0.0) continue;
        const bool positive = rs[i] > 0.0;
        if (!alt.empty() && (rs[alt.back()] > 0.0) == positive) {
            if (std::fabs(rs[i]) > std::fabs(rs[alt.back()])) alt.back() = i;
        } else {
            alt.push_back(i);
        }
    }
    if (alt.size() < target) return {};
    if ((alt.size() - target) % 2 == 1) {
        if (std::fabs(rs[alt.front()]) <= std::fabs(rs[alt.back()])) alt.erase(alt.begin());
        else alt.pop_back();
    }
    while (alt.size() > target) {
        // Drop the adjacent pair with the smallest larger-|r| member; a pair
        // containing the global maximum can never be that argmin.
        std::size_t best = 0;
        double best_height = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < alt.size(); ++i) {
            const double h = std::max(std::fabs(rs[alt[i]]), std::fabs(rs[alt[i + 1]]));
            if (h < best_height) {
                best_height = h;
                best = i;
            }
        }
        alt.erase(alt.begin() + static_cast<std::ptrdiff_t>(best),
                  alt.begin() + static_cast<std::ptrdiff_t>(best) + 2);
    }
    return alt;
}

// Classic single exchange: swap the worst extremum in for the one reference
// point it can replace without breaking the sign alternation.
std::vector<double> single_exchange(const std::vector<double>& pts, std::span<const double> pr,
                                    double x_star, double r_star) {
    std::vector<double> out = pts;
    if (r_star == 0.0) return out;
    const bool positive = r_star > 0.0;
    if (x_star <= pts.front()) {
        if ((pr.front() > 0.0) == positive) out.front() = x_star;
        else {
            out.pop_back();
            out.insert(out.begin(), x_star);
        }
        return out;
    }
    if (x_star >= pts.back()) {
        if ((pr.back() > 0.0) == positive) out.back() = x_star;
        else {
            out.erase(out.begin());
            out.push_back(x_star);
        }
        return out;
    }
    const auto it = std::upper_bound(pts.begin(), pts.end(), x_star);
    const std::size_t hi = static_cast<std::size_t>(it - pts.begin());
    const std::size_t lo = hi - 1;
    if ((pr[lo] > 0.0) == positive) out[lo] = x_star;
    else out[hi] = x_star;
    return out;
}

// The same exchange over grid indices, for the grid-restricted solve. `r`
// holds the residual on the whole grid, so reference signs are looked up
// directly instead of being passed alongside.
std::vector<std::size_t> single_exchange_at(const std::vector<std::size_t>& ref,
                                            std::span<const double> r, std::size_t worst) {
    std::vector<std::size_t> out = ref;
    if (r[worst] == 0.0) return out;
    const bool positive = r[worst] > 0.0;
    if (worst <= ref.front()) {
        if ((r[ref.front()] > 0.0) == positive) out.front() = worst;
        else {
            out.pop_back();
            out.insert(out.begin(), worst);
        }
        return out;
    }
    if (worst >= ref.back()) {
        if ((r[ref.back()] > 0.0) == positive) out.back() = worst;
        else {
            out.erase(out.begin());
            out.push_back(worst);
        }
        return out;
    }
    const auto it = std::upper_bound(ref.begin(), ref.end(), worst);
    const std::size_t hi = static_cast<std::size_t>(it - ref.begin());
    const std::size_t lo = hi - 1;
    if ((r[ref[lo]] > 0.0) == positive) out[lo] = worst;
    else out[hi] = worst;
    return out;
}

} // namespace

ReferenceSet initial_reference(int n) {
    if (n < 0) throw std::invalid_argument("initial_reference: negative degree");
    return ReferenceSet{cheb_extrema(n + 1).points};
}

LevelledSolution solve_levelled(const ExprAst& f, const ReferenceSet& reference, int n) {
    if (n < 0) throw std::invalid_argument("solve_levelled: negative degree");
    const auto& pts = reference.points;
    if (static_cast<int>(pts.size()) != n + 2)
        throw std::invalid_argument("solve_levelled: reference must hold exactly n+2 points");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!(std::fabs(pts[i]) <= 1.0 + 1e-12))
            throw std::domain_error("solve_levelled: reference point outside [-1,1]");
        if (i > 0 && !(pts[i - 1] < pts[i]))
            throw std::invalid_argument("solve_levelled: reference points must be strictly increasing");
    }
    return solve_on_points(f, pts, n);
}

NodeSet find_residual_extrema(const ExprAst& f, const ChebSeries& p, int grid_size) {
    if (grid_size < 8 * (p.degree() + 2))
        throw std::invalid_argument("find_residual_extrema: grid_size below 8*(degree+2)");
    const NodeSet grid = cheb_extrema(grid_size - 1);
    const std::size_t m = grid.points.size();

    std::vector<double> r(m);
    double scale = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double fx = eval_scalar(f, grid.points[i]);
        r[i] = fx - p(grid.points[i]);
        scale = std::max({scale, std::fabs(fx), std::fabs(r[i])});
    }
    auto rfun = [&](double x) { return residual_at(f, p, x); };

    NodeSet out;
    out.kind = NodeKind::custom;
    out.points.push_back(-1.0);
    // Only refine extrema that stand out from evaluation noise; a flat
    // (near-zero) residual contributes endpoints only. Symmetric residuals
    // sample the peak as a tied pair of mirrored points, so a candidate only
    // needs to rise strictly on the left and not keep rising on the right.
    const double prominence = 4.0 * kEps * std::max(scale, 1e-300);
    for (std::size_t i = 1; i + 1 < m; ++i) {
        if (r[i] > r[i - 1] + prominence && r[i] + prominence >= r[i + 1]) {
            out.points.push_back(
                golden_section_max(rfun, grid.points[i - 1], grid.points[i + 1], 1e-13).x);
        } else if (r[i] + prominence < r[i - 1] && r[i] <= r[i + 1] + prominence) {
            out.points.push_back(
                golden_section_min(rfun, grid.points[i - 1], grid.points[i + 1], 1e-13).x);
        }
    }
    out.points.push_back(1.0);
    std::sort(out.points.begin(), out.points.end());
    out.points.erase(std::unique(out.points.begin(), out.points.end(),
                                 [](double a, double b) { return b - a < 5e-13; }),
                     out.points.end());
    return out;
}

ExchangeOutcome exchange(const ReferenceSet& reference, const NodeSet& extrema,
                         std::span<const double> residuals) {
    if (extrema.points.empty()) throw std::invalid_argument("exchange: empty extremum set");
    if (extrema.points.size() != residuals.size())
        throw std::invalid_argument("exchange: extrema/residual size mismatch");

    const std::vector<std::size_t> keep = alternating_subset(residuals, reference.points.size());
    if (keep.empty()) return {reference, true};

    ExchangeOutcome out;
    out.reference.points.reserve(keep.size());
    for (std::size_t i : keep) out.reference.points.push_back(extrema.points[i]);
    return out;
}

RemezResult remez(const ExprAst& f, int n, const RemezOptions& options) {
    if (n < 0) throw std::invalid_argument("remez: negative degree");
    if (!(options.tol > 0.0)) throw std::invalid_argument("remez: tol must be positive");
    if (options.max_iter < 1) throw std::invalid_argument("remez: max_iter must be positive");

    const double scale = function_scale(f);
    ReferenceSet ref = initial_reference(n);

    RemezResult res;
    for (int iter = 1; iter <= options.max_iter; ++iter) {
        const LevelledSolution sol = solve_levelled(f, ref, n);
        const NodeSet extrema = find_residual_extrema(f, sol.poly, options.residual_grid);

        std::vector<double> rvals(extrema.points.size());
        double sup = 0.0;
        for (std::size_t i = 0; i < extrema.points.size(); ++i) {
            rvals[i] = residual_at(f, sol.poly, extrema.points[i]);
            sup = std::max(sup, std::fabs(rvals[i]));
        }
        double min_ref = std::numeric_limits<double>::infinity();
        for (double y : ref.points)
            min_ref = std::min(min_ref, std::fabs(residual_at(f, sol.poly, y)));

        res.trace.push_back({sol.lambda, sup, min_ref});
        res.poly = sol.poly;
        res.levelled_error = sol.lambda;
        res.reference = ref;
        res.sign = sol.sign;
        res.iterations = iter;

        if (sup < degenerate_floor(scale)) {
            res.levelled_error = 0.0;
            res.converged = true;
            res.degenerate = true;
            return res;
        }
        // Relative gap plus an absolute floor: once the gap is at the level of
        // residual-evaluation noise there is nothing left to exchange for.
        const double gap = sup - sol.lambda;
        if (gap <= options.tol * std::max(sol.lambda, 1e-300) + 32.0 * kEps * std::max(1.0, scale)) {
            res.converged = true;
            return res;
        }

        ExchangeOutcome next = exchange(ref, extrema, rvals);
        if (!next.stalled && next.reference.points != ref.points) {
            ref = std::move(next.reference);
            continue;
        }
        // Multi-point exchange cannot move: fall back to the classic single
        // exchange with the worst extremum before giving up.
        std::size_t worst = 0;
        for (std::size_t i = 1; i < rvals.size(); ++i)
            if (std::fabs(rvals[i]) > std::fabs(rvals[worst])) worst = i;
        std::vector<double> ref_res(ref.points.size());
        for (std::size_t i = 0; i < ref.points.size(); ++i)
            ref_res[i] = residual_at(f, sol.poly, ref.points[i]);
        std::vector<double> moved =
            single_exchange(ref.points, ref_res, extrema.points[worst], rvals[worst]);
        if (moved == ref.points) return res; // converged flag stays false
        ref.points = std::move(moved);
    }
    return res;
}

EquioscillationCertificate certify_equioscillation(const ExprAst& f, const RemezResult& result) {
    if (!result.converged)
        throw std::invalid_argument("certify_equioscillation: result is not converged");

    const NodeSet scan = find_residual_extrema(f, result.poly, 4096);
    double sup = 0.0;
    for (double x : scan.points) sup = std::max(sup, std::fabs(residual_at(f, result.poly, x)));

    EquioscillationCertificate cert;
    cert.points = result.reference;
    cert.sign = result.sign;
    cert.sup_norm = sup;

    if (result.degenerate || sup < degenerate_floor(function_scale(f))) {
        cert.degenerate = true;
        cert.max_deviation = sup;
        return cert;
    }

    if (std::fabs(result.levelled_error - sup) > 1e-8 * std::max(1.0, sup))
        throw CertificationError(
            "certify_equioscillation: claimed levelled error disagrees with the residual");

    double dev = 0.0;
    for (std::size_t j = 0; j < result.reference.points.size(); ++j) {
        const double r = residual_at(f, result.poly, result.reference.points[j]);
        dev = std::max(dev, std::fabs(sup - std::fabs(r)));
        const double want = (j % 2 == 0 ? 1.0 : -1.0) * cert.sign;
        if (r * want <= 0.0)
            throw CertificationError("certify_equioscillation: residual signs do not alternate");
    }
    cert.max_deviation = dev;
    if (dev > 1e-8 * std::max(1.0, sup))
        throw CertificationError("certify_equioscillation: deviation from equioscillation too large");
    return cert;
}

GridMinimax grid_lp_minimax_oracle(const ExprAst& f, int n, int grid_size) {
    if (n < 0) throw std::invalid_argument("grid_lp_minimax_oracle: negative degree");
    if (grid_size < 4 * (n + 2))
        throw std::invalid_argument("grid_lp_minimax_oracle: grid_size below 4*(n+2)");

    std::vector<double> gx(static_cast<std::size_t>(grid_size));
    std::vector<double> gf(static_cast<std::size_t>(grid_size));
    double scale = 0.0;
    for (int i = 0; i < grid_size; ++i) {
        gx[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / (grid_size - 1);
        gf[static_cast<std::size_t>(i)] = eval_scalar(f, gx[static_cast<std::size_t>(i)]);
        scale = std::max(scale, std::fabs(gf[static_cast<std::size_t>(i)]));
    }

    // Seed with the grid points nearest the Chebyshev extrema, kept strictly
    // increasing and inside the grid.
    const std::size_t m = static_cast<std::size_t>(n) + 2;
    std::vector<std::size_t> ref(m);
    const NodeSet seed = cheb_extrema(n + 1);
    long prev = -1;
    for (std::size_t i = 0; i < m; ++i) {
        long idx = std::lround((seed.points[i] + 1.0) * 0.5 * (grid_size - 1));
        idx = std::max(idx, prev + 1);
        idx = std::min(idx, static_cast<long>(grid_size) - 1 - static_cast<long>(m - 1 - i));
        ref[i] = static_cast<std::size_t>(idx);
        prev = idx;
    }

    LevelledSolution sol;
    std::vector<double> pts(m), r(static_cast<std::size_t>(grid_size));
    for (int iter = 0; iter < 500; ++iter) {
        for (std::size_t i = 0; i < m; ++i) pts[i] = gx[ref[i]];
        sol = solve_on_points(f, pts, n);

        double sup = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = gf[i] - sol.poly(gx[i]);
            sup = std::max(sup, std::fabs(r[i]));
        }
        if (sup < degenerate_floor(scale)) break;
        if (sup - sol.lambda <= 1e-15 * std::max(1.0, sup)) break;

        std::vector<std::size_t> next = alternating_subset(r, m);
        if (next.empty()) {
            // Symmetric targets can interpolate the seed reference exactly,
            // leaving too few sign runs for a full exchange; swapping in the
            // worst grid point breaks the symmetry and restarts progress.
            std::size_t worst = 0;
            for (std::size_t i = 1; i < r.size(); ++i)
                if (std::fabs(r[i]) > std::fabs(r[worst])) worst = i;
            next = single_exchange_at(ref, r, worst);
        }
        if (next == ref) break;
        ref = next;
    }
    return {sol.poly, sol.lambda};
}

} // namespace saturex
