#include "saturex/saturation.hpp"

#include "saturex/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace saturex {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// 2^n (n+1)!; ldexp keeps the power-of-two scaling exact.
double bound_factor(int n) { return std::ldexp(factorial(n + 1), n); }

// x / (2^n (n+1)!), in the log domain beyond the documented degree range.
double scaled_bound(double x, int n) {
    if (x == 0.0) return 0.0;
    if (n <= 20) return x / bound_factor(n);
    return std::exp(std::log(x) - n * std::numbers::ln2 - std::lgamma(n + 2.0));
}

void check_bound_args(const DerivativeRange& seminorm, int n, const char* who) {
    if (n < 0) throw std::invalid_argument(std::string(who) + ": negative degree");
    if (seminorm.order != n + 1)
        throw std::invalid_argument(std::string(who) + ": seminorm order must be n+1");
}

// Strictly increasing draws in [-0.95, 0.95] with a minimum gap, so that the
// downstream linear algebra stays well conditioned. Deterministic per seed.
std::vector<double> separated_points(std::mt19937_64& rng, int count, double min_gap) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> pts(static_cast<std::size_t>(count));
    for (;;) {
        for (double& p : pts) p = 0.95 * unit(rng);
        std::sort(pts.begin(), pts.end());
        bool ok = true;
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (pts[i] - pts[i - 1] < min_gap) ok = false;
        if (ok) return pts;
    }
}

ExprAst node_product(std::span<const double> zeros) {
    ExprAst prod;
    for (double z : zeros) {
        ExprAst factor = ast::sub(ast::var(), ast::constant(z));
        prod = prod ? ast::mul(std::move(prod), std::move(factor)) : std::move(factor);
    }
    return prod;
}

} // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::saturating: return "saturating";
        case Verdict::strict: return "strict";
        case Verdict::degenerate: return "degenerate";
    }
    return "unknown";
}

double upper_bound(const DerivativeRange& seminorm, int n) {
    check_bound_args(seminorm, n, "upper_bound");
    return scaled_bound(seminorm.sup, n);
}

double lower_bound(const DerivativeRange& seminorm, int n) {
    check_bound_args(seminorm, n, "lower_bound");
    return scaled_bound(seminorm.min_abs, n);
}

std::optional<double> saturation_ratio(double e_n, const DerivativeRange& seminorm, int n) {
    check_bound_args(seminorm, n, "saturation_ratio");
    if (e_n < 0.0) throw std::invalid_argument("saturation_ratio: negative levelled error");
    if (seminorm.sup < 1e-13) return std::nullopt;
    if (e_n == 0.0) return 0.0;
    if (n <= 20) return e_n * bound_factor(n) / seminorm.sup;
    return std::exp(std::log(e_n) + n * std::numbers::ln2 + std::lgamma(n + 2.0) -
                    std::log(seminorm.sup));
}

SaturationReport theorem_verdict(const ExprAst& f, int n, const VerdictOptions& options) {
    if (n < 0) throw std::invalid_argument("theorem_verdict: negative degree");
    if (!(options.verdict_tol > 0.0) || options.verdict_tol > 0.1)
        throw std::invalid_argument("theorem_verdict: verdict_tol must lie in (0, 0.1]");

    const RemezResult rr = remez(f, n, options.remez);
    if (!rr.converged)
        throw ConvergenceFailure("theorem_verdict: minimax solver did not converge");
    const DerivativeRange sem = derivative_range(f, n + 1, options.derivative_grid);

    SaturationReport rep;
    rep.n = n;
    rep.e_n = rr.levelled_error;
    rep.upper = upper_bound(sem, n);
    rep.lower = lower_bound(sem, n);
    rep.seminorm = sem;
    rep.tolerance = options.verdict_tol;

    const std::optional<double> ratio = saturation_ratio(rr.levelled_error, sem, n);
    if (!ratio) {
        rep.ratio = 0.0;
        rep.verdict = Verdict::degenerate;
    } else {
        rep.ratio = *ratio;
        rep.verdict =
            std::fabs(*ratio - 1.0) <= options.verdict_tol ? Verdict::saturating : Verdict::strict;
    }

    // The theorem makes the verdict decidable from the expression's
    // polynomial structure alone; disagreement means a defect, not bad input.
    const PolyInfo info = poly_detect(f);
    const bool expect_saturating = info.is_polynomial && info.degree == n + 1;
    if ((rep.verdict == Verdict::saturating) != expect_saturating)
        throw InternalInconsistency("theorem_verdict: verdict disagrees with polynomial structure");
    if (info.is_polynomial && info.degree <= n && rep.verdict != Verdict::degenerate)
        throw InternalInconsistency("theorem_verdict: polynomial of degree <= n must be degenerate");
    return rep;
}

Prop2Report prop2_containment(const ExprAst& f, int n, int sample_count) {
    if (n < 0) throw std::invalid_argument("prop2_containment: negative degree");
    if (sample_count < 16)
        throw std::invalid_argument("prop2_containment: sample_count must be >= 16");

    const NodeSet roots = cheb_roots(n + 1);
    std::vector<double> samples(roots.points.size());
    for (std::size_t i = 0; i < roots.points.size(); ++i)
        samples[i] = eval_scalar(f, roots.points[i]);
    const ChebSeries q = fit_at_roots(samples, n);

    const SignedRange range = signed_derivative_range(f, n + 1, 1024);
    const double factor = bound_factor(n);

    Prop2Report rep;
    rep.n = n;
    rep.requested = sample_count;
    rep.lo = range.lo;
    rep.hi = range.hi;
    rep.slack =
        1e-9 * std::max({range.hi - range.lo, std::fabs(range.lo), std::fabs(range.hi)});

    for (int i = 0; i < sample_count; ++i) {
        const double x = -1.0 + 2.0 * i / (sample_count - 1);
        const double t = cheb_eval(n + 1, x);
        if (std::fabs(t) < 0.02) continue;
        bool near_root = false;
        for (double z : roots.points)
            if (std::fabs(x - z) < 1e-3) near_root = true;
        if (near_root) continue;

        const double fx = eval_scalar(f, x);
        double resid = fx - q(x);
        // A residual below rounding noise is an exact zero for the
        // containment question; dividing by T_{n+1} would only amplify noise.
        if (std::fabs(resid) <= 32.0 * kEps * (1.0 + std::fabs(fx))) resid = 0.0;

        const double ratio = resid * factor / t;
        const double viol =
            std::max({0.0, (rep.lo - rep.slack) - ratio, ratio - (rep.hi + rep.slack)});
        rep.worst_violation = std::max(rep.worst_violation, viol);
        ++rep.checked;
    }
    return rep;
}

Lemma1Report lemma1_contrapositive_check(const ExprAst& h, std::span<const double> zeros, int m,
                                         int grid_size) {
    if (m < 1) throw std::invalid_argument("lemma1_contrapositive_check: m must be >= 1");
    if (static_cast<int>(zeros.size()) != m + 1)
        throw std::invalid_argument("lemma1_contrapositive_check: need exactly m+1 zeros");
    for (std::size_t i = 1; i < zeros.size(); ++i)
        if (!(zeros[i - 1] < zeros[i]))
            throw std::invalid_argument("lemma1_contrapositive_check: zeros must be increasing");
    if (grid_size < 64)
        throw std::invalid_argument("lemma1_contrapositive_check: grid_size must be >= 64");
    for (double z : zeros)
        if (std::fabs(eval_scalar(h, z)) > 1e-10)
            throw std::invalid_argument(
                "lemma1_contrapositive_check: h does not vanish at a claimed zero");

    const double a = zeros.front(), b = zeros.back();
    Lemma1Report rep;
    rep.m = m;
    rep.max_value = -std::numeric_limits<double>::infinity();
    rep.min_value = std::numeric_limits<double>::infinity();
    double h_sup = 0.0;
    for (int i = 0; i < grid_size; ++i) {
        const double x = a + (b - a) * i / (grid_size - 1);
        const Jet jet = eval_jet(h, x, m);
        h_sup = std::max(h_sup, std::fabs(jet.taylor[0]));
        const double d = factorial(m) * jet.taylor[static_cast<std::size_t>(m)];
        rep.grid_sup = std::max(rep.grid_sup, std::fabs(d));
        rep.max_value = std::max(rep.max_value, d);
        rep.min_value = std::min(rep.min_value, d);
    }
    if (h_sup <= 1e-8)
        throw std::invalid_argument(
            "lemma1_contrapositive_check: h is numerically zero on [z_0, z_m]");

    rep.tol = 1e-10 * rep.grid_sup;
    rep.both_signs = rep.max_value > rep.tol && rep.min_value < -rep.tol;
    return rep;
}

LemmaTwoInstance make_lemma2_instance(std::span<const double> nodes,
                                      std::span<const double> values) {
    if (nodes.size() != values.size())
        throw std::invalid_argument("make_lemma2_instance: nodes/values size mismatch");
    if (nodes.size() < 2)
        throw std::invalid_argument("make_lemma2_instance: need at least two nodes");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i - 1] < nodes[i]))
            throw std::invalid_argument("make_lemma2_instance: nodes must be increasing");

    LemmaTwoInstance inst;
    inst.m = static_cast<int>(nodes.size()) - 1;
    inst.nodes.assign(nodes.begin(), nodes.end());
    inst.values.assign(values.begin(), values.end());
    inst.interpolant = fit_through_points(nodes, values);

    double value_scale = 1.0;
    for (double v : values) value_scale = std::max(value_scale, std::fabs(v));
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (std::fabs(inst.interpolant(nodes[i]) - values[i]) > 1e-10 * value_scale)
            throw InternalInconsistency("make_lemma2_instance: interpolant misses a data point");

    const std::vector<double> mono = to_monomial(inst.interpolant);
    const double lead =
        static_cast<int>(mono.size()) > inst.m ? mono[static_cast<std::size_t>(inst.m)] : 0.0;
    inst.interpolant_seminorm = factorial(inst.m) * std::fabs(lead);
    return inst;
}

Lemma2Report lemma2_minimality_check(const LemmaTwoInstance& instance, int perturbation_count,
                                     std::span<const double> epsilon_grid, std::uint64_t seed) {
    if (perturbation_count < 1)
        throw std::invalid_argument("lemma2_minimality_check: perturbation_count must be >= 1");
    const std::span<const double> eps =
        epsilon_grid.empty() ? std::span<const double>(kDefaultEpsilonGrid) : epsilon_grid;

    const ExprAst p_ast = ast::polynomial(to_monomial(instance.interpolant));
    const ExprAst vanish = node_product(instance.nodes);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    Lemma2Report rep;
    rep.m = instance.m;
    rep.reference = instance.interpolant_seminorm;
    rep.min_seminorm = std::numeric_limits<double>::infinity();

    int tested = 0;
    for (int wi = 0; tested < perturbation_count; ++wi) {
        // Alternate the perturbation family: a cubic-or-lower random
        // polynomial, then a bounded-frequency sinusoid.
        ExprAst w;
        if (wi % 2 == 0) {
            double coeffs[4];
            for (double& c : coeffs) c = unit(rng);
            w = ast::polynomial(coeffs);
        } else {
            const double a = 3.0 * unit(rng);
            const double b = std::numbers::pi * unit(rng);
            w = ast::sin(ast::add(ast::mul(ast::constant(a), ast::var()), ast::constant(b)));
        }
        for (double e : eps) {
            if (tested == perturbation_count) break;
            const ExprAst g =
                ast::add(p_ast, ast::mul(ast::constant(e), ast::mul(w, vanish)));
            const double sem = derivative_range(g, instance.m, 1024).sup;
            rep.min_seminorm = std::min(rep.min_seminorm, sem);
            ++tested;
        }
    }
    rep.perturbations = tested;
    rep.worst_deficit = std::max(0.0, rep.reference - rep.min_seminorm);
    rep.ok = rep.worst_deficit <= 1e-9;
    return rep;
}

Lemma1Instance make_lemma1_instance(int m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("make_lemma1_instance: m must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    Lemma1Instance inst;
    inst.m = m;
    inst.zeros = separated_points(rng, m + 1, 0.15);

    // Extra factor of degree 0..2 with a leading coefficient bounded away
    // from zero, so deg h lands in m+1..m+3 and h is nowhere tiny overall.
    std::uniform_int_distribution<int> extra(0, 2);
    const int d = extra(rng);
    std::vector<double> wcoeffs(static_cast<std::size_t>(d) + 1);
    do {
        for (double& c : wcoeffs) c = unit(rng);
    } while (std::fabs(wcoeffs.back()) < 0.3);

    inst.h = ast::mul(ast::polynomial(wcoeffs), node_product(inst.zeros));
    return inst;
}

LemmaTwoInstance make_random_lemma2_instance(int m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("make_random_lemma2_instance: m must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    const std::vector<double> nodes = separated_points(rng, m + 1, 0.1);
    std::vector<double> values(nodes.size());
    for (double& v : values) v = unit(rng);
    return make_lemma2_instance(nodes, values);
}

LemmaSuiteReport run_lemma_suites(std::uint64_t seed, int lemma1_count, int lemma2_count,
                                  int perturbation_count) {
    if (lemma1_count < 0 || lemma2_count < 1)
        throw std::invalid_argument("run_lemma_suites: need lemma1_count >= 0, lemma2_count >= 1");

    LemmaSuiteReport rep;
    rep.lemma2_perturbations = perturbation_count;

    for (int i = 0; i < lemma1_count; ++i) {
        const int m = 1 + (i % 4);
        const Lemma1Instance inst = make_lemma1_instance(m, seed * 1000003ull + i);
        const Lemma1Report r = lemma1_contrapositive_check(inst.h, inst.zeros, m, 2048);
        if (!r.both_signs) ++rep.lemma1_failures;
        ++rep.lemma1_instances;
    }

    for (int i = 0; i < lemma2_count; ++i) {
        LemmaTwoInstance inst;
        if (i == 0) {
            // T_3 on its own extrema: the instance whose seminorm realizes
            // 2^2 * 3! = 24 exactly.
            const NodeSet ext = cheb_extrema(3);
            std::vector<double> vals(ext.points.size());
            for (std::size_t j = 0; j < ext.points.size(); ++j)
                vals[j] = cheb_eval(3, ext.points[j]);
            inst = make_lemma2_instance(ext.points, vals);
        } else {
            inst = make_random_lemma2_instance(1 + ((i - 1) % 4), seed * 7777713ull + i);
        }
        const Lemma2Report r =
            lemma2_minimality_check(inst, perturbation_count, {}, seed * 39916801ull + i);
        if (!r.ok) ++rep.lemma2_failures;
        rep.lemma2_worst_deficit = std::max(rep.lemma2_worst_deficit, r.worst_deficit);
        ++rep.lemma2_instances;
    }
    return rep;
}

} // namespace saturex
