#pragma once

// The headline computations: the derivative-based error bounds, the
// saturation ratio with its three-way verdict, the interpolation-residual
// containment check, and executable checks for the two underlying lemmas.

#include "saturex/chebcore.hpp"
#include "saturex/exprlang.hpp"
#include "saturex/jets.hpp"
#include "saturex/remez.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace saturex {

enum class Verdict { saturating, strict, degenerate };

const char* verdict_name(Verdict v);

struct SaturationReport {
    int n = 0;
    double e_n = 0.0;   // levelled error E_n(f) from the solver
    double upper = 0.0; // sup |f^(n+1)| / (2^n (n+1)!)
    double lower = 0.0; // min |f^(n+1)| / (2^n (n+1)!)
    double ratio = 0.0; // E_n 2^n (n+1)! / sup |f^(n+1)|; 0 when degenerate
    Verdict verdict = Verdict::degenerate;
    DerivativeRange seminorm;
    double tolerance = 0.0; // |ratio - 1| threshold used for the verdict
};

// sup |f^(n+1)| / (2^n (n+1)!), the classical upper bound on E_n(f).
// Requires seminorm.order == n+1. Computed in the log domain for n > 20.
double upper_bound(const DerivativeRange& seminorm, int n);

// min |f^(n+1)| / (2^n (n+1)!), the matching lower bound.
double lower_bound(const DerivativeRange& seminorm, int n);

// E_n 2^n (n+1)! / sup |f^(n+1)|; nullopt marks the degenerate case
// sup < 1e-13, where f lies in Pi_n up to tolerance and both sides of the
// defining equation vanish.
std::optional<double> saturation_ratio(double e_n, const DerivativeRange& seminorm, int n);

struct VerdictOptions {
    double verdict_tol = 1e-6; // |ratio - 1| threshold; must lie in (0, 0.1]
    int derivative_grid = 1024;
    RemezOptions remez;
};

// Full pipeline: solver, derivative range at order n+1, bounds, ratio and
// verdict. Cross-checks the verdict against the expression's polynomial
// structure and throws InternalInconsistency on disagreement; throws
// ConvergenceFailure when the solver does not converge.
SaturationReport theorem_verdict(const ExprAst& f, int n, const VerdictOptions& options = {});

struct Prop2Report {
    int n = 0;
    int requested = 0; // sample points before exclusions
    int checked = 0;   // sample points actually tested
    double lo = 0.0;   // signed range of f^(n+1) on [-1,1]
    double hi = 0.0;
    double slack = 0.0;
    double worst_violation = 0.0; // distance outside [lo-slack, hi+slack]; 0 when contained
};

// Checks that (f(x) - q(x)) 2^n (n+1)! / T_{n+1}(x) stays inside the signed
// range of f^(n+1), where q interpolates f at the roots of T_{n+1}. Sample
// points near those roots (radius 1e-3, and |T_{n+1}| < 0.02 where the
// quotient amplifies noise) are excluded.
Prop2Report prop2_containment(const ExprAst& f, int n, int sample_count);

struct Lemma1Report {
    int m = 0;
    double grid_sup = 0.0;  // max |h^(m)| over the scan of [z_0, z_m]
    double max_value = 0.0; // most positive h^(m) sample
    double min_value = 0.0; // most negative h^(m) sample
    double tol = 0.0;       // strict-sign threshold, 1e-10 * grid_sup
    bool both_signs = false;
};

// Contrapositive of the vanishing lemma: a not-identically-zero h with m+1
// zeros must have an m-th derivative taking both strict signs on [z_0, z_m].
// Throws when h does not actually vanish at the claimed zeros or is
// numerically the zero function there.
Lemma1Report lemma1_contrapositive_check(const ExprAst& h, std::span<const double> zeros, int m,
                                         int grid_size);

struct LemmaTwoInstance {
    int m = 0;
    std::vector<double> nodes;  // strictly increasing z_0..z_m in [-1,1]
    std::vector<double> values; // beta_0..beta_m
    ChebSeries interpolant;     // degree <= m through the data
    double interpolant_seminorm = 0.0; // ||p^(m)|| = m! |leading monomial coefficient|
};

LemmaTwoInstance make_lemma2_instance(std::span<const double> nodes,
                                      std::span<const double> values);

inline constexpr double kDefaultEpsilonGrid[] = {-1.0, -0.1, -0.01, -0.001,
                                                 0.001, 0.01,  0.1,  1.0};

struct Lemma2Report {
    int m = 0;
    int perturbations = 0;      // (w, epsilon) pairs tested
    double reference = 0.0;     // interpolant seminorm every perturbation must meet
    double min_seminorm = 0.0;  // smallest ||g^(m)|| seen
    double worst_deficit = 0.0; // max(0, reference - min_seminorm)
    bool ok = false;            // worst_deficit <= 1e-9
};

// Perturbs the interpolant by eps * w * prod(x - z_i) for seeded random
// smooth w (degree-<=3 polynomials and sin(a x + b), |a| <= 3); the product
// factor keeps every perturbation inside the interpolation class exactly.
// perturbation_count counts (w, eps) pairs.
Lemma2Report lemma2_minimality_check(const LemmaTwoInstance& instance, int perturbation_count,
                                     std::span<const double> epsilon_grid, std::uint64_t seed);

struct Lemma1Instance {
    ExprAst h;
    std::vector<double> zeros;
    int m = 0;
};

// Seeded random polynomial of degree m+1..m+3 with m+1 enforced, well
// separated real zeros in [-1,1].
Lemma1Instance make_lemma1_instance(int m, std::uint64_t seed);

// Seeded random interpolation data on separated nodes in [-1,1].
LemmaTwoInstance make_random_lemma2_instance(int m, std::uint64_t seed);

struct LemmaSuiteReport {
    int lemma1_instances = 0;
    int lemma1_failures = 0;
    int lemma2_instances = 0;
    int lemma2_perturbations = 0; // per instance
    int lemma2_failures = 0;
    double lemma2_worst_deficit = 0.0;
};

// The fixed lemma laboratory: lemma1_count seeded instances cycling m through
// {1..4}, and lemma2_count instances where the first is T_3 on its extrema
// (seminorm 24) and the rest are random, again cycling m through {1..4}.
LemmaSuiteReport run_lemma_suites(std::uint64_t seed, int lemma1_count, int lemma2_count,
                                  int perturbation_count);

} // namespace saturex
