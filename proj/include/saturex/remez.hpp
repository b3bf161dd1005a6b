#pragma once

// Best (minimax) polynomial approximation on [-1,1] by multi-point Remez
// exchange, with a-posteriori equioscillation certification and an
// independent grid-restricted oracle.

#include "saturex/chebcore.hpp"
#include "saturex/exprlang.hpp"

#include <span>
#include <vector>

namespace saturex {

// Strictly increasing trial points y_0 < ... < y_{n+1} in [-1,1] on which the
// levelled system is solved; always exactly n+2 points for degree n.
struct ReferenceSet {
    std::vector<double> points;
};

struct IterationStats {
    double lambda = 0.0;               // levelled error on the reference
    double sup_norm = 0.0;             // sup |f - p| found by the residual scan
    double min_ref_abs_residual = 0.0; // de la Vallee Poussin lower witness
};

struct RemezResult {
    ChebSeries poly;
    double levelled_error = 0.0; // equals E_n(f) within tol when converged
    ReferenceSet reference;
    int sign = 1; // residual at reference point i is sign * (-1)^i * levelled_error
    int iterations = 0;
    bool converged = false;
    bool degenerate = false; // f was already (numerically) a polynomial of degree <= n
    std::vector<IterationStats> trace;
};

struct EquioscillationCertificate {
    ReferenceSet points;
    int sign = 1;
    double sup_norm = 0.0;
    double max_deviation = 0.0; // worst | sup_norm - |residual(y_j)| | over the points
    bool degenerate = false;
};

struct LevelledSolution {
    ChebSeries poly;
    double lambda = 0.0;
    int sign = 1;
};

struct ExchangeOutcome {
    ReferenceSet reference;
    bool stalled = false;
};

struct RemezOptions {
    double tol = 1e-12; // relative gap (sup_norm - lambda)/lambda declared converged
    int max_iter = 50;
    int residual_grid = 2048; // scan density for find_residual_extrema
};

// Chebyshev extrema of T_{n+1}: the canonical starting reference, and already
// the exact answer whenever f is a polynomial of degree n+1.
ReferenceSet initial_reference(int n);

// Solve the (n+2)x(n+2) system p(y_i) + (-1)^i * lambda = f(y_i) for the
// Chebyshev coefficients of p and the signed level. The level's sign is
// returned separately so that lambda >= 0.
LevelledSolution solve_levelled(const ExprAst& f, const ReferenceSet& reference, int n);

// All local extrema of the residual f - p on [-1,1], endpoints included,
// interior ones refined by golden section to 1e-13 in x. Ascending.
// grid_size must be at least 8 * (p.degree() + 2).
NodeSet find_residual_extrema(const ExprAst& f, const ChebSeries& p, int grid_size);

// Multi-point exchange: keep |reference| of the extrema with strictly
// alternating residual signs, including a point of maximal |residual|.
// Stalls (returns the old reference) when no such subset exists.
ExchangeOutcome exchange(const ReferenceSet& reference, const NodeSet& extrema,
                         std::span<const double> residuals);

// Iterate solve_levelled / find_residual_extrema / exchange until the gap
// sup_norm - lambda is below tol * lambda (plus a machine-noise floor) or the
// exchange stalls. Non-convergence is reported via converged = false, not an
// exception.
RemezResult remez(const ExprAst& f, int n, const RemezOptions& options = {});

// Recompute the sup norm on a fresh 4096-point scan and check the alternation
// f(y_j) - p(y_j) = sign * (-1)^j * sup_norm at the result's reference.
// Throws CertificationError when the alternation fails or max_deviation
// exceeds 1e-8 * max(1, sup_norm); requires result.converged.
EquioscillationCertificate certify_equioscillation(const ExprAst& f, const RemezResult& result);

struct GridMinimax {
    ChebSeries poly;
    double lambda = 0.0;
};

// Discrete minimax over a uniform grid by exchange restricted to grid points
// (no continuous refinement), independent of the main solver's scan/refine
// path. lambda is a lower witness: lambda <= E_n(f) <= lambda + O(spacing^2)
// for smooth f. grid_size must be at least 4 * (n + 2).
GridMinimax grid_lp_minimax_oracle(const ExprAst& f, int n, int grid_size);

} // namespace saturex
