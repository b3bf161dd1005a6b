#include "saturex/remez.hpp"

#include "doctest.h"
#include "saturex/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

using namespace saturex;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double residual(const ExprAst& f, const ChebSeries& p, double x) {
    return eval_scalar(f, x) - p(x);
}

// Extrema of T_{n+1}, the expected optimal reference for monic power targets.
std::vector<double> expected_alternation_points(int n) {
    std::vector<double> pts(static_cast<std::size_t>(n) + 2);
    for (int j = 0; j <= n + 1; ++j)
        pts[static_cast<std::size_t>(j)] = -std::cos(j * std::numbers::pi / (n + 1));
    pts.front() = -1.0;
    pts.back() = 1.0;
    return pts;
}

} // namespace

TEST_CASE("hand-solvable minimax problems") {
    SUBCASE("x^2 at degree 1: p = 1/2, error 1/2") {
        const RemezResult r = remez(parse("x^2"), 1);
        REQUIRE(r.converged);
        CHECK(std::fabs(r.levelled_error - 0.5) <= 1e-12);
        CHECK(r.poly.degree() == 0);
        CHECK(std::fabs(r.poly.coeff(0) - 0.5) <= 1e-12);
        CHECK(r.sign == 1); // residual = T_2 / 2 is +1/2 at x = -1
    }
    SUBCASE("x^3 at degree 2: p = 3x/4, error 1/4") {
        const RemezResult r = remez(parse("x^3"), 2);
        REQUIRE(r.converged);
        CHECK(std::fabs(r.levelled_error - 0.25) <= 1e-12);
        CHECK(std::fabs(r.poly.coeff(0)) <= 1e-12);
        CHECK(std::fabs(r.poly.coeff(1) - 0.75) <= 1e-12);
        CHECK(r.poly.degree() <= 1);
        CHECK(r.sign == -1); // residual = T_3 / 4 is -1/4 at x = -1
    }
    SUBCASE("x^4 at degree 3: p = x^2 - 1/8, error 1/8") {
        const RemezResult r = remez(parse("x^4"), 3);
        REQUIRE(r.converged);
        CHECK(std::fabs(r.levelled_error - 0.125) <= 1e-12);
        // x^2 - 1/8 = 3/8 T_0 + 1/2 T_2
        CHECK(std::fabs(r.poly.coeff(0) - 0.375) <= 1e-12);
        CHECK(std::fabs(r.poly.coeff(1)) <= 1e-12);
        CHECK(std::fabs(r.poly.coeff(2) - 0.5) <= 1e-12);
    }
    SUBCASE("the optimal reference for monic powers is the extrema set") {
        for (int n : {1, 2, 5}) {
            const std::string text = "x^" + std::to_string(n + 1);
            const RemezResult r = remez(parse(text), n);
            REQUIRE(r.converged);
            const std::vector<double> want = expected_alternation_points(n);
            REQUIRE(r.reference.points.size() == want.size());
            for (std::size_t j = 0; j < want.size(); ++j)
                CHECK(std::fabs(r.reference.points[j] - want[j]) <= 1e-9);
        }
    }
}

TEST_CASE("solve_levelled") {
    SUBCASE("x^2 on the extrema of T_2 levels at 1/2") {
        ReferenceSet ref;
        ref.points = {-1.0, 0.0, 1.0};
        const LevelledSolution sol = solve_levelled(parse("x^2"), ref, 1);
        CHECK(std::fabs(sol.lambda - 0.5) <= 1e-14);
        CHECK(sol.sign == 1);
        CHECK(sol.poly.degree() == 0);
        CHECK(std::fabs(sol.poly.coeff(0) - 0.5) <= 1e-14);
    }
    SUBCASE("residuals on the reference alternate exactly") {
        ReferenceSet ref;
        ref.points = {-1.0, -0.55, 0.1, 0.62, 1.0};
        const ExprAst f = parse("exp(x)");
        const LevelledSolution sol = solve_levelled(f, ref, 3);
        CHECK(sol.lambda > 0.0);
        for (std::size_t i = 0; i < ref.points.size(); ++i) {
            const double want = sol.sign * ((i % 2 == 0) ? 1.0 : -1.0) * sol.lambda;
            CHECK(std::fabs(residual(f, sol.poly, ref.points[i]) - want) <=
                  1e-12 * std::max(1.0, sol.lambda));
        }
    }
    SUBCASE("input validation") {
        const ExprAst f = parse("x");
        ReferenceSet bad_count;
        bad_count.points = {-1.0, 1.0};
        CHECK_THROWS_AS(solve_levelled(f, bad_count, 1), std::invalid_argument);
        ReferenceSet unsorted;
        unsorted.points = {-1.0, 0.5, 0.0};
        CHECK_THROWS_AS(solve_levelled(f, unsorted, 1), std::invalid_argument);
        ReferenceSet outside;
        outside.points = {-1.5, 0.0, 1.0};
        CHECK_THROWS_AS(solve_levelled(f, outside, 1), std::domain_error);
    }
}

TEST_CASE("find_residual_extrema") {
    SUBCASE("x^2 against its best constant has extrema at -1, 0, 1") {
        const ChebSeries half(std::vector<double>{0.5});
        const NodeSet ext = find_residual_extrema(parse("x^2"), half, 256);
        REQUIRE(ext.points.size() == 3);
        CHECK(std::fabs(ext.points[0] + 1.0) <= 1e-12);
        // The residual is flat to double precision within ~sqrt(eps) of the
        // minimum, so the location is only determined to that scale.
        CHECK(std::fabs(ext.points[1]) <= 2e-8);
        CHECK(std::fabs(ext.points[2] - 1.0) <= 1e-12);
    }
    SUBCASE("an identically zero residual reports just the endpoints") {
        const ChebSeries same(std::vector<double>{0.5, 0.0, 0.5}); // x^2 in the T basis
        const NodeSet ext = find_residual_extrema(parse("x^2"), same, 256);
        REQUIRE(ext.points.size() == 2);
        CHECK(ext.points.front() == -1.0);
        CHECK(ext.points.back() == 1.0);
    }
    SUBCASE("resolves all extrema of an oscillating residual") {
        // residual of x^5 against 0 restricted to T_5's character: use f = T_5
        const ExprAst t5 = parse("16*x^5 - 20*x^3 + 5*x");
        const NodeSet ext = find_residual_extrema(t5, ChebSeries(), 512);
        REQUIRE(ext.points.size() == 6);
        for (std::size_t j = 0; j < 6; ++j) {
            const double want = -std::cos(j * std::numbers::pi / 5.0);
            // Positions resolve to the sqrt(eps)-wide flat window around each
            // peak; the peak values themselves are pinned by the sup tests.
            CHECK(std::fabs(ext.points[j] - want) <= 1e-8);
        }
    }
    SUBCASE("grid must resolve the degree") {
        CHECK_THROWS_AS(find_residual_extrema(parse("x"), ChebSeries(std::vector<double>{0, 0, 0, 1}),
                                              30),
                        std::invalid_argument);
    }
}

TEST_CASE("exchange") {
    const ExprAst t3 = parse("4*x^3 - 3*x");
    SUBCASE("an already optimal reference is a fixed point") {
        // residual of f = T_3 against p = 0 at degree 2
        const NodeSet ext = find_residual_extrema(t3, ChebSeries(), 256);
        REQUIRE(ext.points.size() == 4);
        std::vector<double> res(4);
        for (std::size_t i = 0; i < 4; ++i) res[i] = eval_scalar(t3, ext.points[i]);
        ReferenceSet ref;
        ref.points = ext.points;
        const ExchangeOutcome out = exchange(ref, ext, res);
        CHECK_FALSE(out.stalled);
        REQUIRE(out.reference.points.size() == 4);
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(std::fabs(out.reference.points[i] - ext.points[i]) <= 1e-15);
    }
    SUBCASE("the new reference always contains a maximal extremum") {
        // six alternating extrema feeding a four-point reference
        NodeSet ext;
        ext.points = {-1.0, -0.6, -0.2, 0.2, 0.6, 1.0};
        ext.kind = NodeKind::custom;
        const std::vector<double> res = {0.3, -0.4, 0.9, -0.5, 0.35, -0.3};
        ReferenceSet ref;
        ref.points = {-1.0, -0.3, 0.3, 1.0};
        const ExchangeOutcome out = exchange(ref, ext, res);
        CHECK_FALSE(out.stalled);
        REQUIRE(out.reference.points.size() == 4);
        bool has_peak = false;
        for (double p : out.reference.points) has_peak = has_peak || std::fabs(p + 0.2) < 1e-12;
        CHECK(has_peak); // the |r| = 0.9 point must survive the trim
        for (std::size_t i = 0; i + 1 < 4; ++i)
            CHECK(out.reference.points[i] < out.reference.points[i + 1]);
    }
    SUBCASE("stalls when no alternating subset of the needed size exists") {
        NodeSet ext;
        ext.points = {0.5};
        ext.kind = NodeKind::custom;
        const std::vector<double> res = {0.3};
        ReferenceSet ref;
        ref.points = {-1.0, 0.0, 1.0};
        const ExchangeOutcome out = exchange(ref, ext, res);
        CHECK(out.stalled);
        CHECK(out.reference.points == ref.points);
    }
    SUBCASE("size mismatch between extrema and residuals throws") {
        NodeSet ext;
        ext.points = {-1.0, 1.0};
        const std::vector<double> res = {0.1};
        ReferenceSet ref;
        ref.points = {-1.0, 0.0, 1.0};
        CHECK_THROWS_AS(exchange(ref, ext, res), std::invalid_argument);
    }
}

TEST_CASE("remez on smooth transcendental targets") {
    for (const char* text : {"exp(x)", "sin(2*x)"}) {
        CAPTURE(text);
        const ExprAst f = parse(text);
        for (int n : {2, 4, 6}) {
            const RemezResult r = remez(f, n);
            REQUIRE(r.converged);
            CHECK_FALSE(r.degenerate);
            REQUIRE(r.reference.points.size() == static_cast<std::size_t>(n) + 2);

            // residual alternation on the final reference
            for (std::size_t i = 0; i < r.reference.points.size(); ++i) {
                const double want =
                    r.sign * ((i % 2 == 0) ? 1.0 : -1.0) * r.levelled_error;
                CHECK(std::fabs(residual(f, r.poly, r.reference.points[i]) - want) <=
                      1e-10 * std::max(1.0, r.levelled_error));
            }

            // levelled error sandwiches the scanned sup norm
            double scale = 0.0;
            for (int i = 0; i <= 64; ++i)
                scale = std::max(scale, std::fabs(eval_scalar(f, -1.0 + i / 32.0)));
            const double sup = r.trace.back().sup_norm;
            CHECK(r.levelled_error <= sup + 64 * kEps * std::max(1.0, scale));
            CHECK(sup <= r.levelled_error * (1.0 + 1e-8) + 64 * kEps * std::max(1.0, scale));

            // de la Vallee Poussin: each iteration's lower witness stays below
            // the final level, and the levels are nondecreasing
            for (std::size_t it = 0; it < r.trace.size(); ++it) {
                CHECK(r.trace[it].min_ref_abs_residual <=
                      r.levelled_error * (1.0 + 1e-10) + 32 * kEps * std::max(1.0, scale));
                if (it > 0)
                    CHECK(r.trace[it].lambda >=
                          r.trace[it - 1].lambda - 1e-14 * std::max(1.0, r.trace[it].lambda));
            }
        }
    }
}

TEST_CASE("translation and scaling behave as the theory demands") {
    const int n = 4;
    const ExprAst f = parse("exp(x)");
    const RemezResult base = remez(f, n);
    REQUIRE(base.converged);

    SUBCASE("adding a constant shifts the approximation, not the error") {
        const RemezResult shifted = remez(parse("exp(x) + 1.5"), n);
        REQUIRE(shifted.converged);
        CHECK(std::fabs(shifted.levelled_error - base.levelled_error) <= 1e-11);
        CHECK(std::fabs((shifted.poly.coeff(0) - base.poly.coeff(0)) - 1.5) <= 1e-11);
        for (int k = 1; k <= n; ++k)
            CHECK(std::fabs(shifted.poly.coeff(k) - base.poly.coeff(k)) <= 1e-11);
    }
    SUBCASE("scaling the target scales the error by |alpha|") {
        for (double alpha : {-2.0, 0.5}) {
            const ExprAst scaled = ast::mul(ast::constant(alpha), f);
            const RemezResult r = remez(scaled, n);
            REQUIRE(r.converged);
            CHECK(std::fabs(r.levelled_error - std::fabs(alpha) * base.levelled_error) <=
                  1e-11 * std::max(1.0, base.levelled_error));
        }
    }
}

TEST_CASE("polynomial targets of degree n+1 solve in closed form") {
    // for f in Pi_{n+1}, E_n = |leading monomial coefficient| / 2^n and the
    // first reference is already optimal
    const ExprAst f = parse("0.3*x^4 - x + 2");
    const RemezResult r = remez(f, 3);
    REQUIRE(r.converged);
    CHECK(std::fabs(r.levelled_error - 0.3 / 8.0) <= 1e-9);
    const std::vector<double> want = expected_alternation_points(3);
    for (std::size_t j = 0; j < want.size(); ++j)
        CHECK(std::fabs(r.reference.points[j] - want[j]) <= 1e-9);
}

TEST_CASE("degenerate targets already inside Pi_n") {
    const RemezResult r = remez(parse("x^2 - 1"), 4);
    REQUIRE(r.converged);
    CHECK(r.degenerate);
    CHECK(r.levelled_error == 0.0);
    for (double x : {-1.0, -0.4, 0.3, 1.0})
        CHECK(std::fabs(r.poly(x) - (x * x - 1.0)) <= 1e-12);
    const EquioscillationCertificate cert = certify_equioscillation(parse("x^2 - 1"), r);
    CHECK(cert.degenerate);
    CHECK(cert.sup_norm <= 1e-12);
}

TEST_CASE("certify_equioscillation") {
    const ExprAst f = parse("exp(x)");
    const RemezResult r = remez(f, 4);
    REQUIRE(r.converged);
    SUBCASE("a genuine result certifies cleanly") {
        const EquioscillationCertificate cert = certify_equioscillation(f, r);
        CHECK(cert.points.points.size() == r.reference.points.size());
        CHECK(cert.sign == r.sign);
        CHECK(cert.max_deviation <= 1e-8 * std::max(1.0, cert.sup_norm));
        CHECK(std::fabs(cert.sup_norm - r.levelled_error) <= 1e-8 * std::max(1.0, cert.sup_norm));
    }
    SUBCASE("tampering with the polynomial breaks certification") {
        RemezResult spoiled = r;
        std::vector<double> coeffs = spoiled.poly.coeffs();
        coeffs[0] += 1e-3;
        spoiled.poly = ChebSeries(coeffs);
        CHECK_THROWS_AS(certify_equioscillation(f, spoiled), CertificationError);
    }
    SUBCASE("tampering with the claimed level breaks certification") {
        RemezResult spoiled = r;
        spoiled.levelled_error *= 1.5;
        CHECK_THROWS_AS(certify_equioscillation(f, spoiled), CertificationError);
    }
    SUBCASE("unconverged results are rejected outright") {
        RemezResult unconverged = r;
        unconverged.converged = false;
        CHECK_THROWS_AS(certify_equioscillation(f, unconverged), std::invalid_argument);
    }
}

TEST_CASE("the grid-restricted oracle brackets the continuous solver") {
    for (const char* text : {"exp(x)", "sin(2*x)"}) {
        CAPTURE(text);
        const ExprAst f = parse(text);
        for (int n : {3, 5}) {
            const RemezResult r = remez(f, n);
            REQUIRE(r.converged);
            const GridMinimax g = grid_lp_minimax_oracle(f, n, 2001);
            // the discrete level can only undershoot, and only by O(h^2)
            CHECK(g.lambda <= r.levelled_error * (1.0 + 1e-10) + 32 * kEps);
            CHECK(std::fabs(g.lambda - r.levelled_error) <= 1e-6 * std::max(1.0, r.levelled_error));
        }
    }
    CHECK_THROWS_AS(grid_lp_minimax_oracle(parse("x"), 5, 20), std::invalid_argument);
}

TEST_CASE("solver options are respected") {
    RemezOptions opts;
    opts.max_iter = 1;
    const RemezResult r = remez(parse("sin(2*x)"), 3, opts);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == 1);

    RemezOptions bad;
    bad.tol = -1.0;
    CHECK_THROWS_AS(remez(parse("x"), 1, bad), std::invalid_argument);
    CHECK_THROWS_AS(remez(parse("x"), -1), std::invalid_argument);
}
