#include "saturex/saturation.hpp"

#include "doctest.h"
#include "saturex/errors.hpp"

#include <cmath>
#include <vector>

using namespace saturex;

namespace {

DerivativeRange make_range(int order, double min_abs, double sup) {
    DerivativeRange r;
    r.order = order;
    r.min_abs = min_abs;
    r.sup = sup;
    return r;
}

} // namespace

TEST_CASE("upper_bound and lower_bound") {
    SUBCASE("exp at n = 5: e / 23040 over e^{-1} / 23040") {
        const DerivativeRange seminorm = derivative_range(parse("exp(x)"), 6, 1024);
        const double up = upper_bound(seminorm, 5);
        const double low = lower_bound(seminorm, 5);
        // 2^5 * 6! = 23040
        CHECK(std::fabs(up - std::exp(1.0) / 23040.0) <= 1e-12 * up);
        CHECK(std::fabs(low - std::exp(-1.0) / 23040.0) <= 1e-12 * low);
    }
    SUBCASE("x^3 at n = 2: both bounds collapse to 1/4") {
        const DerivativeRange seminorm = derivative_range(parse("x^3"), 3, 256);
        CHECK(std::fabs(upper_bound(seminorm, 2) - 0.25) <= 1e-14);
        CHECK(std::fabs(lower_bound(seminorm, 2) - 0.25) <= 1e-14);
    }
    SUBCASE("sin at n = 4: the fifth derivative is cos") {
        const DerivativeRange seminorm = derivative_range(parse("sin(x)"), 5, 1024);
        // 2^4 * 5! = 1920
        CHECK(std::fabs(upper_bound(seminorm, 4) - 1.0 / 1920.0) <= 1e-12 / 1920.0);
        CHECK(std::fabs(lower_bound(seminorm, 4) - std::cos(1.0) / 1920.0) <= 1e-12);
    }
    SUBCASE("the derivative order must match n + 1") {
        CHECK_THROWS_AS(upper_bound(make_range(3, 1.0, 2.0), 3), std::invalid_argument);
        CHECK_THROWS_AS(lower_bound(make_range(5, 1.0, 2.0), 3), std::invalid_argument);
    }
    SUBCASE("large n goes through the log-domain branch without overflow") {
        const double up = upper_bound(make_range(31, 1.0, 1.0), 30);
        CHECK(up > 0.0);
        CHECK(std::isfinite(up));
        // 2^30 * 31! is near 8.83e42; the bound is its reciprocal
        CHECK(std::fabs(std::log10(up) + 42.9459) <= 0.01);
    }
}

TEST_CASE("saturation_ratio") {
    CHECK(saturation_ratio(0.25, make_range(3, 6.0, 6.0), 2).has_value());
    CHECK(std::fabs(*saturation_ratio(0.25, make_range(3, 6.0, 6.0), 2) - 1.0) <= 1e-15);
    CHECK(std::fabs(*saturation_ratio(0.125, make_range(3, 6.0, 6.0), 2) - 0.5) <= 1e-15);
    // a numerically vanishing seminorm has no meaningful ratio
    CHECK_FALSE(saturation_ratio(1e-16, make_range(3, 0.0, 5e-14), 2).has_value());
}

TEST_CASE("theorem_verdict") {
    SUBCASE("a degree-(n+1) polynomial saturates the bound") {
        const SaturationReport rep = theorem_verdict(parse("0.3*x^4 - x + 2"), 3);
        CHECK(rep.verdict == Verdict::saturating);
        CHECK(std::fabs(rep.ratio - 1.0) <= 1e-8);
        CHECK(rep.n == 3);
        CHECK(rep.seminorm.order == 4);
        CHECK(rep.tolerance == 1e-6);
        // E_3 = 0.3 / 2^3 and both bounds agree with it
        CHECK(std::fabs(rep.e_n - 0.0375) <= 1e-10);
        CHECK(std::fabs(rep.upper - 0.0375) <= 1e-10);
        CHECK(std::fabs(rep.lower - 0.0375) <= 1e-10);
    }
    SUBCASE("exp is strictly below the bound") {
        const SaturationReport rep = theorem_verdict(parse("exp(x)"), 4);
        CHECK(rep.verdict == Verdict::strict);
        CHECK(rep.ratio > 0.38);
        CHECK(rep.ratio < 0.39);
        CHECK(rep.lower - 1e-9 * rep.upper <= rep.e_n);
        CHECK(rep.e_n <= rep.upper * (1.0 + 1e-9));
    }
    SUBCASE("a target already in Pi_n is degenerate") {
        const SaturationReport rep = theorem_verdict(parse("x^2"), 2);
        CHECK(rep.verdict == Verdict::degenerate);
        CHECK(rep.ratio == 0.0);
        CHECK(rep.e_n <= 1e-13);
        CHECK(rep.upper <= 1e-14);
    }
    SUBCASE("verdict names") {
        CHECK(std::string(verdict_name(Verdict::saturating)) == "saturating");
        CHECK(std::string(verdict_name(Verdict::strict)) == "strict");
        CHECK(std::string(verdict_name(Verdict::degenerate)) == "degenerate");
    }
    SUBCASE("verdict tolerance must sit in (0, 0.1]") {
        VerdictOptions opts;
        opts.verdict_tol = 0.0;
        CHECK_THROWS_AS(theorem_verdict(parse("x^2"), 1, opts), std::invalid_argument);
        opts.verdict_tol = 0.2;
        CHECK_THROWS_AS(theorem_verdict(parse("x^2"), 1, opts), std::invalid_argument);
    }
    SUBCASE("scaling the target changes neither verdict nor ratio") {
        const ExprAst f = parse("exp(x)");
        const SaturationReport base = theorem_verdict(f, 3);
        for (double alpha : {-2.0, 0.5}) {
            const SaturationReport scaled =
                theorem_verdict(ast::mul(ast::constant(alpha), f), 3);
            CHECK(scaled.verdict == base.verdict);
            CHECK(std::fabs(scaled.ratio - base.ratio) <= 1e-10);
        }
        const SaturationReport poly = theorem_verdict(parse("x^3 - x"), 2);
        for (double alpha : {-2.0, 0.5}) {
            const SaturationReport scaled =
                theorem_verdict(ast::mul(ast::constant(alpha), parse("x^3 - x")), 2);
            CHECK(scaled.verdict == poly.verdict);
            CHECK(std::fabs(scaled.ratio - poly.ratio) <= 1e-10);
        }
    }
}

TEST_CASE("prop2_containment") {
    SUBCASE("x^3 at n = 2: the quotient is identically 6") {
        const Prop2Report rep = prop2_containment(parse("x^3"), 2, 64);
        CHECK(rep.requested == 64);
        CHECK(rep.checked == 64);
        CHECK(std::fabs(rep.lo - 6.0) <= 1e-9);
        CHECK(std::fabs(rep.hi - 6.0) <= 1e-9);
        CHECK(rep.worst_violation == 0.0);
    }
    SUBCASE("exp at n = 3 stays inside [1/e, e]") {
        const Prop2Report rep = prop2_containment(parse("exp(x)"), 3, 64);
        CHECK(std::fabs(rep.lo - std::exp(-1.0)) <= 1e-9);
        CHECK(std::fabs(rep.hi - std::exp(1.0)) <= 1e-9);
        CHECK(rep.worst_violation == 0.0);
    }
    SUBCASE("a target inside Pi_n gives the all-zero containment") {
        const Prop2Report rep = prop2_containment(parse("x^2 - 1"), 3, 64);
        CHECK(rep.lo == 0.0);
        CHECK(rep.hi == 0.0);
        CHECK(rep.worst_violation == 0.0);
    }
    SUBCASE("dense sampling hits the exclusion zones") {
        const Prop2Report rep = prop2_containment(parse("exp(x)"), 2, 4096);
        CHECK(rep.requested == 4096);
        CHECK(rep.checked < rep.requested);
        CHECK(rep.checked > 3900);
        CHECK(rep.worst_violation == 0.0);
    }
    SUBCASE("sample count below 16 is rejected") {
        CHECK_THROWS_AS(prop2_containment(parse("x"), 1, 8), std::invalid_argument);
    }
}

TEST_CASE("lemma1_contrapositive_check") {
    SUBCASE("x^3 - x with zeros {-1, 0, 1}: h'' = 6x takes both signs") {
        const std::vector<double> zeros = {-1.0, 0.0, 1.0};
        const Lemma1Report rep = lemma1_contrapositive_check(parse("x^3 - x"), zeros, 2, 512);
        CHECK(rep.both_signs);
        CHECK(std::fabs(rep.grid_sup - 6.0) <= 1e-12);
        CHECK(std::fabs(rep.max_value - 6.0) <= 1e-12);
        CHECK(std::fabs(rep.min_value + 6.0) <= 1e-12);
        CHECK(std::fabs(rep.tol - 6e-10) <= 1e-20);
    }
    SUBCASE("T_3 with its own roots: h'' = 24x") {
        const NodeSet roots = cheb_roots(3);
        const Lemma1Report rep =
            lemma1_contrapositive_check(parse("4*x^3 - 3*x"), roots.points, 2, 256);
        CHECK(rep.both_signs);
        CHECK(rep.max_value > 0.0);
        CHECK(rep.min_value < 0.0);
    }
    SUBCASE("sin(x) (x^2 - 1) via jets, no closed form needed") {
        const std::vector<double> zeros = {-1.0, 0.0, 1.0};
        const Lemma1Report rep =
            lemma1_contrapositive_check(parse("sin(x)*x^2 - sin(x)"), zeros, 2, 512);
        CHECK(rep.both_signs);
    }
    SUBCASE("claimed zeros must actually be zeros") {
        const std::vector<double> zeros = {-1.0, 0.5, 1.0};
        CHECK_THROWS_AS(lemma1_contrapositive_check(parse("x^3 - x"), zeros, 2, 256),
                        std::invalid_argument);
    }
    SUBCASE("the identically zero function is rejected") {
        const std::vector<double> zeros = {-1.0, 0.0, 1.0};
        CHECK_THROWS_AS(lemma1_contrapositive_check(parse("x - x"), zeros, 1, 256),
                        std::invalid_argument);
    }
    SUBCASE("grid floor") {
        const std::vector<double> zeros = {-1.0, 0.0, 1.0};
        CHECK_THROWS_AS(lemma1_contrapositive_check(parse("x^3 - x"), zeros, 2, 32),
                        std::invalid_argument);
    }
}

TEST_CASE("make_lemma2_instance") {
    SUBCASE("the parabola through {-1,0,1} x {1,0,1}") {
        const std::vector<double> nodes = {-1.0, 0.0, 1.0};
        const std::vector<double> values = {1.0, 0.0, 1.0};
        const LemmaTwoInstance inst = make_lemma2_instance(nodes, values);
        CHECK(inst.m == 2);
        // x^2 = (T_0 + T_2) / 2
        CHECK(std::fabs(inst.interpolant.coeff(0) - 0.5) <= 1e-12);
        CHECK(std::fabs(inst.interpolant.coeff(2) - 0.5) <= 1e-12);
        CHECK(std::fabs(inst.interpolant_seminorm - 2.0) <= 1e-12);
    }
    SUBCASE("interpolating zeros gives the zero function and seminorm") {
        const std::vector<double> nodes = {-1.0, 1.0};
        const std::vector<double> values = {0.0, 0.0};
        const LemmaTwoInstance inst = make_lemma2_instance(nodes, values);
        CHECK(inst.m == 1);
        CHECK(inst.interpolant.is_zero());
        CHECK(inst.interpolant_seminorm == 0.0);
    }
    SUBCASE("T_3 on its extrema: seminorm 2^2 * 3! = 24") {
        const NodeSet nodes = cheb_extrema(3);
        std::vector<double> values(nodes.points.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            values[i] = cheb_eval(3, nodes.points[i]);
        const LemmaTwoInstance inst = make_lemma2_instance(nodes.points, values);
        CHECK(inst.m == 3);
        CHECK(std::fabs(inst.interpolant_seminorm - 24.0) <= 1e-9);
    }
    SUBCASE("bad data is rejected") {
        const std::vector<double> one_node = {0.0};
        const std::vector<double> one_value = {1.0};
        CHECK_THROWS_AS(make_lemma2_instance(one_node, one_value), std::invalid_argument);
        const std::vector<double> nodes = {-0.5, 0.5};
        const std::vector<double> too_many = {1.0, 2.0, 3.0};
        CHECK_THROWS_AS(make_lemma2_instance(nodes, too_many), std::invalid_argument);
        const std::vector<double> unsorted = {0.5, -0.5};
        const std::vector<double> values = {1.0, 2.0};
        CHECK_THROWS_AS(make_lemma2_instance(unsorted, values), std::invalid_argument);
    }
}

TEST_CASE("lemma2_minimality_check") {
    SUBCASE("no perturbation of the parabola beats ||p''|| = 2") {
        const std::vector<double> nodes = {-1.0, 0.0, 1.0};
        const std::vector<double> values = {1.0, 0.0, 1.0};
        const LemmaTwoInstance inst = make_lemma2_instance(nodes, values);
        const Lemma2Report rep = lemma2_minimality_check(inst, 40, kDefaultEpsilonGrid, 991);
        CHECK(rep.ok);
        CHECK(rep.perturbations == 40);
        CHECK(std::fabs(rep.reference - 2.0) <= 1e-12);
        CHECK(rep.min_seminorm >= 2.0 - 1e-9);
        CHECK(rep.worst_deficit <= 1e-9);
    }
    SUBCASE("the zero interpolant is trivially minimal") {
        const std::vector<double> nodes = {-1.0, 1.0};
        const std::vector<double> values = {0.0, 0.0};
        const LemmaTwoInstance inst = make_lemma2_instance(nodes, values);
        const Lemma2Report rep = lemma2_minimality_check(inst, 20, kDefaultEpsilonGrid, 5);
        CHECK(rep.ok);
        CHECK(rep.worst_deficit == 0.0);
    }
    SUBCASE("T_3 keeps its seminorm 24 under perturbation") {
        const NodeSet nodes = cheb_extrema(3);
        std::vector<double> values(nodes.points.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            values[i] = cheb_eval(3, nodes.points[i]);
        const LemmaTwoInstance inst = make_lemma2_instance(nodes.points, values);
        const Lemma2Report rep = lemma2_minimality_check(inst, 30, kDefaultEpsilonGrid, 77);
        CHECK(rep.ok);
        CHECK(rep.min_seminorm >= 24.0 - 1e-9);
    }
    SUBCASE("the equality case: a monic node-product perturbation strictly loses") {
        // g = x^2 + eps (x^3 - x): ||g''|| = 2 + 6 |eps|, strictly above 2
        const std::vector<double> mono_p = {0.0, 0.0, 1.0};
        const std::vector<double> mono_w = {0.0, -1.0, 0.0, 1.0};
        for (double eps : {-0.01, 0.01, 0.1}) {
            const ExprAst g = ast::add(
                ast::polynomial(mono_p),
                ast::mul(ast::constant(eps), ast::polynomial(mono_w)));
            const double seminorm = derivative_range(g, 2, 1024).sup;
            CHECK(seminorm >= 2.0 + 6.0 * std::fabs(eps) - 1e-10);
            CHECK(seminorm > 2.0 + 1e-3);
        }
    }
}

TEST_CASE("seeded lemma instances and the combined suites") {
    SUBCASE("lemma1 instances satisfy their own preconditions") {
        for (int m = 1; m <= 4; ++m) {
            const Lemma1Instance inst = make_lemma1_instance(m, 1234 + m);
            CHECK(inst.m == m);
            REQUIRE(inst.zeros.size() == static_cast<std::size_t>(m) + 1);
            for (double z : inst.zeros)
                CHECK(std::fabs(eval_scalar(inst.h, z)) <= 1e-10);
            const Lemma1Report rep =
                lemma1_contrapositive_check(inst.h, inst.zeros, m, 1024);
            CHECK(rep.both_signs);
        }
    }
    SUBCASE("random lemma2 instances interpolate their data") {
        for (int m = 1; m <= 4; ++m) {
            const LemmaTwoInstance inst = make_random_lemma2_instance(m, 99 + m);
            CHECK(inst.m == m);
            for (std::size_t i = 0; i < inst.nodes.size(); ++i)
                CHECK(std::fabs(inst.interpolant(inst.nodes[i]) - inst.values[i]) <= 1e-9);
        }
    }
    SUBCASE("a small run of the full suites is clean") {
        const LemmaSuiteReport rep = run_lemma_suites(7, 8, 4, 20);
        CHECK(rep.lemma1_instances == 8);
        CHECK(rep.lemma1_failures == 0);
        CHECK(rep.lemma2_instances == 4);
        CHECK(rep.lemma2_perturbations == 20);
        CHECK(rep.lemma2_failures == 0);
        CHECK(rep.lemma2_worst_deficit <= 1e-9);
    }
}
