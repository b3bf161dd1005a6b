// Command-line front end. Six subcommands cover the whole toolkit: approx
// (best polynomial + equioscillation certificate), bounds (derivative-based
// error bounds), verdict (saturation ratio and three-way verdict), prop2
// (interpolation-residual containment), lemmas (the seeded lemma suites) and
// oracle-regen (golden values from the grid-restricted oracle).
//
// Every command prints one deterministic JSON document on stdout; identical
// invocations produce byte-identical output. Exit codes: 0 success, 2 parse
// or configuration error, 3 solver non-convergence, 4 internal inconsistency
// or failed certification.

#include "CLI11.hpp"

#include "saturex/chebcore.hpp"
#include "saturex/errors.hpp"
#include "saturex/exprlang.hpp"
#include "saturex/fixtures.hpp"
#include "saturex/jets.hpp"
#include "saturex/remez.hpp"
#include "saturex/report_io.hpp"
#include "saturex/saturation.hpp"

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace saturex;

constexpr std::uint64_t kDefaultLemmaSeed = 42;

// SATUREX_GRID overrides every default grid density (residual scans,
// derivative scans, the discrete oracle); an explicit --grid flag still wins
// where one exists. The floor keeps all per-operation grid preconditions
// satisfiable for n <= 12.
int default_grid(int fallback) {
    const char* raw = std::getenv("SATUREX_GRID");
    if (raw == nullptr || *raw == '\0') return fallback;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v < 128 || v > 10'000'000)
        throw std::invalid_argument("SATUREX_GRID must be an integer in [128, 10000000]");
    return static_cast<int>(v);
}

// Residual curve for external plotting: 1024 uniform samples of f - p*
// alongside T_{n+1}, comma separated with LF line endings.
std::string residual_csv(const ExprAst& f, const ChebSeries& poly, int n) {
    constexpr int kPoints = 1024;
    std::string out = "x,residual,T_{n+1}(x)\n";
    for (int i = 0; i < kPoints; ++i) {
        const double x = -1.0 + 2.0 * i / (kPoints - 1);
        out += format_double(x);
        out += ',';
        out += format_double(eval_scalar(f, x) - poly(x));
        out += ',';
        out += format_double(cheb_eval(n + 1, x));
        out += '\n';
    }
    return out;
}

int run_approx(const std::string& text, int n, double tol, int max_iter,
               const std::string& csv_path) {
    const ExprAst f = parse(text);
    RemezOptions options;
    options.tol = tol;
    options.max_iter = max_iter;
    options.residual_grid = default_grid(options.residual_grid);
    const RemezResult result = remez(f, n, options);
    if (!result.converged) {
        std::cerr << "saturex: no convergence within " << max_iter << " iterations\n";
        return 3;
    }
    const ApproxOutput out{text, n, result, certify_equioscillation(f, result)};
    if (!csv_path.empty()) write_text_file(csv_path, residual_csv(f, result.poly, n));
    std::cout << to_json(out) << "\n";
    return 0;
}

int run_bounds(const std::string& text, int n) {
    const ExprAst f = parse(text);
    const DerivativeRange seminorm = derivative_range(f, n + 1, default_grid(1024));
    const BoundsOutput out{text, n, seminorm, upper_bound(seminorm, n), lower_bound(seminorm, n)};
    std::cout << to_json(out) << "\n";
    return 0;
}

int run_verdict(const std::string& text, int n, double verdict_tol) {
    const ExprAst f = parse(text);
    VerdictOptions options;
    options.verdict_tol = verdict_tol;
    options.derivative_grid = default_grid(options.derivative_grid);
    options.remez.residual_grid = default_grid(options.remez.residual_grid);
    const VerdictOutput out{text, theorem_verdict(f, n, options)};
    std::cout << to_json(out) << "\n";
    return 0;
}

int run_prop2(const std::string& text, int n, int samples) {
    const ExprAst f = parse(text);
    const Prop2Output out{text, prop2_containment(f, n, samples)};
    std::cout << to_json(out) << "\n";
    return 0;
}

int run_lemmas(std::uint64_t seed, int lemma1_count, int lemma2_count, int perturbations) {
    const LemmaOutput out{seed, run_lemma_suites(seed, lemma1_count, lemma2_count, perturbations)};
    std::cout << to_json(out) << "\n";
    return 0;
}

// One "n,function" record per line; blank lines and #-comments are skipped.
std::vector<Fixture> parse_fixture_lines(const std::string& text) {
    std::vector<Fixture> fixtures;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string where = "fixtures line " + std::to_string(line_no);
        const std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos)
            throw std::invalid_argument(where + ": expected \"n,function\"");
        int n = 0;
        try {
            n = std::stoi(line.substr(start, comma - start));
        } catch (const std::exception&) {
            throw std::invalid_argument(where + ": unreadable degree");
        }
        if (n < 0 || n > 12) throw std::invalid_argument(where + ": n must lie in [0, 12]");
        std::string expr = line.substr(comma + 1);
        expr.erase(0, expr.find_first_not_of(" \t"));
        while (!expr.empty() && (expr.back() == ' ' || expr.back() == '\t')) expr.pop_back();
        if (expr.empty()) throw std::invalid_argument(where + ": empty function text");
        fixtures.push_back({expr, n});
    }
    return fixtures;
}

int run_oracle_regen(const std::string& out_path, const std::string& fixtures_path, int grid) {
    const std::vector<Fixture> fixtures = fixtures_path.empty()
                                              ? transcendental_fixtures()
                                              : parse_fixture_lines(read_text_file(fixtures_path));
    if (fixtures.empty()) {
        write_text_file(out_path, "");
        return 0;
    }
    write_text_file(out_path, to_json(regenerate_oracle(fixtures, grid)) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Best polynomial approximation on [-1,1]: Remez solve with certificates, "
                 "derivative-based error bounds, saturation verdicts and lemma checks"};
    app.require_subcommand(1);

    std::string f_text;
    std::string csv_path;
    std::string out_path;
    std::string fixtures_path;
    int n = 0;
    double tol = 1e-12;
    double verdict_tol = 1e-6;
    int max_iter = 50;
    int samples = 64;
    int grid = 0;
    std::uint64_t seed = kDefaultLemmaSeed;
    int lemma1_count = 100;
    int lemma2_count = 50;
    int perturbations = 200;

    std::function<int()> job;

    const auto add_target = [&](CLI::App* cmd) {
        cmd->add_option("--f", f_text, "target function of x, e.g. \"exp(x) + x^3\"")->required();
        cmd->add_option("--n", n, "approximation degree, 0..12")
            ->required()
            ->check(CLI::Range(0, 12));
    };

    CLI::App* approx =
        app.add_subcommand("approx", "best degree-n polynomial with equioscillation certificate");
    add_target(approx);
    approx->add_option("--tol", tol, "relative convergence gap (default 1e-12)")
        ->check(CLI::PositiveNumber);
    approx->add_option("--max-iter", max_iter, "iteration cap (default 50)")
        ->check(CLI::PositiveNumber);
    approx->add_option("--csv", csv_path, "also write the residual curve to this CSV file");
    approx->callback([&] { job = [&] { return run_approx(f_text, n, tol, max_iter, csv_path); }; });

    CLI::App* bounds =
        app.add_subcommand("bounds", "two-sided error bounds from the (n+1)-st derivative");
    add_target(bounds);
    bounds->callback([&] { job = [&] { return run_bounds(f_text, n); }; });

    CLI::App* verdict =
        app.add_subcommand("verdict", "saturation ratio and saturating/strict/degenerate verdict");
    add_target(verdict);
    verdict->add_option("--tol", verdict_tol, "|ratio - 1| verdict threshold (default 1e-6)")
        ->check(CLI::PositiveNumber);
    verdict->callback([&] { job = [&] { return run_verdict(f_text, n, verdict_tol); }; });

    CLI::App* prop2 = app.add_subcommand(
        "prop2", "check the interpolation residual quotient against the derivative range");
    add_target(prop2);
    prop2->add_option("--samples", samples, "sample points before exclusions (default 64)")
        ->check(CLI::Range(16, 1 << 20));
    prop2->callback([&] { job = [&] { return run_prop2(f_text, n, samples); }; });

    CLI::App* lemmas = app.add_subcommand("lemmas", "run the seeded lemma suites");
    lemmas->add_option("--seed", seed, "base seed (default 42)");
    lemmas->add_option("--lemma1-count", lemma1_count, "vanishing-lemma instances (default 100)")
        ->check(CLI::NonNegativeNumber);
    lemmas->add_option("--lemma2-count", lemma2_count, "minimality instances (default 50)")
        ->check(CLI::NonNegativeNumber);
    lemmas
        ->add_option("--perturbations", perturbations,
                     "(w, epsilon) pairs per minimality instance (default 200)")
        ->check(CLI::NonNegativeNumber);
    lemmas->callback(
        [&] { job = [&] { return run_lemmas(seed, lemma1_count, lemma2_count, perturbations); }; });

    CLI::App* regen =
        app.add_subcommand("oracle-regen", "regenerate golden oracle values for the fixture set");
    regen->add_option("--out", out_path, "output file")->required();
    regen->add_option("--fixtures", fixtures_path,
                      "fixture list, one \"n,function\" per line (default: built-in set)");
    regen->add_option("--grid", grid, "oracle grid size (default 4001)");
    regen->callback([&] {
        job = [&] {
            const int g = grid > 0 ? grid : default_grid(4001);
            return run_oracle_regen(out_path, fixtures_path, g);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        return job();
    } catch (const ParseError& e) {
        std::cerr << "saturex: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "saturex: " << e.what() << "\n";
        return 2;
    } catch (const ConvergenceFailure& e) {
        std::cerr << "saturex: " << e.what() << "\n";
        return 3;
    } catch (const InternalInconsistency& e) {
        std::cerr << "saturex: " << e.what() << "\n";
        return 4;
    } catch (const CertificationError& e) {
        std::cerr << "saturex: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "saturex: " << e.what() << "\n";
        return 1;
    }
}
