// Command-line runner for the solver library: problem generation, spectrum
// reports, single solves and full benchmark experiments.
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure,
// 4 oracle cap exceeded.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sid/bench/experiment.hpp"
#include "sid/theory/factors.hpp"

namespace {

using sid::BetaStrategy;
using sid::ExperimentSpec;
using sid::SolverChoice;

struct CommonOptions {
    std::string problem;
    std::vector<std::string> solvers;
    double tol = 1e-8;
    int max_iter = 1000;
    std::string beta = "optimal";
    std::uint64_t seed = 0;
    int reps = 1;
    std::string out;
    bool bound_overlay = false;
    std::string spec_file;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt, bool with_reps) {
    cmd->add_option("--problem", opt.problem,
                    "Problem descriptor, e.g. laplacian:m=63,sigma=100 | "
                    "saddle:m=32,tau=0.01 | diag:-2,-1,1,2 | mtx:A.mtx");
    cmd->add_option("--solver", opt.solvers,
                    "Solver (repeatable): psdi | psdi1d | pminres | pminres:<k> | "
                    "pminres2 | orthomin1");
    cmd->add_option("--tol", opt.tol, "Relative residual T-norm target");
    cmd->add_option("--max-iter", opt.max_iter, "Iteration budget");
    cmd->add_option("--beta", opt.beta,
                    "psdi1d beta strategy: optimal | uniform | fixed:<v> | normal:<mean>:<std>");
    cmd->add_option("--seed", opt.seed, "RNG seed");
    if (with_reps)
        cmd->add_option("--reps", opt.reps, "Repetitions for randomized solvers (averaged)");
    cmd->add_option("--out", opt.out, "Output prefix (.csv/.json) or directory (generate)");
    cmd->add_flag("--bound-overlay", opt.bound_overlay,
                  "Derive the spectral interval and emit the bound column");
    cmd->add_option("--spec", opt.spec_file, "JSON experiment spec (overrides other flags)");
}

ExperimentSpec spec_from_options(const CommonOptions& opt) {
    ExperimentSpec spec;
    spec.problem = opt.problem;
    spec.seed = opt.seed;
    spec.repetitions = opt.reps;
    spec.bound_overlay = opt.bound_overlay;
    spec.out_prefix = opt.out;
    for (const auto& s : opt.solvers) {
        SolverChoice choice = SolverChoice::parse(s);
        choice.config.tol = opt.tol;
        choice.config.max_iter = opt.max_iter;
        choice.config.beta = sid::parse_beta(opt.beta);
        spec.solvers.push_back(std::move(choice));
    }
    return spec;
}

ExperimentSpec spec_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sid::IoError("cannot open spec file '" + path + "'");
    nlohmann::json j;
    in >> j;

    ExperimentSpec spec;
    spec.problem = j.at("problem").get<std::string>();
    spec.seed = j.value("seed", 0ull);
    spec.repetitions = j.value("repetitions", 1);
    spec.bound_overlay = j.value("bound_overlay", false);
    spec.out_prefix = j.value("out", std::string{});
    for (const auto& js : j.at("solvers")) {
        SolverChoice choice = SolverChoice::parse(js.at("kind").get<std::string>());
        if (js.contains("label")) choice.label = js["label"].get<std::string>();
        choice.config.tol = js.value("tol", 1e-8);
        choice.config.max_iter = js.value("max_iter", 1000);
        if (js.contains("beta")) choice.config.beta = sid::parse_beta(js["beta"].get<std::string>());
        spec.solvers.push_back(std::move(choice));
    }
    return spec;
}

void print_result(const sid::ExperimentResult& result) {
    std::printf("problem: %s  (n = %d)\n", result.problem_label.c_str(), result.n);
    if (result.interval) {
        std::printf("interval: [%.6g, %.6g] U [%.6g, %.6g]   rho_opt = %.6g\n",
                    result.interval->a, result.interval->b, result.interval->c,
                    result.interval->d, *result.rho_opt_value);
    }
    std::printf("%-18s %10s %14s %14s %9s %9s %9s  %s\n", "solver", "iters", "initial",
                "final", "matvecs", "precs", "dots", "termination");
    for (const auto& t : result.traces) {
        const auto& last = t.counters.back();
        std::printf("%-18s %10zu %14.6e %14.6e %9lld %9lld %9lld  %s\n", t.label.c_str(),
                    t.residuals.size() - 1, t.residuals.front(), t.residuals.back(),
                    static_cast<long long>(last.matvecs), static_cast<long long>(last.precs),
                    static_cast<long long>(last.inner_products),
                    sid::to_string(t.termination).c_str());
    }
}

int run_solve_or_bench(const CommonOptions& opt) {
    ExperimentSpec spec =
        opt.spec_file.empty() ? spec_from_options(opt) : spec_from_json_file(opt.spec_file);
    if (spec.problem.empty()) {
        std::cerr << "error: --problem (or --spec) is required\n";
        return 2;
    }
    if (spec.solvers.empty()) {
        std::cerr << "error: at least one --solver is required\n";
        return 2;
    }
    const sid::ExperimentResult result = sid::run_experiment(spec);
    print_result(result);
    if (!spec.out_prefix.empty())
        std::printf("wrote %s.csv and %s.json\n", spec.out_prefix.c_str(),
                    spec.out_prefix.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Iterative solvers for symmetric indefinite systems with SPD preconditioners"};
    app.require_subcommand(1);

    CommonOptions generate_opt, spectrum_opt, solve_opt, bench_opt;

    CLI::App* generate = app.add_subcommand("generate", "Write a generated problem to disk");
    generate->add_option("--problem", generate_opt.problem, "Problem descriptor")->required();
    generate->add_option("--seed", generate_opt.seed, "RNG seed");
    generate->add_option("--out", generate_opt.out, "Output directory")->required();

    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "Dense spectrum report and interval pair for a problem (JSON)");
    spectrum->add_option("--problem", spectrum_opt.problem, "Problem descriptor")->required();
    spectrum->add_option("--seed", spectrum_opt.seed, "RNG seed");
    spectrum->add_option("--out", spectrum_opt.out, "Write JSON here instead of stdout");

    CLI::App* solve = app.add_subcommand("solve", "Run solvers on a problem once");
    add_common_flags(solve, solve_opt, false);

    CLI::App* bench = app.add_subcommand(
        "bench", "Experiment runner: repetitions, averaging, bound overlays, CSV traces");
    add_common_flags(bench, bench_opt, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (generate->parsed()) {
            sid::generate_problem_files(generate_opt.problem, generate_opt.seed,
                                         generate_opt.out);
            std::printf("wrote problem files to %s\n", generate_opt.out.c_str());
            return 0;
        }
        if (spectrum->parsed()) {
            const std::string j = sid::spectrum_report_json(spectrum_opt.problem,
                                                             spectrum_opt.seed);
            if (spectrum_opt.out.empty()) {
                std::printf("%s\n", j.c_str());
            } else {
                std::ofstream out(spectrum_opt.out);
                out << j << "\n";
                if (!out) throw sid::IoError("cannot write '" + spectrum_opt.out + "'");
            }
            return 0;
        }
        if (solve->parsed()) return run_solve_or_bench(solve_opt);
        if (bench->parsed()) return run_solve_or_bench(bench_opt);
    } catch (const sid::OracleCapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const sid::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const sid::NotSpdError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const sid::DefiniteSpectrumError& e) {
        std::cerr << "error: spectrum not indefinite: " << e.what() << "\n";
        return 2;
    } catch (const sid::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
