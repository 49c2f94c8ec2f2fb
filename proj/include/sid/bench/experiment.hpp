/// @file experiment.hpp
/// @brief Experiment runner: solver comparisons on generated or on-disk
///        problems, optional convergence-bound overlay, randomized-parameter
///        averaging, CSV traces and JSON summaries.

#ifndef SID_BENCH_EXPERIMENT_HPP
#define SID_BENCH_EXPERIMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "sid/problems/problems.hpp"
#include "sid/solvers/config.hpp"
#include "sid/theory/spectrum.hpp"

namespace sid {

struct SolverChoice {
    enum class Kind { psdi, psdi_1d, pminres, pminres_restarted, orthomin1 };

    Kind kind = Kind::psdi;
    int restart = 2; ///< for pminres_restarted
    std::string label;
    SolverConfig config;

    /// Parse "psdi" | "psdi1d" | "pminres" | "pminres:<k>" | "pminres2" |
    /// "orthomin1". The label defaults to the string itself.
    static SolverChoice parse(const std::string& s);
};

/// Parse "optimal" | "uniform" | "fixed:<v>" | "normal:<mean>:<std>".
BetaStrategy parse_beta(const std::string& s);

/// Problem descriptors:
///   laplacian:m=63,sigma=100
///   saddle:m=32,tau=0.01[,rhs=random|load]
///   diag:-2,-1,1,2
///   mtx:<A.mtx>[,precond=<B.mtx>]   (T = B^{-1}; identity without precond)
ProblemInstance make_problem(const std::string& descriptor, std::uint64_t seed);

struct ExperimentSpec {
    std::string problem;
    std::vector<SolverChoice> solvers;
    int repetitions = 1; ///< randomized solvers only; others run once
    bool bound_overlay = false;
    std::uint64_t seed = 0;
    std::string out_prefix; ///< writes <prefix>.csv and <prefix>.json when set
    index_t oracle_cap = default_oracle_cap;
};

/// One solver's aggregated trace. Randomized runs are combined by the
/// geometric mean per iteration index (convergence factors multiply, so the
/// arithmetic mean would distort rates); deterministic solvers run once.
struct SolverTrace {
    std::string label;
    std::vector<double> residuals;
    std::vector<OpCounters> counters;
    std::vector<double> bound; ///< empty when no interval is available
    Termination termination = Termination::max_iter;
    int reps = 1;
};

struct ExperimentResult {
    std::string problem_label;
    ProblemMetadata problem_meta;
    index_t n = 0;
    std::optional<IntervalPair> interval;
    std::optional<double> rho_opt_value;
    std::vector<SolverTrace> traces;
};

/// Runs every solver in the spec on the (seeded) problem, derives the
/// interval pair from the dense spectrum oracle when the overlay or a
/// one-dimensional solver needs it, and writes the output files when
/// out_prefix is set. Identical spec and seed give byte-identical CSV.
ExperimentResult run_experiment(const ExperimentSpec& spec);

void write_trace_csv(const ExperimentResult& result, const std::string& path);
void write_summary_json(const ExperimentResult& result, const ExperimentSpec& spec,
                        const std::string& path);

/// JSON spectrum report for a problem descriptor (see make_problem).
std::string spectrum_report_json(const std::string& descriptor, std::uint64_t seed,
                                 index_t cap = default_oracle_cap);

/// Write the generated problem to a directory: matrices in Matrix Market
/// coordinate format plus a problem.json sidecar with generator parameters
/// and seeds (f and x0 are reproducible from the sidecar).
void generate_problem_files(const std::string& descriptor, std::uint64_t seed,
                            const std::string& out_dir);

} // namespace sid

#endif // SID_BENCH_EXPERIMENT_HPP
