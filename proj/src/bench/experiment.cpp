#include "sid/bench/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sid/core/matrix_market.hpp"
#include "sid/solvers/rng.hpp"
#include "sid/solvers/solvers.hpp"
#include "sid/theory/factors.hpp"

namespace sid {

using json = nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) parts.push_back(item);
    return parts;
}

struct KeyValues {
    std::vector<std::pair<std::string, std::string>> items;

    const std::string* find(const std::string& key) const {
        for (const auto& [k, v] : items)
            if (k == key) return &v;
        return nullptr;
    }
    double number(const std::string& key, std::optional<double> fallback = std::nullopt) const {
        const std::string* v = find(key);
        if (!v) {
            if (fallback) return *fallback;
            throw InvalidArgumentError("problem descriptor: missing '" + key + "'");
        }
        return std::stod(*v);
    }
};

KeyValues parse_kv(const std::string& s) {
    KeyValues kv;
    for (const auto& part : split(s, ',')) {
        if (part.empty()) continue;
        const auto eq = part.find('=');
        if (eq == std::string::npos)
            throw InvalidArgumentError("problem descriptor: expected key=value in '" + part + "'");
        kv.items.emplace_back(part.substr(0, eq), part.substr(eq + 1));
    }
    return kv;
}

const char* kind_name(SolverChoice::Kind k) {
    switch (k) {
    case SolverChoice::Kind::psdi: return "psdi";
    case SolverChoice::Kind::psdi_1d: return "psdi1d";
    case SolverChoice::Kind::pminres: return "pminres";
    case SolverChoice::Kind::pminres_restarted: return "pminres_restarted";
    case SolverChoice::Kind::orthomin1: return "orthomin1";
    }
    return "?";
}

bool is_randomized(const SolverChoice& s) {
    return s.kind == SolverChoice::Kind::psdi_1d &&
           (s.config.beta.kind == BetaStrategy::Kind::uniform_random ||
            s.config.beta.kind == BetaStrategy::Kind::normal_random);
}

SolveReport run_one(const SolverChoice& choice, const ProblemInstance& p,
                    const std::optional<IntervalPair>& interval, std::uint64_t rng_seed) {
    SolverConfig cfg = choice.config;
    cfg.rng_seed = rng_seed;
    switch (choice.kind) {
    case SolverChoice::Kind::psdi:
        return psdi(p.A, *p.T, p.f, p.x0, cfg);
    case SolverChoice::Kind::psdi_1d:
        if (!interval)
            throw InvalidArgumentError("psdi1d requires a spectral interval (oracle unavailable)");
        return psdi_1d(p.A, *p.T, p.f, p.x0, cfg, *interval);
    case SolverChoice::Kind::pminres:
        return pminres(p.A, *p.T, p.f, p.x0, cfg);
    case SolverChoice::Kind::pminres_restarted:
        return pminres_restarted(p.A, *p.T, p.f, p.x0, choice.restart, cfg);
    case SolverChoice::Kind::orthomin1:
        return orthomin1(p.A, *p.T, p.f, p.x0, cfg.max_iter, cfg.tol);
    }
    throw InvalidArgumentError("unknown solver kind");
}

/// Bound multiplier at iteration index i for the overlay column.
double bound_factor(const SolverChoice& s, const IntervalPair& I, int i) {
    switch (s.kind) {
    case SolverChoice::Kind::psdi:
        return std::pow(rho_opt(I), i);
    case SolverChoice::Kind::psdi_1d:
        if (s.config.beta.kind == BetaStrategy::Kind::fixed)
            return std::pow(rho_opt_of_beta(I, s.config.beta.value), i);
        return std::pow(rho_opt(I), i);
    case SolverChoice::Kind::pminres:
        return pminres_bound(I, i);
    case SolverChoice::Kind::pminres_restarted:
        // global Krylov bound does not survive restarts; the 2-step cycle is
        // equivalent to the two-term scheme and inherits its envelope
        if (s.restart == 2) return std::pow(rho_opt(I), i / 2);
        return std::numeric_limits<double>::quiet_NaN();
    case SolverChoice::Kind::orthomin1:
        return std::numeric_limits<double>::quiet_NaN(); // no contract
    }
    return std::numeric_limits<double>::quiet_NaN();
}

} // namespace

SolverChoice SolverChoice::parse(const std::string& s) {
    SolverChoice c;
    c.label = s;
    if (s == "psdi") {
        c.kind = Kind::psdi;
    } else if (s == "psdi1d") {
        c.kind = Kind::psdi_1d;
    } else if (s == "pminres") {
        c.kind = Kind::pminres;
    } else if (s == "orthomin1") {
        c.kind = Kind::orthomin1;
    } else if (s == "pminres2") {
        c.kind = Kind::pminres_restarted;
        c.restart = 2;
    } else if (s.rfind("pminres:", 0) == 0) {
        c.kind = Kind::pminres_restarted;
        c.restart = std::stoi(s.substr(8));
        if (c.restart < 1) throw InvalidArgumentError("solver: restart length must be >= 1");
    } else {
        throw InvalidArgumentError("unknown solver '" + s + "'");
    }
    return c;
}

BetaStrategy parse_beta(const std::string& s) {
    if (s == "optimal") return BetaStrategy::optimal();
    if (s == "uniform") return BetaStrategy::uniform_random();
    if (s.rfind("fixed:", 0) == 0) return BetaStrategy::fixed(std::stod(s.substr(6)));
    if (s.rfind("normal:", 0) == 0) {
        const auto parts = split(s.substr(7), ':');
        if (parts.size() != 2)
            throw InvalidArgumentError("beta: expected normal:MEAN:STD");
        return BetaStrategy::normal_random(std::stod(parts[0]), std::stod(parts[1]));
    }
    throw InvalidArgumentError("unknown beta strategy '" + s + "'");
}

ProblemInstance make_problem(const std::string& descriptor, std::uint64_t seed) {
    const auto colon = descriptor.find(':');
    const std::string kind = descriptor.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : descriptor.substr(colon + 1);

    if (kind == "laplacian") {
        const KeyValues kv = parse_kv(rest);
        return shifted_laplacian(static_cast<index_t>(kv.number("m")), kv.number("sigma"), seed);
    }
    if (kind == "saddle") {
        const KeyValues kv = parse_kv(rest);
        SaddleRhs rhs = SaddleRhs::assembled_load;
        if (const std::string* r = kv.find("rhs")) {
            if (*r == "random") rhs = SaddleRhs::random;
            else if (*r == "load") rhs = SaddleRhs::assembled_load;
            else throw InvalidArgumentError("saddle: rhs must be 'random' or 'load'");
        }
        return control_saddle_problem(static_cast<index_t>(kv.number("m")), kv.number("tau"),
                                      seed, rhs);
    }
    if (kind == "diag") {
        std::vector<double> spectrum;
        for (const auto& v : split(rest, ','))
            if (!v.empty()) spectrum.push_back(std::stod(v));
        return diagonal_model(spectrum, seed);
    }
    if (kind == "mtx") {
        const auto parts = split(rest, ',');
        if (parts.empty() || parts[0].empty())
            throw InvalidArgumentError("mtx problem: missing matrix path");
        ProblemInstance p;
        p.A = read_matrix_market(parts[0]);
        p.T = identity_preconditioner(p.A.dim());
        for (std::size_t i = 1; i < parts.size(); ++i) {
            if (parts[i].rfind("precond=", 0) == 0)
                p.T = inverse_spd_preconditioner(read_matrix_market(parts[i].substr(8)));
            else
                throw InvalidArgumentError("mtx problem: unknown option '" + parts[i] + "'");
        }
        p.f = random_vector(p.A.dim(), derive_seed(seed, 0x72687321));
        p.x0 = random_vector(p.A.dim(), derive_seed(seed, 0x78302121));
        p.label = "mtx(" + parts[0] + ")";
        p.meta = {"mtx", 0, 0.0, 0.0, seed, "random"};
        return p;
    }
    throw InvalidArgumentError("unknown problem kind '" + kind + "'");
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    if (spec.solvers.empty()) throw InvalidArgumentError("experiment: at least one solver");
    if (spec.repetitions < 1) throw InvalidArgumentError("experiment: repetitions must be >= 1");

    const ProblemInstance problem = make_problem(spec.problem, spec.seed);

    ExperimentResult result;
    result.problem_label = problem.label;
    result.problem_meta = problem.meta;
    result.n = problem.dim();

    const bool needs_interval =
        spec.bound_overlay ||
        std::any_of(spec.solvers.begin(), spec.solvers.end(),
                    [](const SolverChoice& s) { return s.kind == SolverChoice::Kind::psdi_1d; });
    if (needs_interval) {
        const SpectrumReport sr = spectrum_oracle(problem.A, *problem.T, spec.oracle_cap);
        result.interval = interval_from_spectrum(sr);
        result.rho_opt_value = rho_opt(*result.interval);
    }

    for (std::size_t si = 0; si < spec.solvers.size(); ++si) {
        const SolverChoice& choice = spec.solvers[si];
        choice.config.validate(result.interval ? &*result.interval : nullptr);

        const int reps = is_randomized(choice) ? spec.repetitions : 1;
        std::vector<SolveReport> reports(static_cast<std::size_t>(reps));
        std::vector<std::uint64_t> seeds(static_cast<std::size_t>(reps));
        for (int rep = 0; rep < reps; ++rep)
            seeds[static_cast<std::size_t>(rep)] =
                derive_seed(derive_seed(spec.seed, si), static_cast<std::uint64_t>(rep));

        // Repetitions are independent; the per-rep seeds above make the
        // outcome independent of scheduling.
        std::exception_ptr failure;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int rep = 0; rep < reps; ++rep) {
            try {
                reports[static_cast<std::size_t>(rep)] =
                    run_one(choice, problem, result.interval, seeds[static_cast<std::size_t>(rep)]);
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);

        SolverTrace trace;
        trace.label = choice.label.empty() ? kind_name(choice.kind) : choice.label;
        trace.reps = reps;
        trace.termination = reports[0].termination;

        std::size_t longest = 0;
        for (const auto& r : reports) longest = std::max(longest, r.trace.size());

        trace.residuals.resize(longest);
        for (std::size_t i = 0; i < longest; ++i) {
            // Geometric mean across repetitions. A run that stopped early
            // holds its final residual from then on, so shorter runs do not
            // drop out of the average.
            double log_sum = 0.0;
            for (const auto& r : reports) {
                const double v = i < r.trace.size() ? r.trace[i] : r.trace.back();
                log_sum += std::log(std::max(v, 1e-300));
            }
            trace.residuals[i] = std::exp(log_sum / static_cast<double>(reports.size()));
        }
        for (const auto& r : reports)
            if (r.trace.size() == longest) {
                trace.counters = r.trace_counters;
                break;
            }

        if (result.interval) {
            trace.bound.resize(longest);
            for (std::size_t i = 0; i < longest; ++i)
                trace.bound[i] = bound_factor(choice, *result.interval, static_cast<int>(i)) *
                                 trace.residuals[0];
        }
        result.traces.push_back(std::move(trace));
    }

    if (!spec.out_prefix.empty()) {
        const std::filesystem::path prefix(spec.out_prefix);
        if (prefix.has_parent_path()) std::filesystem::create_directories(prefix.parent_path());
        write_trace_csv(result, spec.out_prefix + ".csv");
        write_summary_json(result, spec, spec.out_prefix + ".json");
    }
    return result;
}

void write_trace_csv(const ExperimentResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "solver,iter,res_tnorm,matvecs,precs,inner_products,bound\n";
    char buf[64];
    for (const auto& t : result.traces) {
        for (std::size_t i = 0; i < t.residuals.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", t.residuals[i]);
            out << t.label << "," << i << "," << buf << "," << t.counters[i].matvecs << ","
                << t.counters[i].precs << "," << t.counters[i].inner_products << ",";
            if (!t.bound.empty() && std::isfinite(t.bound[i])) {
                std::snprintf(buf, sizeof(buf), "%.17g", t.bound[i]);
                out << buf;
            }
            out << "\n";
        }
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

void write_summary_json(const ExperimentResult& result, const ExperimentSpec& spec,
                        const std::string& path) {
    json j;
    j["problem"] = {{"label", result.problem_label},
                    {"generator", result.problem_meta.generator},
                    {"n", result.n},
                    {"seed", spec.seed}};
    if (result.problem_meta.generator == "shifted_laplacian") {
        j["problem"]["m"] = result.problem_meta.grid;
        j["problem"]["sigma"] = result.problem_meta.sigma;
    } else if (result.problem_meta.generator == "control_saddle_problem") {
        j["problem"]["m"] = result.problem_meta.grid;
        j["problem"]["tau"] = result.problem_meta.tau;
        j["problem"]["rhs"] = result.problem_meta.rhs;
        j["problem"]["note"] =
            "block preconditioner uses exact sparse Cholesky; spectral intervals are "
            "derived from the oracle, not quoted";
    }
    if (result.interval) {
        j["interval"] = {{"a", result.interval->a},
                         {"b", result.interval->b},
                         {"c", result.interval->c},
                         {"d", result.interval->d}};
        j["rho_opt"] = *result.rho_opt_value;
    }
    j["solvers"] = json::array();
    for (const auto& t : result.traces) {
        const auto& last = t.counters.back();
        j["solvers"].push_back({{"label", t.label},
                                {"iterations", t.residuals.size() - 1},
                                {"initial_residual", t.residuals.front()},
                                {"final_residual", t.residuals.back()},
                                {"termination", to_string(t.termination)},
                                {"reps", t.reps},
                                {"matvecs", last.matvecs},
                                {"precs", last.precs},
                                {"inner_products", last.inner_products},
                                {"monitor_inner_products", last.monitor_inner_products}});
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

std::string spectrum_report_json(const std::string& descriptor, std::uint64_t seed,
                                 index_t cap) {
    const ProblemInstance problem = make_problem(descriptor, seed);
    const SpectrumReport sr = spectrum_oracle(problem.A, *problem.T, cap);
    const IntervalPair I = interval_from_spectrum(sr);

    json j;
    j["problem"] = problem.label;
    j["n"] = sr.size();
    j["p"] = sr.negative_count;
    j["lambda_min"] = sr.lambda_min();
    j["lambda_neg_max"] = sr.lambda_neg_max();
    j["lambda_pos_min"] = sr.lambda_pos_min();
    j["lambda_max"] = sr.lambda_max();
    j["a"] = I.a;
    j["b"] = I.b;
    j["c"] = I.c;
    j["d"] = I.d;
    j["rho_opt"] = rho_opt(I);
    j["beta_opt"] = beta_opt(I);
    j["alpha_opt"] = alpha_opt(I);
    return j.dump(2);
}

void generate_problem_files(const std::string& descriptor, std::uint64_t seed,
                            const std::string& out_dir) {
    const ProblemInstance problem = make_problem(descriptor, seed);
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);

    write_matrix_market(problem.A, (dir / "A.mtx").string());

    json j;
    j["descriptor"] = descriptor;
    j["generator"] = problem.meta.generator;
    j["label"] = problem.label;
    j["n"] = problem.dim();
    j["seed"] = seed;
    j["rhs"] = problem.meta.rhs;
    j["files"] = {{"A", "A.mtx"}};

    if (problem.meta.generator == "shifted_laplacian") {
        j["m"] = problem.meta.grid;
        j["sigma"] = problem.meta.sigma;
        write_matrix_market(laplacian_2d(problem.meta.grid), (dir / "L.mtx").string());
        j["files"]["L"] = "L.mtx";
        j["preconditioner"] = "inverse of L (exact sparse Cholesky)";
    } else if (problem.meta.generator == "control_saddle_problem") {
        j["m"] = problem.meta.grid;
        j["tau"] = problem.meta.tau;
        SparseMatrix K, M;
        q1_stiffness_mass(problem.meta.grid, K, M);
        write_matrix_market(K, (dir / "K.mtx").string());
        write_matrix_market(M, (dir / "M.mtx").string());
        j["files"]["K"] = "K.mtx";
        j["files"]["M"] = "M.mtx";
        j["preconditioner"] = "blockdiag((1/2tau) M^-1, M^-1, K^-1 M K^-1), exact Cholesky";
    } else {
        j["preconditioner"] = "identity";
    }
    j["vectors"] = "f and x0 are reproducible from the seed (uniform(-1,1), "
                   "streams rhs/x0)";

    std::ofstream out(dir / "problem.json");
    if (!out) throw IoError("cannot write problem.json in '" + out_dir + "'");
    out << j.dump(2) << "\n";
}

} // namespace sid
