#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "pairspace/io.hpp"
#include "pairspace/pairspace.hpp"
#include "pairspace/version.hpp"

namespace pairspace::cli {

enum class Command { Classify, SolveCollinear, Bounds, Dziobek, Simulate, Sweep };

inline const char* to_string(Command c) {
    switch (c) {
        case Command::Classify: return "classify";
        case Command::SolveCollinear: return "solve-collinear";
        case Command::Bounds: return "bounds";
        case Command::Dziobek: return "dziobek";
        case Command::Simulate: return "simulate";
        case Command::Sweep: return "sweep";
    }
    return "?";
}

/// Fully resolved invocation. Every report echoes the fields that shaped it,
/// so a report plus this block reproduces the run byte for byte.
struct RunConfig {
    Command command = Command::Classify;
    std::string input_path;
    std::string output_path;     // empty -> stdout
    std::string report_path;     // simulate: conservation JSON
    std::string efunction_path;  // solve-collinear: optional E(x) samples CSV
    std::vector<double> masses_inline;
    std::vector<int> ordering; // 0-based
    bool all_orderings = false;
    double tol = 1e-10;
    double dt = 0.0;   // 0 -> period/2000 with the period read off the fitted lambda
    int steps = 0;     // 0 -> 20000
    IntegratorMethod method = IntegratorMethod::RK4;
    unsigned seed = 12345;
    int trials = 8;
    int sweep_bodies = 3;
    int sweep_count = 100;
    int grid = 0; // N=3 only: grid x grid over (m1, m3) with m2 = 1
    double mass_lo = 0.1;
    double mass_hi = 10.0;
};

namespace detail {

inline nlohmann::json config_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["command"] = to_string(cfg.command);
    j["input"] = cfg.input_path;
    j["output"] = cfg.output_path;
    j["tol"] = cfg.tol;
    j["seed"] = cfg.seed;
    switch (cfg.command) {
        case Command::Simulate:
            j["dt"] = cfg.dt;
            j["steps"] = cfg.steps;
            j["method"] = cfg.method == IntegratorMethod::RK4 ? "rk4" : "adaptive";
            j["report"] = cfg.report_path;
            break;
        case Command::SolveCollinear:
        case Command::Bounds: {
            nlohmann::json ord = nlohmann::json::array();
            for (int b : cfg.ordering) ord.push_back(b + 1);
            j["ordering"] = ord;
            j["masses"] = cfg.masses_inline;
            if (cfg.command == Command::SolveCollinear) {
                j["efunction"] = cfg.efunction_path;
                j["all_orderings"] = cfg.all_orderings;
            }
            break;
        }
        case Command::Dziobek:
            j["trials"] = cfg.trials;
            break;
        case Command::Sweep:
            j["bodies"] = cfg.sweep_bodies;
            j["count"] = cfg.sweep_count;
            j["grid"] = cfg.grid;
            j["mass_lo"] = cfg.mass_lo;
            j["mass_hi"] = cfg.mass_hi;
            break;
        case Command::Classify:
            break;
    }
    return j;
}

inline void emit(const RunConfig& cfg, const nlohmann::json& payload,
                 const std::string* destination = nullptr) {
    nlohmann::json j = payload;
    j["version"] = kVersion;
    j["config"] = config_json(cfg);
    const std::string text = j.dump(2) + "\n";
    const std::string& dest = destination ? *destination : cfg.output_path;
    if (dest.empty())
        std::fputs(text.c_str(), stdout);
    else
        write_text_file(dest, text);
}

inline MassVector resolve_masses(const RunConfig& cfg) {
    if (!cfg.masses_inline.empty())
        return MassVector(cfg.masses_inline);
    if (cfg.input_path.empty())
        throw InputError("masses required: pass --masses or --input");
    return load_input(cfg.input_path).mass_vector();
}

inline std::vector<int> resolve_ordering(const RunConfig& cfg, std::size_t n) {
    if (cfg.ordering.empty()) {
        std::vector<int> identity(n);
        for (std::size_t i = 0; i < n; ++i) identity[i] = static_cast<int>(i);
        return identity;
    }
    if (cfg.ordering.size() != n)
        throw InputError("--ordering must list every body exactly once");
    return cfg.ordering;
}

inline int run_classify(const RunConfig& cfg) {
    const InputFile in = load_input(cfg.input_path);
    const MassVector mv = in.mass_vector();
    const SystemState state = in.state();
    const CentralityReport report = classification_report(mv, state, cfg.tol);
    emit(cfg, classification_json(report, mv.size()));
    return 0;
}

inline int run_solve_collinear(const RunConfig& cfg) {
    const MassVector mv = resolve_masses(cfg);

    if (cfg.all_orderings) {
        if (mv.size() > 7)
            throw InputError("--all-orderings is limited to 7 bodies");
        std::vector<int> perm(mv.size());
        for (std::size_t i = 0; i < mv.size(); ++i) perm[i] = static_cast<int>(i);
        nlohmann::json solutions = nlohmann::json::array();
        do {
            if (perm.front() > perm.back()) continue; // reversal gives the mirrored line
            const CollinearSolution sol = solve_moulton(mv, perm);
            nlohmann::json entry;
            nlohmann::json ordering = nlohmann::json::array();
            for (int b : sol.ordering) ordering.push_back(b + 1);
            entry["ordering"] = ordering;
            entry["alpha"] = sol.alpha;
            entry["beta"] = sol.beta;
            entry["length_ratio"] = sol.length_ratio;
            entry["residual_norm"] = sol.residual_norm;
            solutions.push_back(entry);
        } while (std::next_permutation(perm.begin(), perm.end()));
        nlohmann::json j;
        j["solutions"] = solutions;
        j["count"] = solutions.size();
        RunConfig resolved = cfg;
        resolved.masses_inline = mv.masses();
        emit(resolved, j);
        return 0;
    }

    RunConfig resolved = cfg;
    resolved.ordering = resolve_ordering(cfg, mv.size());
    resolved.masses_inline = mv.masses();
    const CollinearSolution sol = solve_moulton(mv, resolved.ordering);
    const MassVector slots = mv.permuted(resolved.ordering);
    emit(resolved, collinear_json(slots, sol));
    if (!cfg.efunction_path.empty())
        write_text_file(cfg.efunction_path, efunction_csv(slots, 1e-2, 1e2, 400));
    return 0;
}

inline int run_bounds(const RunConfig& cfg_in) {
    const MassVector mv = resolve_masses(cfg_in);
    RunConfig cfg = cfg_in;
    cfg.ordering = resolve_ordering(cfg_in, mv.size());
    cfg.masses_inline = mv.masses();
    const std::vector<int>& ordering = cfg.ordering;
    const MassVector slots = mv.permuted(ordering);
    nlohmann::json j;
    j["collapsed_root"] = collapsed_root(slots);
    j["length_bound"] = bracket_json(length_bound(slots));
    j["alpha_bound"] = bracket_json(alpha_bound(slots));
    if (slots.size() == 3) {
        j["three_body_bracket"] = bracket_json(three_body_bracket(slots));
        nlohmann::json quartics = nlohmann::json::array();
        for (std::size_t k = 0; k < 3; ++k) {
            const QuarticRoots roots = bracket_quartic_roots(slots, k);
            nlohmann::json q;
            q["pivot"] = k + 1;
            q["sigma"] = roots.sigma;
            q["tau"] = roots.tau;
            quartics.push_back(q);
        }
        j["quartic_roots"] = quartics;
    }
    emit(cfg, j);
    return 0;
}

inline int run_dziobek(const RunConfig& cfg) {
    const InputFile in = load_input(cfg.input_path);
    const SystemState state = in.state();
    const PairConfiguration pc = PairConfiguration::from_positions(state.positions);
    const AdmissibilityReport report = shape_admissible(pc, cfg.trials, cfg.tol, cfg.seed);
    emit(cfg, admissibility_json(report, pc));
    return 0;
}

inline int run_simulate(const RunConfig& cfg) {
    const InputFile in = load_input(cfg.input_path);
    const MassVector mv = in.mass_vector();
    const SystemState state = in.state();

    double dt = cfg.dt;
    int steps = cfg.steps;
    if (dt <= 0.0) {
        double lambda = 0.0;
        try {
            lambda = fit_lambda(mv, PairConfiguration::from_positions(state.positions), state.G)
                         .lambda;
        } catch (const std::exception&) {
            lambda = 0.0;
        }
        if (!(lambda > 0.0)) {
            const double d = state.diameter();
            lambda = state.G * mv.total() / (d * d * d);
        }
        dt = 2.0 * M_PI / std::sqrt(lambda) / 2000.0;
    }
    if (steps <= 0) steps = 20000;

    const Trajectory traj = integrate(mv, state, dt, steps, cfg.method);
    const ConservationReport report = conservation_report(mv, traj, state.G);

    if (!cfg.output_path.empty())
        write_text_file(cfg.output_path, trajectory_csv(traj));

    nlohmann::json j = conservation_json(report);
    j["collision"] = traj.collision;
    j["samples"] = traj.times.size();
    j["dt"] = dt;
    j["t_end"] = traj.times.back();
    RunConfig resolved = cfg;
    resolved.dt = dt;
    resolved.steps = steps;
    emit(resolved, j, &cfg.report_path); // conservation JSON goes to --report
    return 0;
}

inline int run_sweep(const RunConfig& cfg) {
    std::string csv =
        "index,masses,alpha,beta,length_ratio,residual_norm,collapsed_root,"
        "alpha_bound_case,alpha_bound,length_bound_case,length_bound,alpha_slack,length_slack,"
        "converged\n";

    std::vector<std::vector<double>> mass_sets;
    if (cfg.grid > 0) {
        if (cfg.sweep_bodies != 3)
            throw InputError("--grid sweeps need --bodies 3");
        for (int a = 0; a < cfg.grid; ++a)
            for (int b = 0; b < cfg.grid; ++b) {
                const double ta = cfg.grid == 1 ? 0.0 : static_cast<double>(a) / (cfg.grid - 1);
                const double tb = cfg.grid == 1 ? 0.0 : static_cast<double>(b) / (cfg.grid - 1);
                const double m1 = cfg.mass_lo * std::pow(cfg.mass_hi / cfg.mass_lo, ta);
                const double m3 = cfg.mass_lo * std::pow(cfg.mass_hi / cfg.mass_lo, tb);
                mass_sets.push_back({m1, 1.0, m3});
            }
    } else {
        std::mt19937 rng(cfg.seed);
        std::uniform_real_distribution<double> mass(cfg.mass_lo, cfg.mass_hi);
        for (int k = 0; k < cfg.sweep_count; ++k) {
            std::vector<double> m(cfg.sweep_bodies);
            for (double& v : m) v = mass(rng);
            mass_sets.push_back(std::move(m));
        }
    }

    int index = 0;
    for (const std::vector<double>& m : mass_sets) {
        const MassVector mv(m);
        csv += std::to_string(index++);
        csv += ",\"";
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i) csv += ' ';
            pairspace::detail::append_double(csv, m[i]);
        }
        csv += '"';
        try {
            const CollinearSolution sol = solve_moulton(mv);
            const double star = collapsed_root(mv);
            const BoundBracket ab = alpha_bound(mv);
            const BoundBracket lb = length_bound(mv);
            for (double v : {sol.alpha, sol.beta, sol.length_ratio, sol.residual_norm, star}) {
                csv += ',';
                pairspace::detail::append_double(csv, v);
            }
            csv += ',' + std::to_string(ab.case_id);
            csv += ',';
            pairspace::detail::append_double(csv, *ab.upper);
            csv += ',' + std::to_string(lb.case_id);
            csv += ',';
            pairspace::detail::append_double(csv, *lb.lower);
            csv += ',';
            pairspace::detail::append_double(csv, *ab.upper - sol.alpha);
            csv += ',';
            pairspace::detail::append_double(csv, sol.length_ratio - *lb.lower);
            csv += ",1\n";
        } catch (const ConvergenceError&) {
            csv += ",,,,,,,,,,,0\n";
        }
    }

    if (cfg.output_path.empty())
        std::fputs(csv.c_str(), stdout);
    else
        write_text_file(cfg.output_path, csv);
    return 0;
}

} // namespace detail

/// Dispatch a resolved config. Exit codes: 0 success, 2 validation problem,
/// 3 solver non-convergence.
inline int run(const RunConfig& cfg) {
    try {
        switch (cfg.command) {
            case Command::Classify: return detail::run_classify(cfg);
            case Command::SolveCollinear: return detail::run_solve_collinear(cfg);
            case Command::Bounds: return detail::run_bounds(cfg);
            case Command::Dziobek: return detail::run_dziobek(cfg);
            case Command::Simulate: return detail::run_simulate(cfg);
            case Command::Sweep: return detail::run_sweep(cfg);
        }
    } catch (const ConvergenceError& e) {
        std::fprintf(stderr, "pairspace: %s\n", e.what());
        return 3;
    } catch (const InputError& e) {
        std::fprintf(stderr, "pairspace: %s\n", e.what());
        return 2;
    } catch (const CollisionError& e) {
        std::fprintf(stderr, "pairspace: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "pairspace: %s\n", e.what());
        return 2;
    }
    return 2;
}

} // namespace pairspace::cli
