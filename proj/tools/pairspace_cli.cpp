// Command-line front door: reads JSON state files, runs the library, writes
// JSON/CSV reports.

#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pairspace/cli.hpp"

namespace {

using pairspace::cli::Command;
using pairspace::cli::RunConfig;

void add_io_options(CLI::App* cmd, RunConfig& cfg, bool input_required) {
    auto* in = cmd->add_option("--input,-i", cfg.input_path, "input state JSON");
    if (input_required) in->required();
    cmd->add_option("--output,-o", cfg.output_path, "output report path (default: stdout)");
    cmd->add_option("--tol", cfg.tol, "dimensionless tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", cfg.seed, "seed for deterministic sampling");
}

void add_mass_options(CLI::App* cmd, RunConfig& cfg, std::vector<int>& ordering_1based) {
    cmd->add_option("--masses,-m", cfg.masses_inline, "masses inline (overrides --input)")
        ->delimiter(',');
    cmd->add_option("--ordering", ordering_1based, "line ordering of bodies, e.g. 2,1,3")
        ->delimiter(',');
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pair-space N-body toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::vector<int> ordering_1based;
    std::string method = "rk4";

    CLI::App* classify = app.add_subcommand("classify", "centrality classification of a state");
    add_io_options(classify, cfg, true);

    CLI::App* solve =
        app.add_subcommand("solve-collinear", "solve the collinear configuration for an ordering");
    add_io_options(solve, cfg, false);
    add_mass_options(solve, cfg, ordering_1based);
    solve->add_option("--efunction", cfg.efunction_path, "also write E(x) samples CSV here");
    solve->add_flag("--all-orderings", cfg.all_orderings,
                    "solve every distinct ordering (up to reversal), N <= 7");

    CLI::App* bounds = app.add_subcommand("bounds", "collinear ratio and length bounds");
    add_io_options(bounds, cfg, false);
    add_mass_options(bounds, cfg, ordering_1based);

    CLI::App* dziobek =
        app.add_subcommand("dziobek", "mass-independent shape admissibility report");
    add_io_options(dziobek, cfg, true);
    dziobek->add_option("--trials", cfg.trials, "random probe directions")
        ->check(CLI::PositiveNumber);

    CLI::App* simulate = app.add_subcommand("simulate", "integrate and monitor conservation");
    add_io_options(simulate, cfg, true);
    simulate->add_option("--dt", cfg.dt, "step size (default: period/2000 from fitted lambda)");
    simulate->add_option("--steps", cfg.steps, "step count (default: 20000)");
    simulate->add_option("--method", method, "integrator")
        ->check(CLI::IsMember({"rk4", "adaptive"}));
    simulate->add_option("--report", cfg.report_path,
                         "conservation report JSON path (default: stdout)");

    CLI::App* sweep = app.add_subcommand("sweep", "batch collinear solves over mass sets");
    add_io_options(sweep, cfg, false);
    sweep->add_option("--bodies", cfg.sweep_bodies, "bodies per mass set")
        ->check(CLI::Range(3, 12));
    sweep->add_option("--count", cfg.sweep_count, "number of random mass sets")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--grid", cfg.grid, "N=3 only: grid size over (m1, m3) with m2 = 1");
    sweep->add_option("--mass-lo", cfg.mass_lo, "mass range lower end")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--mass-hi", cfg.mass_hi, "mass range upper end")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (classify->parsed()) cfg.command = Command::Classify;
    if (solve->parsed()) cfg.command = Command::SolveCollinear;
    if (bounds->parsed()) cfg.command = Command::Bounds;
    if (dziobek->parsed()) cfg.command = Command::Dziobek;
    if (simulate->parsed()) cfg.command = Command::Simulate;
    if (sweep->parsed()) cfg.command = Command::Sweep;

    cfg.method = method == "adaptive" ? pairspace::IntegratorMethod::AdaptiveRK
                                      : pairspace::IntegratorMethod::RK4;
    for (int b : ordering_1based) cfg.ordering.push_back(b - 1);

    return pairspace::cli::run(cfg);
}
