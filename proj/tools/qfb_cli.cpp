// qfb: single-photon feedback simulations from the command line.

#include "qfb/analytic.hpp"
#include "qfb/pathsum.hpp"
#include "qfb/scenarios.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

using namespace qfb;

namespace {

struct Globals {
    std::string config;
    std::string out;
    std::optional<int> dt_per_tau;
    bool quiet = false;
};

enum Exit { ok = 0, numerical_failure = 1, check_failed = 2 };

Scenario base_scenario(const Globals& g)
{
    Scenario s = g.config.empty() ? parse_config_text("", "<defaults>") : parse_config(g.config);
    if (g.dt_per_tau)
        s.steps_per_delay = *g.dt_per_tau;
    if (!g.out.empty())
        s.output_dir = g.out;
    return s;
}

int run(const Scenario& s, const Globals& g)
{
    const ScenarioResult r = run_scenario(s);
    if (!g.quiet) {
        std::cout << r.report.format();
        for (const auto& f : r.files)
            std::cout << "wrote " << f.string() << '\n';
    }
    return r.report.all_passed() ? ok : check_failed;
}

int single_solver(Solver solver, const Globals& g)
{
    Scenario s = base_scenario(g);
    s.solvers = {solver};
    return run(s, g);
}

void print_c(const char* label, cplx z)
{
    std::printf("%s = %.15g %+.15gi  |.|^2 = %.15g\n", label, z.real(), z.imag(), std::norm(z));
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Single-photon feedback in a semi-infinite waveguide"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--config", g.config, "key=value configuration file")->check(CLI::ExistingFile);
    app.add_option("--out", g.out, "output directory");
    app.add_option("--dt-per-tau", g.dt_per_tau, "integration steps per delay")->check(CLI::PositiveNumber);
    app.add_flag("--quiet", g.quiet, "suppress the report on stdout");

    int code = ok;

    auto* cont = app.add_subcommand("simulate-continuum", "mode-resolved waveguide model");
    cont->callback([&] { code = single_solver(Solver::continuum, g); });

    bool no_feedback = false;
    auto* dde = app.add_subcommand("simulate-dde", "delay differential equation");
    dde->add_flag("--no-feedback", no_feedback, "drop the delayed term");
    dde->callback([&] { code = single_solver(no_feedback ? Solver::dde_nofeedback : Solver::dde, g); });

    auto* series = app.add_subcommand("series", "exact interval series (kappa = 2 gamma)");
    series->callback([&] { code = single_solver(Solver::series, g); });

    auto* longtime = app.add_subcommand("long-time", "asymptotic solution at resonance");
    longtime->callback([&] { code = single_solver(Solver::long_time, g); });

    auto* poles = app.add_subcommand("poles", "roots of the characteristic function");
    poles->callback([&] {
        const Scenario s = base_scenario(g);
        const PoleSet set = find_poles(s.params, SearchBox::default_for(s.params));
        std::cout << s.params.describe() << '\n';
        if (!set.diagnostic.empty())
            std::cout << set.diagnostic << '\n';
        for (const Pole& p : set.poles)
            std::printf("s = %+.12f %+.12fi   residue = %+.9f %+.9fi   |D| = %.2e\n", p.s.real(),
                        p.s.imag(), p.residue.real(), p.residue.imag(), p.residual);
        std::printf("%zu poles from %zu seeds (%zu converged)\n", set.poles.size(), set.seeds,
                    set.converged_seeds);
    });

    int order = 12;
    double at_over_tau = 0.5;
    bool show_terms = false;
    auto* neu = app.add_subcommand("neumann", "photon-path series truncated at a given order");
    neu->add_option("--order", order, "highest order kept")->check(CLI::Range(1, neumann_max_order));
    neu->add_option("--at", at_over_tau, "evaluation time in units of tau")->check(CLI::NonNegativeNumber);
    neu->add_flag("--terms", show_terms, "print the cg coefficients");
    neu->callback([&] {
        const Scenario s = base_scenario(g);
        const auto& p = s.params;
        const NeumannAmplitudes a = neumann_series(order, p.gamma(), p.kappa(), p.feedback_phase());
        const double t = at_over_tau * p.tau();
        std::printf("order %d, t = %.6g tau\n", order, at_over_tau);
        print_c("ce", a.ce.evaluate(t, p.tau()));
        print_c("cg", a.cg.evaluate(t, p.tau()));
        if (show_terms)
            std::cout << "# re im j p   (coefficient of (t - j tau)^p / p!)\n" << a.cg.to_text();
    });

    std::string scenario_name;
    auto* scen = app.add_subcommand("scenario", "run fig2, fig3, fig4, fig5 or custom");
    scen->add_option("name", scenario_name, "scenario name")->required();
    scen->callback([&] {
        Scenario s;
        if (scenario_name == "custom") {
            if (g.config.empty())
                throw config_error("scenario custom needs --config");
            s = base_scenario(g);
        } else {
            if (!g.config.empty())
                throw config_error("scenario " + scenario_name +
                                   " has frozen parameters; --config is only for custom");
            s = named_scenario(scenario_name);
            if (g.dt_per_tau)
                s.steps_per_delay = *g.dt_per_tau;
            if (!g.out.empty())
                s.output_dir = g.out;
        }
        code = run(s, g);
    });

    std::string file_a, file_b;
    double from = 0.0, to = -1.0;
    auto* cmp = app.add_subcommand("compare", "compare two trajectory files");
    cmp->add_option("fileA", file_a)->required()->check(CLI::ExistingFile);
    cmp->add_option("fileB", file_b)->required()->check(CLI::ExistingFile);
    cmp->add_option("--from", from, "window start (time units)");
    cmp->add_option("--to", to, "window end (default: common end)");
    cmp->callback([&] {
        const Trajectory a = read_trajectory_file(file_a);
        const Trajectory b = read_trajectory_file(file_b);
        const double end = to >= 0.0 ? to : std::min(a.t_end(), b.t_end());
        ScenarioReport rep;
        rep.scenario = "compare";
        rep.comparisons.push_back(compare_trajectories(a, b, {from, end}, file_a, file_b));
        std::cout << rep.format();
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const config_error& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return numerical_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return numerical_failure;
    }
    return code;
}
