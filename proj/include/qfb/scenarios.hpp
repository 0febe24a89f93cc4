#ifndef QFB_SCENARIOS_HPP
#define QFB_SCENARIOS_HPP

#include "qfb/core.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfb {

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Solver { continuum, dde, dde_nofeedback, series, long_time };

std::string to_string(Solver s);
Solver solver_from_string(const std::string& name);

struct Scenario {
    std::string name = "fig4";  ///< fig2, fig3, fig4, fig5 or custom
    PhysicalParams params = PhysicalParams::from_rates(1.0, 2.0, 2.0 * pi);
    std::vector<Solver> solvers{Solver::dde, Solver::long_time};
    double t_end = 12.0 * 2.0 * pi;
    int steps_per_delay = 1000;
    int output_stride = 1;
    std::filesystem::path output_dir = "qfb_out";

    // mode-resolved solver
    double bandwidth_over_kappa = 40.0;
    double resolution_factor = 10.0;
    double speed = 1.0;

    int series_terms = 3;
};

/// One of fig2 .. fig5, each with a frozen parameter set.
Scenario named_scenario(const std::string& name);

/**
 * key=value configuration, one per line; '#' starts a comment.
 *
 * Keys and defaults (the defaults reproduce scenario fig4):
 *   gamma=1  kappa_over_gamma=2 (or kappa)  gamma_tau_over_2pi=1 (or tau)
 *   feedback_phase_deg=0  t_end_over_tau=12  steps_per_delay=1000
 *   solvers=dde,long-time  output_dir=qfb_out
 */
Scenario parse_config(const std::filesystem::path& path);
Scenario parse_config_text(const std::string& text, const std::string& source = "<text>");

// ---------------------------------------------------------------------------
// Trajectory files: a '#' line with the parameters, a header row
// "t,re_ce,im_ce,re_cg,im_cg,pop_e,pop_g" and one row per sample.
// ---------------------------------------------------------------------------

void write_trajectory(std::ostream& os, const Trajectory& traj, const std::string& comment);
void write_trajectory_file(const std::filesystem::path& path, const Trajectory& traj,
                           const std::string& comment);
Trajectory read_trajectory(std::istream& is);
Trajectory read_trajectory_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Comparison and reporting
// ---------------------------------------------------------------------------

struct ComparisonReport {
    std::string label_a;
    std::string label_b;
    TimeWindow window{0.0, 0.0};
    std::size_t samples = 0;
    double max_abs_population_diff = 0.0;  ///< |cg|^2
    double mean_abs_population_diff = 0.0;
    double max_abs_population_e_diff = 0.0;  ///< NaN when a side lacks ce
    double mean_abs_population_e_diff = 0.0;
    std::optional<OscillationStats> stats_a;
    std::optional<OscillationStats> stats_b;
};

/// Compares two trajectories sample by sample on a window. The grids must
/// coincide up to an integer stride; nothing is interpolated.
ComparisonReport compare_trajectories(const Trajectory& a, const Trajectory& b, TimeWindow window,
                                      const std::string& label_a = "a",
                                      const std::string& label_b = "b");

struct CheckResult {
    std::string name;
    std::string source;  ///< solver or solver pair the value came from
    TimeWindow window{0.0, 0.0};
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool relative = false;
    bool passed = false;
    std::string note;

    std::string format() const;
};

/// Absolute or relative band check |measured - expected| <= tolerance.
CheckResult make_check(std::string name, std::string source, TimeWindow window, double measured,
                       double expected, double tolerance, bool relative, std::string note = {});
/// One-sided check measured <= limit.
CheckResult make_upper_bound(std::string name, std::string source, TimeWindow window,
                             double measured, double limit, std::string note = {});

struct ScenarioReport {
    std::string scenario;
    std::vector<ComparisonReport> comparisons;
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;

    bool all_passed() const;
    std::string format() const;
};

struct ScenarioResult {
    std::map<std::string, Trajectory> trajectories;
    ScenarioReport report;
    std::vector<std::filesystem::path> files;
};

/// Runs the scenario's solvers, evaluates its checks and writes one
/// trajectory file per solver plus report.txt into scenario.output_dir.
/// Set write_files = false to skip the filesystem.
ScenarioResult run_scenario(const Scenario& scenario, bool write_files = true);

}  // namespace qfb

#endif  // QFB_SCENARIOS_HPP
