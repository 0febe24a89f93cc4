#include "qfb/scenarios.hpp"

#include "qfb/analytic.hpp"
#include "qfb/dde.hpp"
#include "qfb/quasi_continuum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace qfb {

namespace {

std::string grid_text(const Trajectory& t)
{
    std::ostringstream os;
    os.precision(12);
    os << "t0=" << t.t0() << " dt=" << t.dt() << " n=" << t.size();
    return os.str();
}

bool near_integer(double x, double& rounded)
{
    rounded = std::round(x);
    return std::abs(x - rounded) <= 1e-6;
}

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

}  // namespace

ComparisonReport compare_trajectories(const Trajectory& a, const Trajectory& b, TimeWindow window,
                                      const std::string& label_a, const std::string& label_b)
{
    const bool a_coarse = a.dt() >= b.dt();
    const Trajectory& coarse = a_coarse ? a : b;
    const Trajectory& fine = a_coarse ? b : a;
    double ratio = 0.0, offset = 0.0;
    const bool ok = near_integer(coarse.dt() / fine.dt(), ratio) &&
                    near_integer((coarse.t0() - fine.t0()) / fine.dt(), offset);
    if (!ok || ratio < 1.0)
        throw std::invalid_argument("grid mismatch: " + label_a + " has " + grid_text(a) + ", " +
                                    label_b + " has " + grid_text(b));

    const auto [first, last] = coarse.index_range(window);
    fine.index_range(window);  // both must cover the window

    ComparisonReport r;
    r.label_a = label_a;
    r.label_b = label_b;
    r.window = window;
    double sum_g = 0.0, sum_e = 0.0;
    for (std::size_t i = first; i <= last; ++i) {
        const double fi = offset + static_cast<double>(i) * ratio;
        if (fi < 0.0 || fi > static_cast<double>(fine.size() - 1))
            throw std::out_of_range("window not covered by " + (a_coarse ? label_b : label_a));
        const AmplitudeState& sc = coarse[i];
        const AmplitudeState& sf = fine[static_cast<std::size_t>(fi)];
        const double dg = std::abs(sc.population_g() - sf.population_g());
        const double de = std::abs(sc.population_e() - sf.population_e());
        r.max_abs_population_diff = std::max(r.max_abs_population_diff, dg);
        sum_g += dg;
        if (std::isnan(de) || std::isnan(r.max_abs_population_e_diff))
            r.max_abs_population_e_diff = nan;
        else
            r.max_abs_population_e_diff = std::max(r.max_abs_population_e_diff, de);
        sum_e += de;
        ++r.samples;
    }
    r.mean_abs_population_diff = sum_g / static_cast<double>(r.samples);
    r.mean_abs_population_e_diff = sum_e / static_cast<double>(r.samples);

    try {
        r.stats_a = extract_oscillation_stats(a, window, Observable::population_g);
    } catch (const insufficient_data_error&) {
    }
    try {
        r.stats_b = extract_oscillation_stats(b, window, Observable::population_g);
    } catch (const insufficient_data_error&) {
    }
    return r;
}

CheckResult make_check(std::string name, std::string source, TimeWindow window, double measured,
                       double expected, double tolerance, bool relative, std::string note)
{
    CheckResult c;
    c.name = std::move(name);
    c.source = std::move(source);
    c.window = window;
    c.measured = measured;
    c.expected = expected;
    c.tolerance = tolerance;
    c.relative = relative;
    c.note = std::move(note);
    const double band = relative ? tolerance * std::abs(expected) : tolerance;
    c.passed = std::abs(measured - expected) <= band;
    return c;
}

CheckResult make_upper_bound(std::string name, std::string source, TimeWindow window,
                             double measured, double limit, std::string note)
{
    CheckResult c;
    c.name = std::move(name);
    c.source = std::move(source);
    c.window = window;
    c.measured = measured;
    c.expected = limit;
    c.tolerance = 0.0;
    c.note = std::move(note);
    c.passed = measured <= limit;
    return c;
}

std::string CheckResult::format() const
{
    std::ostringstream os;
    os << (passed ? "[PASS] " : "[FAIL] ") << name << " (" << source << ", t in ["
       << num(window.begin) << ", " << num(window.end) << "]): measured " << num(measured);
    if (tolerance == 0.0 && !relative)
        os << ", required <= " << num(expected);
    else if (relative)
        os << ", expected " << num(expected) << " +/- " << num(100.0 * tolerance) << "%";
    else
        os << ", expected " << num(expected) << " +/- " << num(tolerance);
    if (!note.empty())
        os << "  [" << note << "]";
    return os.str();
}

bool ScenarioReport::all_passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string ScenarioReport::format() const
{
    std::ostringstream os;
    os << "scenario " << scenario << '\n';
    for (const auto& c : comparisons) {
        os << "compare " << c.label_a << " vs " << c.label_b << " on [" << num(c.window.begin)
           << ", " << num(c.window.end) << "]: max |d pop_g| = " << num(c.max_abs_population_diff)
           << ", mean |d pop_g| = " << num(c.mean_abs_population_diff)
           << ", max |d pop_e| = " << num(c.max_abs_population_e_diff) << '\n';
        const auto stats_line = [&](const std::string& label, const std::optional<OscillationStats>& s) {
            if (!s) {
                os << "  " << label << ": insufficient data for oscillation stats\n";
                return;
            }
            os << "  " << label << ": amplitude " << num(s->amplitude) << ", frequency "
               << num(s->frequency) << ", decay rate " << num(s->decay_rate) << '\n';
        };
        stats_line(c.label_a, c.stats_a);
        stats_line(c.label_b, c.stats_b);
    }
    for (const auto& c : checks)
        os << c.format() << '\n';
    for (const auto& n : notes)
        os << "note: " << n << '\n';
    os << (all_passed() ? "all checks passed" : "some checks failed") << '\n';
    return os.str();
}

namespace {

Trajectory sample_cg_only(double dt, std::size_t count, const auto& cg_at)
{
    std::vector<AmplitudeState> samples;
    samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        samples.push_back({cplx(nan, nan), cg_at(static_cast<double>(i) * dt)});
    return Trajectory(0.0, dt, std::move(samples));
}

struct ContinuumRun {
    Trajectory trajectory;
    double max_norm_deviation;
};

ContinuumRun run_continuum(const Scenario& s, double t_end, double bandwidth_factor)
{
    const PhysicalParams& p = s.params;
    const double rate = p.kappa() > 0.0 ? p.kappa() : p.gamma();
    const double bandwidth = bandwidth_factor * s.bandwidth_over_kappa * rate;
    const PhysicalParams wp = with_resonant_carrier(p.with_waveguide(s.speed), bandwidth);
    const ModeGrid grid = build_mode_grid(wp, t_end, {bandwidth, s.resolution_factor});

    const double dde_dt = p.tau() / s.steps_per_delay;
    const int sub = std::max(1, static_cast<int>(std::ceil(dde_dt * 0.5 * bandwidth / continuum_phase_guard - 1e-9)));
    const ContinuumResult r =
        integrate_continuum(wp, grid, t_end, dde_dt / sub, sub * s.output_stride);
    return {r.trajectory, r.max_norm_deviation};
}

double max_population(const Trajectory& t, TimeWindow w, Observable which)
{
    const auto [first, last] = t.index_range(w);
    double m = 0.0;
    for (std::size_t i = first; i <= last; ++i)
        m = std::max(m, sample_observable(t[i], which));
    for (const Peak& pk : find_peaks(t, w, which))
        m = std::max(m, pk.value);
    return m;
}

}  // namespace

ScenarioResult run_scenario(const Scenario& s, bool write_files)
{
    const PhysicalParams& p = s.params;
    const double tau = p.tau();
    const DdeConfig config(tau, s.steps_per_delay, true, s.output_stride);
    const double out_dt = config.dt() * s.output_stride;
    const auto count = static_cast<std::size_t>(std::ceil(s.t_end / config.dt() - 1e-9)) /
                           static_cast<std::size_t>(s.output_stride) + 1;

    ScenarioResult result;
    ScenarioReport& report = result.report;
    report.scenario = s.name;
    double continuum_norm_dev = nan;

    for (Solver solver : s.solvers) {
        const std::string name = to_string(solver);
        try {
            switch (solver) {
            case Solver::dde:
                result.trajectories.emplace(name, integrate_dde(p, config, s.t_end));
                break;
            case Solver::dde_nofeedback:
                result.trajectories.emplace(name, integrate_dde_nofeedback(p, config, s.t_end));
                break;
            case Solver::continuum: {
                ContinuumRun run = run_continuum(s, s.t_end, 1.0);
                continuum_norm_dev = run.max_norm_deviation;
                result.trajectories.emplace(name, std::move(run.trajectory));
                break;
            }
            case Solver::series: {
                const int n_max = std::max(s.series_terms,
                                           static_cast<int>(std::ceil(s.t_end / tau)));
                result.trajectories.emplace(
                    name, sample_cg_only(out_dt, count, [&](double t) {
                        return series_cg(t, p.gamma(), p.kappa(), tau, p.feedback_phase(), n_max).value;
                    }));
                break;
            }
            case Solver::long_time: {
                const long m = std::lround(p.gamma() * tau / (2.0 * pi));
                if (m < 1)
                    throw std::invalid_argument("long-time solution needs gamma tau >= 2 pi");
                const ResonanceReport res = check_resonance(p.gamma(), std::arg(p.feedback_phase()) / tau, tau, 1e-9);
                if (!res.condition_i)
                    report.notes.push_back("long-time asymptote evaluated off resonance (residuals " +
                                           num(res.residual_upper) + ", " + num(res.residual_lower) + ")");
                result.trajectories.emplace(
                    name, sample_cg_only(out_dt, count, [&](double t) {
                        return long_time_cg(t, p.gamma(), p.kappa(), static_cast<int>(m));
                    }));
                break;
            }
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("scenario " + s.name + ", solver " + name + ": " + e.what());
        }
    }

    const auto has = [&](const char* n) { return result.trajectories.count(n) > 0; };
    const auto traj = [&](const char* n) -> const Trajectory& { return result.trajectories.at(n); };
    const double x = p.kappa() / p.gamma();

    if (s.name == "fig2" && has("continuum") && has("dde")) {
        const TimeWindow all{0.0, s.t_end};
        report.checks.push_back(make_upper_bound("norm conservation |norm - 1|", "continuum", all,
                                                 continuum_norm_dev, 1e-6));
        const TimeWindow early{0.0, std::min(6.0 * tau, s.t_end)};
        const ComparisonReport c = compare_trajectories(traj("continuum"), traj("dde"), early,
                                                        "continuum", "dde");
        report.comparisons.push_back(c);
        report.checks.push_back(make_upper_bound("max |cg|^2 difference", "continuum vs dde",
                                                 early, c.max_abs_population_diff, 0.01));
        const TimeWindow revival{8.0 * tau, 12.0 * tau};
        if (s.t_end >= revival.end - 1e-9) {
            const OscillationStats st = extract_oscillation_stats(
                traj("continuum"), revival, Observable::population_g, FrequencyLevel::signal);
            report.checks.push_back(make_check("revival |cg|^2 frequency (period pi/gamma)", "continuum",
                                               revival, st.frequency, 2.0 * p.gamma(), 0.01, true));
        }
        const TimeWindow second{tau, 2.0 * tau};
        const double ratio = max_population(traj("continuum"), second, Observable::population_g) /
                             max_population(traj("continuum"), second, Observable::population_e);
        report.checks.push_back(make_upper_bound("max |cg|^2 / max |ce|^2 in second interval",
                                                 "continuum", second, ratio, 1.0,
                                                 "qualitative ordering of the maxima"));
    }

    if (s.name == "fig3" && has("dde") && has("series")) {
        const TimeWindow w{0.0, std::min(3.0 * tau, s.t_end)};
        const ComparisonReport c = compare_trajectories(traj("dde"), traj("series"), w, "dde", "series");
        report.comparisons.push_back(c);
        report.checks.push_back(make_upper_bound("max |cg|^2 difference", "dde vs series", w,
                                                 c.max_abs_population_diff, 1e-6));
    }

    if (s.name == "fig4" && has("dde")) {
        const long m = std::lround(p.gamma() * tau / (2.0 * pi));
        const double target = max_feedback_amplitude(x, static_cast<int>(std::max(1L, m)));
        const TimeWindow late{10.0 * tau, 12.0 * tau};
        const OscillationStats st = extract_oscillation_stats(traj("dde"), late, Observable::population_g,
                                                              FrequencyLevel::amplitude);
        report.checks.push_back(make_check("asymptotic peak |cg|^2", "dde", late, st.amplitude,
                                           target, 0.02, true));
        report.checks.push_back(make_check("asymptotic oscillation frequency (amplitude level)", "dde",
                                           late, st.frequency, p.gamma(), 0.01, true));
        const TimeWindow first{0.0, tau};
        const double first_max = max_population(traj("dde"), first, Observable::population_g);
        double closed_max = 0.0;
        const auto [i0, i1] = traj("dde").index_range(first);
        for (std::size_t i = i0; i <= i1; ++i)
            closed_max = std::max(closed_max, std::norm(damped_jcm_cg(traj("dde").time(i), p.gamma(), p.kappa())));
        report.checks.push_back(make_check("recovery ratio (asymptotic peak / first-interval max)", "dde",
                                           late, st.amplitude / first_max, target / closed_max, 0.005,
                                           false, "often quoted as roughly 15%"));
        if (has("long-time")) {
            report.comparisons.push_back(
                compare_trajectories(traj("dde"), traj("long-time"), late, "dde", "long-time"));
        }
    }

    if (s.name == "fig5" && has("dde") && has("dde-nofeedback")) {
        const TimeWindow post{tau, s.t_end};
        const std::vector<Peak> peaks = find_peaks(traj("dde"), post, Observable::population_g);
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const Peak& pk : peaks) {
            lo = std::min(lo, pk.value);
            hi = std::max(hi, pk.value);
        }
        const double spread = peaks.empty() ? nan : (hi - lo) / hi;
        report.checks.push_back(make_upper_bound("relative spread of |cg|^2 peaks with feedback",
                                                 "dde", post, spread, 0.01,
                                                 std::to_string(peaks.size()) + " peaks"));
        const TimeWindow all{0.0, s.t_end};
        const OscillationStats off =
            extract_oscillation_stats(traj("dde-nofeedback"), all, Observable::population_g);
        report.checks.push_back(make_check("|cg|^2 envelope decay rate without feedback",
                                           "dde-nofeedback", all, off.decay_rate, p.kappa(), 0.05, true));
        const ResonanceReport res =
            check_resonance(p.gamma(), std::arg(p.feedback_phase()) / tau, tau, 1e-9);
        report.notes.push_back("pole at +i gamma on the axis: " +
                               std::string(res.upper_pole_on_axis ? "yes" : "no") +
                               ", at -i gamma: " + std::string(res.lower_pole_on_axis ? "yes" : "no") +
                               " (residuals " + num(res.residual_upper) + ", " + num(res.residual_lower) + ")");
    }

    if (write_files) {
        std::filesystem::create_directories(s.output_dir);
        std::ostringstream comment;
        comment << "scenario=" << s.name << ' ' << p.describe() << " steps_per_delay=" << s.steps_per_delay
                << " output_stride=" << s.output_stride;
        for (const auto& [name, t] : result.trajectories) {
            const auto path = s.output_dir / (name + ".csv");
            write_trajectory_file(path, t, comment.str() + " solver=" + name);
            result.files.push_back(path);
        }
        const auto report_path = s.output_dir / "report.txt";
        std::ofstream out(report_path, std::ios::binary);
        out << "# " << comment.str() << '\n' << report.format();
        result.files.push_back(report_path);
    }
    return result;
}

}  // namespace qfb
