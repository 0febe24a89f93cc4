// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "qfb/analytic.hpp"
#include "qfb/dde.hpp"
#include "qfb/pathsum.hpp"
#include "qfb/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace qfb;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const CheckResult& find_check(const ScenarioReport& r, const std::string& prefix)
{
    for (const auto& c : r.checks)
        if (c.name.rfind(prefix, 0) == 0)
            return c;
    throw std::runtime_error("no check named " + prefix + " in scenario " + r.scenario);
}

Outcome lossless_limit()
{
    const auto p = PhysicalParams::from_rates(1.0, 0.0, 2.0 * pi);
    const Trajectory t = integrate_dde(p, DdeConfig(p.tau()), 4.0 * pi);
    double err = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i)
        err = std::max(err, std::abs(t[i].population_g() - std::pow(std::sin(t.time(i)), 2)));
    return {err < 1e-8, fmt("max | |cg|^2 - sin^2(gamma t) | on [0, 4 pi] = %.3g (limit 1e-8)", err)};
}

Outcome pre_feedback_closed_form()
{
    double worst = 0.0;
    for (double x : {0.5, 1.0, 2.0}) {
        const auto p = PhysicalParams::from_rates(1.0, x, 2.0 * pi);
        const Trajectory t = integrate_dde(p, DdeConfig(p.tau()), p.tau());
        for (std::size_t i = 0; i < t.size(); ++i)
            worst = std::max(worst, std::abs(t[i].cg - damped_jcm_cg(t.time(i), 1.0, x)));
    }
    return {worst < 1e-7, fmt("max |cg - closed form| on [0, tau], kappa/gamma in {0.5, 1, 2} = %.3g (limit 1e-7)", worst)};
}

Outcome frequency_renormalization()
{
    const auto p = PhysicalParams::from_rates(1.0, 1.0, 2.0 * pi);
    const double t_end = 4.0 * p.tau();
    const Trajectory t = integrate_dde_nofeedback(p, DdeConfig(p.tau()), t_end);
    const auto st = extract_oscillation_stats(t, {0.0, t_end}, Observable::imag_cg);
    const double target = std::sqrt(3.0) / 2.0;
    const double rel = std::abs(st.frequency / target - 1.0);
    return {rel <= 0.01, fmt("fitted frequency %.6f vs gamma sqrt(3)/2 = %.6f, deviation %.3g%% (limit 1%%)",
                             st.frequency, target, 100.0 * rel)};
}

Outcome series_reproduction()
{
    const ScenarioResult r = run_scenario(named_scenario("fig3"), false);
    const double d = r.report.comparisons.at(0).max_abs_population_diff;
    return {d < 1e-6, fmt("max | |cg|^2 dde - |cg|^2 series | on [0, 3 tau] = %.3g (limit 1e-6)", d)};
}

Outcome asymptote(const ScenarioReport& fig4)
{
    const CheckResult& peak = find_check(fig4, "asymptotic peak");
    const CheckResult& freq = find_check(fig4, "asymptotic oscillation frequency");
    return {peak.passed && freq.passed,
            fmt("window [10 tau, 12 tau]: peak |cg|^2 %.6f vs %.6f +/- 2%% (%+.2f%%), frequency %.5f vs 1 +/- 1%%",
                peak.measured, peak.expected, 100.0 * (peak.measured / peak.expected - 1.0), freq.measured)};
}

Outcome recovery_ratio(const ScenarioReport& fig4)
{
    const CheckResult& c = find_check(fig4, "recovery ratio");
    return {c.passed, fmt("ratio %.5f vs %.4f +/- 0.005 on window [10 tau, 12 tau] "
                          "(often rounded to 15%% of the first-interval maximum)",
                          c.measured, c.expected)};
}

Outcome strong_coupling()
{
    const ScenarioResult r = run_scenario(named_scenario("fig5"), false);
    const CheckResult& spread = find_check(r.report, "relative spread");
    const CheckResult& decay = find_check(r.report, "|cg|^2 envelope decay rate");
    return {spread.passed && decay.passed,
            fmt("feedback on: peak spread on [tau, 20 tau] %.4f (limit 0.01) %s; "
                "feedback off: decay rate %.5f vs kappa = %.5f +/- 5%% %s",
                spread.measured, spread.passed ? "ok" : "FAILED", decay.measured, decay.expected,
                decay.passed ? "ok" : "FAILED")};
}

Outcome quasi_continuum()
{
    Scenario s = named_scenario("fig2");
    const ScenarioResult base = run_scenario(s, false);
    s.bandwidth_over_kappa *= 2.0;
    const ScenarioResult wide = run_scenario(s, false);
    const CheckResult& norm = find_check(base.report, "norm conservation");
    const double d1 = base.report.comparisons.at(0).max_abs_population_diff;
    const double d2 = wide.report.comparisons.at(0).max_abs_population_diff;
    const bool ok = norm.passed && d1 <= 0.01 && d2 < d1;
    return {ok, fmt("norm deviation %.3g (limit 1e-6); max |cg|^2 diff on [0, 6 tau] %.4g (limit 0.01), "
                    "%.4g with doubled bandwidth", norm.measured, d1, d2)};
}

Outcome poles()
{
    const auto p = PhysicalParams::from_rates(1.0, 2.0, 2.0 * pi);
    const PoleSet set = find_poles(p, SearchBox::default_for(p));
    int on_axis = 0;
    double worst_residual = 0.0;
    for (const Pole& q : set.poles)
        if (std::abs(q.s.real()) < 1e-9 && std::abs(std::abs(q.s.imag()) - 1.0) < 1e-9) {
            ++on_axis;
            worst_residual = std::max(worst_residual, std::abs(characteristic(q.s, p)));
        }
    // amplitude of the reconstructed oscillation: value at gamma t = pi / 2
    const double amp = std::abs(set.reconstruct_on_axis(pi / 2.0, 1e-9));
    const double amp_err = std::abs(amp - 1.0 / (1.0 + 2.0 * pi));

    const auto flipped = p.with_feedback_phase(-1.0);
    const PoleSet neg = find_poles(flipped, SearchBox::default_for(flipped));
    double max_re = -1e300;
    for (const Pole& q : neg.poles)
        max_re = std::max(max_re, q.s.real());

    const bool ok = on_axis == 2 && worst_residual < 1e-12 && amp_err < 1e-6 && !neg.poles.empty() && max_re < 0.0;
    return {ok, fmt("%d poles at +/- i gamma, max |D| %.2g; reconstructed amplitude %.9f (error %.2g); "
                    "phase -1: %zu poles, max Re s = %.4g", on_axis, worst_residual, amp, amp_err,
                    neg.poles.size(), max_re)};
}

Outcome neumann()
{
    const auto p = PhysicalParams::from_rates(1.0, 2.0, 2.0 * pi);
    const double t = 2.0 * p.tau();
    const Trajectory traj = integrate_dde(p, DdeConfig(p.tau()), t);
    const cplx ref = traj[traj.size() - 1].cg;
    std::string list;
    std::vector<double> err;
    for (int m : {4, 8, 12, 16, 30}) {
        err.push_back(std::abs(neumann_cg(m, 1.0, 2.0).evaluate(t, p.tau()) - ref));
        list += fmt("%sM=%d: %.3g", list.empty() ? "" : ", ", m, err.back());
    }
    const bool monotone = err[1] <= err[0] && err[2] <= err[1] && err[3] <= err[2];
    const cplx coeff = neumann_cg(2, 1.0, 2.0).coefficient(1, 2);
    const bool coeff_ok = coeff == cplx(0.0, 2.0);
    return {monotone && err[4] < 1e-8 && coeff_ok,
            fmt("errors at t = 2 tau: %s; non-increasing to M=16: %s; below 1e-8 at M=30: %s; "
                "coefficient of (t - tau)^2/2! = %g%+gi (expected +i gamma kappa)",
                list.c_str(), monotone ? "yes" : "no", err[4] < 1e-8 ? "yes" : "no", coeff.real(),
                coeff.imag())};
}

}  // namespace

int main()
{
    const ScenarioReport fig4 = run_scenario(named_scenario("fig4"), false).report;

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 lossless limit", lossless_limit},
        {"2 pre-feedback closed form", pre_feedback_closed_form},
        {"3 frequency renormalization", frequency_renormalization},
        {"4 interval series to 3 tau", series_reproduction},
        {"5 asymptotic amplitude and frequency", [&] { return asymptote(fig4); }},
        {"6 recovery ratio", [&] { return recovery_ratio(fig4); }},
        {"7 strong coupling stabilization", strong_coupling},
        {"8 quasi-continuum fidelity", quasi_continuum},
        {"9 pole diagnostics", poles},
        {"10 photon-path series convergence", neumann},
    };

    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        std::printf("%s  criterion %s: %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
        if (!o.passed)
            ++failed;
    }

    // late-window values for reference
    const auto p = PhysicalParams::from_rates(1.0, 2.0, 2.0 * pi);
    const Trajectory late = integrate_dde(p, DdeConfig(p.tau()), 60.0 * p.tau());
    const auto st = extract_oscillation_stats(late, {58.0 * p.tau(), 60.0 * p.tau()}, Observable::population_g);
    std::printf("info  peak |cg|^2 on [58 tau, 60 tau] = %.7f (asymptote %.7f), ratio to first interval %.5f\n",
                st.amplitude, max_feedback_amplitude(2.0), st.amplitude / std::exp(-2.0));

    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
