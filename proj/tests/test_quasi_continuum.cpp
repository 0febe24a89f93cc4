#include <doctest.h>

#include "qfb/analytic.hpp"
#include "qfb/quasi_continuum.hpp"

#include <cmath>

using namespace qfb;

namespace {

PhysicalParams waveguide(double kappa, double bandwidth)
{
    return with_resonant_carrier(PhysicalParams::from_rates(1.0, kappa, 2.0 * pi).with_waveguide(1.0),
                                 bandwidth);
}

}  // namespace

TEST_CASE("grid spacing follows the recurrence rule")
{
    const auto p = waveguide(2.0, 40.0);
    const double t_end = 12.0 * p.tau();
    const ModeGrid g = build_mode_grid(p, t_end, {40.0, 10.0});
    CHECK(g.spacing <= 2.0 * pi / (10.0 * t_end) * (1.0 + 1e-12));
    CHECK(g.size() == doctest::Approx(4800).epsilon(0.01));
    CHECK(g.recurrence_time(1.0) >= 10.0 * t_end * (1.0 - 1e-12));
    CHECK(g.k_values.front() > 0.0);

    const ModeGrid coarse = build_mode_grid(p, p.tau(), {40.0, 2.0});
    CHECK(coarse.recurrence_time(1.0) >= 2.0 * p.tau() * (1.0 - 1e-12));

    CHECK_THROWS_AS(build_mode_grid(p, t_end, {0.0, 10.0}), std::invalid_argument);
    CHECK_THROWS_AS(build_mode_grid(p, t_end, {40.0, 10.0, 1000}), grid_too_fine_error);
    CHECK_THROWS_AS(build_mode_grid(PhysicalParams::from_rates(1.0, 2.0, 1.0), 1.0, {40.0, 10.0}),
                    std::invalid_argument);
}

TEST_CASE("resonant carrier keeps the feedback phase and clears the window")
{
    const auto p = waveguide(2.0, 40.0);
    CHECK(p.feedback_phase() == cplx(1.0, 0.0));
    CHECK(*p.omega0() >= 40.0);
    CHECK(std::abs(std::polar(1.0, *p.omega0() * p.tau()) - 1.0) < 1e-9);
}

TEST_CASE("mode coupling")
{
    const auto p = waveguide(2.0, 40.0);
    const double length = *p.distance();
    CHECK(std::abs(coupling_G(pi / length, 3.7, p)) < 1e-15);
    const cplx g = coupling_G(pi / (2.0 * length), 0.0, p);
    CHECK(g.imag() == 0.0);
    CHECK(g.real() == doctest::Approx(std::sqrt(4.0 / pi)).epsilon(1e-14));
}

TEST_CASE("norm of a state")
{
    const auto p = waveguide(2.0, 40.0);
    const ModeGrid g = build_mode_grid(p, p.tau(), {40.0, 10.0});
    ContinuumState s{1.0, 0.0, std::vector<cplx>(g.size(), 0.0)};
    CHECK(total_norm(s, g) == 1.0);
    s.ce = 0.6;
    s.cg = cplx(0.0, 0.8);
    for (auto& c : s.cgk)
        c = 0.1;
    const double n1 = total_norm(s, g);
    s.ce *= 2.0;
    s.cg *= 2.0;
    for (auto& c : s.cgk)
        c *= 2.0;
    CHECK(total_norm(s, g) == doctest::Approx(4.0 * n1).epsilon(1e-14));
    s.cgk.pop_back();
    CHECK_THROWS_AS(total_norm(s, g), std::invalid_argument);
}

TEST_CASE("uncoupled emitter oscillates freely")
{
    const auto p = waveguide(0.0, 40.0);
    const ModeGrid g = build_mode_grid(p, 4.0 * pi, {40.0, 10.0});
    const auto r = integrate_continuum(p, g, 4.0 * pi, 2e-3);
    double err = 0.0;
    for (std::size_t i = 0; i < r.trajectory.size(); ++i)
        err = std::max(err, std::abs(r.trajectory[i].population_g() - std::pow(std::sin(r.trajectory.time(i)), 2)));
    CHECK(err < 1e-8);
}

TEST_CASE("first interval follows the damped closed form and conserves the norm")
{
    const auto p = waveguide(2.0, 80.0);
    const ModeGrid g = build_mode_grid(p, 10.0 * p.tau(), {80.0, 10.0});
    const double dt = p.tau() / 4000.0;
    const auto r = integrate_continuum(p, g, 10.0 * p.tau(), dt, 10);
    double err = 0.0;
    for (std::size_t i = 0; r.trajectory.time(i) <= p.tau() + 1e-9; ++i)
        err = std::max(err, std::abs(r.trajectory[i].population_g() -
                                     std::norm(damped_jcm_cg(r.trajectory.time(i), 1.0, 2.0))));
    CHECK(err < 5e-3);
    CHECK(r.max_norm_deviation < 1e-6);
    CHECK(total_norm(r.final_state, g) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("coarse steps are refused")
{
    const auto p = waveguide(2.0, 40.0);
    const ModeGrid g = build_mode_grid(p, p.tau(), {40.0, 10.0});
    try {
        integrate_continuum(p, g, p.tau(), 0.1);
        FAIL("expected step_too_coarse_error");
    } catch (const step_too_coarse_error& e) {
        CHECK(e.required_dt() == doctest::Approx(0.1 / 20.0).epsilon(1e-3));
    }
}
