#include <doctest.h>

#include "qfb/analytic.hpp"
#include "qfb/dde.hpp"

#include <cmath>

using namespace qfb;

TEST_CASE("damped Jaynes-Cummings values")
{
    CHECK(std::abs(damped_jcm_cg(pi / 2.0, 1.0, 0.0) - cplx(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(damped_jcm_cg(1.0, 1.0, 2.0) - cplx(0.0, std::exp(-1.0))) < 1e-15);
    CHECK(std::abs(damped_jcm_ce(0.0, 1.0, 2.0) - 1.0) < 1e-15);
    CHECK(std::abs(damped_jcm_ce(pi, 1.0, 0.0) + 1.0) < 1e-15);

    CHECK(std::abs(damped_jcm_cg(1.3, 1.0, 0.5) - cplx(0.0, 0.71017896884185409)) < 1e-14);
    CHECK(std::abs(damped_jcm_ce(1.3, 1.0, 0.5) - 0.39938645258594008) < 1e-14);
    CHECK(std::abs(damped_jcm_cg(2.7, 1.0, 1.0) - cplx(0.0, 0.21542892905164494)) < 1e-14);
    CHECK(std::abs(damped_jcm_ce(3.0, 1.0, 2.0) - 0.19914827347145577) < 1e-14);
    CHECK(std::abs(damped_jcm_cg(0.9, 1.0, 3.0) - cplx(0.0, 0.27473029511842972)) < 1e-14);
    CHECK(std::abs(damped_jcm_ce(0.9, 1.0, 3.0) - 0.81403005372722081) < 1e-14);
}

TEST_CASE("damped solution is continuous across critical damping")
{
    const cplx at = damped_jcm_cg(1.0, 1.0, 2.0);
    CHECK(std::abs(damped_jcm_cg(1.0, 1.0, 2.0 * (1.0 - 1e-8)) - at) < 1e-8);
    CHECK(std::abs(damped_jcm_cg(1.0, 1.0, 2.0 * (1.0 + 1e-8)) - at) < 1e-8);
}

TEST_CASE("damped ce agrees with the feedback-off integrator")
{
    const auto p = PhysicalParams::from_rates(1.0, 2.0, 2.0 * pi);
    const Trajectory t = integrate_dde_nofeedback(p, DdeConfig::from_step(p.tau(), p.tau() / 4000.0), 3.0);
    CHECK(std::abs(t[t.size() - 1].ce - damped_jcm_ce(t.t_end(), 1.0, 2.0)) < 1e-7);
}

TEST_CASE("interval series against frozen high-precision values")
{
    const double tau = 2.0 * pi;
    CHECK(std::abs(series_cg(0.5 * tau, 2.0, tau, 1.0, 3).value - cplx(0.0, 0.13576052815029669)) < 1e-13);
    CHECK(std::abs(series_cg(1.5 * tau, 2.0, tau, 1.0, 3).value - cplx(0.0, -0.019369382456377594)) < 1e-13);
    CHECK(std::abs(series_cg(2.5 * tau, 2.0, tau, 1.0, 3).value - cplx(0.0, -0.084413146519002473)) < 1e-13);
    CHECK(std::abs(series_cg(2.99 * tau, 2.0, tau, 1.0, 3).value - cplx(0.0, -0.057847906294578918)) < 1e-13);
    CHECK(std::abs(series_cg(2.5 * tau, 2.0, tau, cplx(0.0, 1.0), 3).value -
                   cplx(0.015351473303765233, 0.069066407649638438)) < 1e-13);
}

TEST_CASE("series edge cases")
{
    const double tau = 2.0 * pi;
    CHECK(series_cg(0.0, 2.0, tau, 1.0, 0).value == cplx(0.0, 0.0));
    for (double t : {0.3, 1.0, 4.0})
        CHECK(std::abs(series_cg(t, 2.0, tau, 1.0, 0).value - cplx(0.0, t * std::exp(-t))) < 1e-15);
    CHECK_THROWS_AS(series_cg(1.5 * tau, 2.0, tau, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_WITH(series_cg(1.0, 1.0, 1.0, tau, 1.0, 3), doctest::Contains("critical damping"));
    CHECK_FALSE(series_cg(2.5 * tau, 2.0, tau, 1.0, 3).capped);
}

TEST_CASE("series agrees with the integrator up to three round trips")
{
    const auto p = PhysicalParams::from_rates(1.0, 2.0, 2.0 * pi);
    const Trajectory t = integrate_dde(p, DdeConfig(p.tau()), 3.0 * p.tau());
    double err = 0.0;
    for (std::size_t i = 0; i < t.size(); i += 7)
        err = std::max(err, std::abs(t[i].population_g() -
                                     std::norm(series_cg(t.time(i), 2.0, p.tau(), 1.0, 3).value)));
    CHECK(err < 1e-6);
}

TEST_CASE("long-time asymptote")
{
    CHECK(std::abs(long_time_cg(0.7, 1.0, 0.0, 1) - cplx(0.0, std::sin(0.7))) < 1e-15);
    CHECK(std::abs(long_time_cg(pi / 2.0, 1.0, 2.0, 1) - cplx(0.0, 1.0 / (1.0 + 2.0 * pi))) < 1e-15);
    CHECK(std::abs(long_time_cg(pi / 2.0, 1.0, 2.0, 1).imag() - 0.13730256169841298) < 1e-15);
    CHECK_THROWS_AS(long_time_cg(1.0, 1.0, 2.0, 0), std::domain_error);

    CHECK(max_feedback_amplitude(0.0) == 1.0);
    CHECK(max_feedback_amplitude(2.0) == doctest::Approx(0.018851993448946501).epsilon(1e-14));
    CHECK(max_feedback_amplitude(2.0) / std::exp(-2.0) == doctest::Approx(0.1392984371709388).epsilon(1e-13));
}

TEST_CASE("resonance conditions")
{
    const double tau = 2.0 * pi;
    const auto r = check_resonance(1.0, 2.0, tau, 1e-9);
    CHECK(r.condition_i);
    CHECK(r.condition_ii);
    CHECK(r.m == 1);
    CHECK(r.l == 2);

    const auto off = check_resonance(1.0, 1.0, pi, 1e-9);
    CHECK_FALSE(off.condition_i);
    CHECK_FALSE(off.condition_ii);

    const auto near = check_resonance(1.0 + 1e-12, 0.0, tau, 1e-9);
    CHECK(near.condition_i);

    CHECK_THROWS_AS(check_resonance(1.0, 0.0, tau, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(check_resonance(1.0, 0.0, tau, 0.5), std::invalid_argument);
}

TEST_CASE("poles at resonance")
{
    const auto p = PhysicalParams::from_rates(1.0, 2.0, 2.0 * pi);
    const PoleSet set = find_poles(p, SearchBox::default_for(p));
    REQUIRE(set.poles.size() >= 2);
    int on_axis = 0;
    for (const Pole& q : set.poles) {
        CHECK(q.s.real() < 1e-9);
        if (std::abs(q.s.real()) < 1e-9) {
            ++on_axis;
            CHECK(std::abs(std::abs(q.s.imag()) - 1.0) < 1e-10);
            CHECK(std::abs(characteristic(q.s, p)) < 1e-12);
            CHECK(std::abs(q.residue) == doctest::Approx(1.0 / (2.0 + 4.0 * pi)).epsilon(1e-9));
        }
    }
    CHECK(on_axis == 2);
    for (double t : {0.4, 1.7, 3.0}) {
        const cplx r = set.reconstruct_on_axis(t, 1e-9);
        CHECK(std::abs(r - long_time_cg(t, 1.0, 2.0, 1)) < 1e-6);
    }
    // slowest decaying transient
    bool found = false;
    for (const Pole& q : set.poles)
        if (std::abs(q.s - cplx(-0.0289, 1.9026)) < 1e-3)
            found = true;
    CHECK(found);
}

TEST_CASE("poles without loss and with opposite phase")
{
    const auto lossless = PhysicalParams::from_rates(1.0, 0.0, 2.0 * pi);
    SearchBox box{-1.0, 0.5, -3.0, 3.0};
    const PoleSet a = find_poles(lossless, box);
    REQUIRE(a.poles.size() == 2);
    for (const Pole& q : a.poles)
        CHECK(std::abs(q.s - cplx(0.0, q.s.imag() > 0.0 ? 1.0 : -1.0)) < 1e-12);
    CHECK(a.poles[0].s.imag() * a.poles[1].s.imag() < 0.0);

    const auto flipped = PhysicalParams::from_rates(1.0, 2.0, 2.0 * pi, -1.0);
    const PoleSet b = find_poles(flipped, SearchBox::default_for(flipped));
    REQUIRE_FALSE(b.poles.empty());
    for (const Pole& q : b.poles)
        CHECK(q.s.real() < 0.0);
}

TEST_CASE("derivative of the characteristic function")
{
    const auto p = PhysicalParams::from_rates(1.0, 2.0, 2.0 * pi, cplx(0.6, 0.8));
    const cplx s(-0.3, 0.7);
    const double h = 1e-6;
    const cplx fd = (characteristic(s + h, p) - characteristic(s - h, p)) / (2.0 * h);
    CHECK(std::abs(fd - characteristic_derivative(s, p)) < 1e-8);
}
