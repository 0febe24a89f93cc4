#ifndef QFB_ANALYTIC_HPP
#define QFB_ANALYTIC_HPP

#include "qfb/core.hpp"

#include <string>
#include <vector>

namespace qfb {

// ---------------------------------------------------------------------------
// Damped Jaynes-Cummings solution, valid for t <= tau.
//
// With Omega = gamma sqrt(1 - (kappa / 2 gamma)^2) taken as a complex square
// root, one formula covers the underdamped, critical and overdamped branches:
//
//   cg(t) = i gamma t sinc(Omega t) exp(-kappa t / 2)
//   ce(t) = exp(-kappa t / 2) [cos(Omega t) + (kappa t / 2) sinc(Omega t)]
// ---------------------------------------------------------------------------

cplx damped_jcm_cg(double t, double gamma, double kappa);
cplx damped_jcm_ce(double t, double gamma, double kappa);

/// sin(z) / z for complex z, with the Taylor series near the origin.
cplx sinc(cplx z);

// ---------------------------------------------------------------------------
// Exact interval series at critical damping (gamma = kappa / 2).
// ---------------------------------------------------------------------------

struct SeriesResult {
    cplx value;
    bool capped = false;  ///< n_max was reduced to the stability cap
};

inline constexpr int series_term_cap = 170;

/// cg(t) as a sum over delay intervals; gamma is fixed to kappa / 2.
/// Only terms with n tau < t contribute. Requires n_max to reach the last
/// contributing interval.
SeriesResult series_cg(double t, double kappa, double tau, cplx feedback_phase, int n_max);

/// Guarded form taking an explicit gamma; throws unless gamma == kappa / 2.
SeriesResult series_cg(double t, double gamma, double kappa, double tau, cplx feedback_phase,
                       int n_max);

// ---------------------------------------------------------------------------
// Long-time asymptote at resonance (gamma tau = 2 pi m, omega0 tau = 2 pi l).
// ---------------------------------------------------------------------------

/// i sin(gamma t) / (1 + kappa m pi / gamma)
cplx long_time_cg(double t, double gamma, double kappa, int m);

/// Peak population of the stabilized oscillation, (1 + x m pi)^-2 with
/// x = kappa / gamma.
double max_feedback_amplitude(double kappa_over_gamma, int m = 1);

struct ResonanceReport {
    bool condition_i = false;   ///< exp(i gamma tau) = exp(i omega0 tau) = 1
    bool condition_ii = false;  ///< exp(-i gamma tau) = exp(i omega0 tau) = 1
    bool upper_pole_on_axis = false;  ///< exp(i (omega0 - gamma) tau) = 1
    bool lower_pole_on_axis = false;  ///< exp(i (omega0 + gamma) tau) = 1
    long m = 0;  ///< nearest integer to gamma tau / 2 pi
    long l = 0;  ///< nearest integer to omega0 tau / 2 pi
    double residual_upper = 0.0;  ///< |exp(i (omega0 - gamma) tau) - 1|
    double residual_lower = 0.0;  ///< |exp(i (omega0 + gamma) tau) - 1|
    double residual_gamma = 0.0;  ///< |exp(i gamma tau) - 1|
    double residual_phase = 0.0;  ///< |exp(i omega0 tau) - 1|
    double epsilon = 0.0;
};

ResonanceReport check_resonance(double gamma, double omega0, double tau, double epsilon);

// ---------------------------------------------------------------------------
// Poles of cg(s) = i gamma / D(s),
//   D(s) = s^2 + gamma^2 + kappa s (1 - phase exp(-s tau)).
// ---------------------------------------------------------------------------

struct SearchBox {
    double re_min;
    double re_max;
    double im_min;
    double im_max;

    /// Re in [-3 kappa, 0.5 gamma], Im in [-3 gamma, 3 gamma].
    static SearchBox default_for(const PhysicalParams& params);
};

struct Pole {
    cplx s;
    cplx residue;  ///< residue of cg(s) e^{st} divided by e^{st}: i gamma / D'(s)
    double residual;  ///< |D(s)|
};

struct PoleSet {
    std::vector<Pole> poles;  ///< sorted by real part, descending
    std::size_t seeds = 0;
    std::size_t converged_seeds = 0;
    std::string diagnostic;

    /// Sum of residue * e^{st} over poles with |Re s| <= re_tol.
    cplx reconstruct_on_axis(double t, double re_tol) const;
};

cplx characteristic(cplx s, const PhysicalParams& params);
cplx characteristic_derivative(cplx s, const PhysicalParams& params);

/// Newton iteration from a grid_density x grid_density lattice of seeds in
/// the box. Roots with |D| <= tol * max(gamma^2, kappa gamma) are kept and
/// deduplicated within 1e-8 gamma.
PoleSet find_poles(const PhysicalParams& params, const SearchBox& box, int grid_density = 60,
                   double tol = 1e-12);

}  // namespace qfb

#endif  // QFB_ANALYTIC_HPP
