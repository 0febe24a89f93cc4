#include "qfb/analytic.hpp"

#include <cmath>
#include <sstream>

namespace qfb {

namespace {

void require_rates(double gamma, double kappa)
{
    if (!(gamma > 0.0))
        throw std::invalid_argument("gamma must be positive");
    if (!(kappa >= 0.0))
        throw std::invalid_argument("kappa must be non-negative");
}

cplx renormalized_frequency(double gamma, double kappa)
{
    const double r = kappa / (2.0 * gamma);
    return gamma * std::sqrt(cplx(1.0 - r * r, 0.0));
}

}  // namespace

cplx sinc(cplx z)
{
    if (std::abs(z) < 1e-3) {
        const cplx z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}

cplx damped_jcm_cg(double t, double gamma, double kappa)
{
    require_rates(gamma, kappa);
    if (!(t >= 0.0))
        throw std::domain_error("time must be non-negative");
    const cplx omega = renormalized_frequency(gamma, kappa);
    return imag_unit * gamma * t * sinc(omega * t) * std::exp(-0.5 * kappa * t);
}

cplx damped_jcm_ce(double t, double gamma, double kappa)
{
    require_rates(gamma, kappa);
    if (!(t >= 0.0))
        throw std::domain_error("time must be non-negative");
    const cplx omega = renormalized_frequency(gamma, kappa);
    return std::exp(-0.5 * kappa * t) * (std::cos(omega * t) + 0.5 * kappa * t * sinc(omega * t));
}

SeriesResult series_cg(double t, double kappa, double tau, cplx feedback_phase, int n_max)
{
    if (!(kappa > 0.0))
        throw std::invalid_argument("kappa must be positive");
    if (!(tau > 0.0))
        throw std::invalid_argument("tau must be positive");
    if (!(t >= 0.0))
        throw std::domain_error("time must be non-negative");
    if (n_max < 0)
        throw std::invalid_argument("n_max must be non-negative");

    // last interval with n tau < t
    const long last = t > 0.0 ? static_cast<long>(std::ceil(t / tau)) - 1 : 0;
    if (n_max < last) {
        std::ostringstream os;
        os << "n_max = " << n_max << " does not reach interval " << last << " at t = " << t;
        throw std::invalid_argument(os.str());
    }

    SeriesResult result;
    int n_top = n_max;
    if (n_top > series_term_cap) {
        n_top = series_term_cap;
        result.capped = true;
    }

    // Term (n, k) of the double sum, with the outer n! 2^{n+1} e^{-x}
    // folded in:  C(n,k) (-1)^k 2^{n+1} x^{n+1+k} / (n+1+k)!  e^{-x},
    // x = kappa (t - n tau) / 2. The k = 0 term is a running product and
    // later terms follow from the ratio
    //   T_{k+1} / T_k = -(n - k) x / ((k + 1) (n + 2 + k)).
    std::complex<long double> total = 0.0L;
    std::complex<long double> phase_power = 1.0L;
    const std::complex<long double> phase(feedback_phase.real(), feedback_phase.imag());
    for (int n = 0; n <= n_top; ++n) {
        const long double u = static_cast<long double>(t) - n * static_cast<long double>(tau);
        if (u <= 0.0L)
            break;
        const long double x = 0.5L * kappa * u;
        long double term = std::exp(-x);
        for (int i = 1; i <= n + 1; ++i)
            term *= 2.0L * x / i;
        long double inner = 0.0L;
        for (int k = 0; k <= n; ++k) {
            inner += term;
            term *= -static_cast<long double>(n - k) * x / ((k + 1.0L) * (n + 2.0L + k));
        }
        total += phase_power * inner;
        phase_power *= phase;
    }
    const std::complex<long double> value = std::complex<long double>(0.0L, 0.5L) * total;
    result.value = cplx(static_cast<double>(value.real()), static_cast<double>(value.imag()));
    return result;
}

SeriesResult series_cg(double t, double gamma, double kappa, double tau, cplx feedback_phase,
                       int n_max)
{
    if (std::abs(gamma - 0.5 * kappa) > 1e-12 * std::max(gamma, 0.5 * kappa))
        throw std::invalid_argument("series valid only at critical damping (gamma = kappa / 2)");
    return series_cg(t, kappa, tau, feedback_phase, n_max);
}

cplx long_time_cg(double t, double gamma, double kappa, int m)
{
    require_rates(gamma, kappa);
    if (m <= 0)
        throw std::domain_error("resonance order m must be positive");
    return imag_unit * std::sin(gamma * t) / (1.0 + kappa * m * pi / gamma);
}

double max_feedback_amplitude(double kappa_over_gamma, int m)
{
    if (!(kappa_over_gamma >= 0.0))
        throw std::domain_error("kappa / gamma must be non-negative");
    if (m < 1)
        throw std::domain_error("resonance order m must be positive");
    const double base = 1.0 + kappa_over_gamma * m * pi;
    return 1.0 / (base * base);
}

ResonanceReport check_resonance(double gamma, double omega0, double tau, double epsilon)
{
    if (!(epsilon > 0.0 && epsilon <= 0.1))
        throw std::invalid_argument("epsilon must lie in (0, 0.1]");
    ResonanceReport r;
    r.epsilon = epsilon;
    r.residual_upper = std::abs(std::polar(1.0, (omega0 - gamma) * tau) - 1.0);
    r.residual_lower = std::abs(std::polar(1.0, (omega0 + gamma) * tau) - 1.0);
    r.residual_gamma = std::abs(std::polar(1.0, gamma * tau) - 1.0);
    r.residual_phase = std::abs(std::polar(1.0, omega0 * tau) - 1.0);
    r.m = std::lround(gamma * tau / (2.0 * pi));
    r.l = std::lround(omega0 * tau / (2.0 * pi));
    r.upper_pole_on_axis = r.residual_upper <= epsilon;
    r.lower_pole_on_axis = r.residual_lower <= epsilon;
    const double residual_gamma_minus = std::abs(std::polar(1.0, -gamma * tau) - 1.0);
    r.condition_i = r.residual_gamma <= epsilon && r.residual_phase <= epsilon &&
                    r.upper_pole_on_axis;
    r.condition_ii = residual_gamma_minus <= epsilon && r.residual_phase <= epsilon &&
                     r.lower_pole_on_axis;
    return r;
}

}  // namespace qfb
