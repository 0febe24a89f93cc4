#include "qfb/core.hpp"

#include <cmath>
#include <sstream>

namespace qfb {

namespace {

bool close_relative(double a, double b, double rel)
{
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

PhysicalParams PhysicalParams::from_rates(double gamma, double kappa, double tau,
                                          cplx feedback_phase)
{
    PhysicalParams p;
    p.gamma_ = gamma;
    p.kappa_ = kappa;
    p.tau_ = tau;
    p.feedback_phase_ = feedback_phase;
    p.validate();
    return p;
}

PhysicalParams PhysicalParams::from_rates_and_frequency(double gamma, double kappa,
                                                        double tau, double omega0)
{
    PhysicalParams p;
    p.gamma_ = gamma;
    p.kappa_ = kappa;
    p.tau_ = tau;
    p.omega0_ = omega0;
    p.feedback_phase_ = std::polar(1.0, omega0 * tau);
    p.validate();
    return p;
}

PhysicalParams PhysicalParams::from_geometry(double gamma, double bare_coupling,
                                             double distance, double speed,
                                             double omega0)
{
    if (!(speed > 0.0))
        throw std::invalid_argument("propagation speed must be positive");
    PhysicalParams p;
    p.gamma_ = gamma;
    p.kappa_ = pi * bare_coupling * bare_coupling / (2.0 * speed);
    p.tau_ = 2.0 * distance / speed;
    p.omega0_ = omega0;
    p.feedback_phase_ = std::polar(1.0, omega0 * p.tau_);
    p.speed_ = speed;
    p.distance_ = distance;
    p.bare_coupling_ = bare_coupling;
    p.validate();
    return p;
}

PhysicalParams PhysicalParams::with_waveguide(double speed) const
{
    if (!(speed > 0.0))
        throw std::invalid_argument("propagation speed must be positive");
    PhysicalParams p = *this;
    p.speed_ = speed;
    p.distance_ = speed * tau_ / 2.0;
    p.bare_coupling_ = std::sqrt(2.0 * speed * kappa_ / pi);
    p.validate();
    return p;
}

PhysicalParams PhysicalParams::with_carrier_frequency(double omega0) const
{
    PhysicalParams p = *this;
    p.omega0_ = omega0;
    const cplx phase = std::polar(1.0, omega0 * tau_);
    if (std::abs(phase - feedback_phase_) > 1e-9)
        p.feedback_phase_ = phase;
    p.validate();
    return p;
}

PhysicalParams PhysicalParams::with_feedback_phase(cplx phase) const
{
    PhysicalParams p = *this;
    p.omega0_.reset();
    p.feedback_phase_ = phase;
    p.validate();
    return p;
}

PhysicalParams PhysicalParams::with_kappa(double kappa) const
{
    PhysicalParams p = *this;
    p.kappa_ = kappa;
    if (p.speed_)
        p.bare_coupling_ = std::sqrt(2.0 * *p.speed_ * kappa / pi);
    p.validate();
    return p;
}

double PhysicalParams::derived_bare_coupling() const
{
    if (bare_coupling_)
        return *bare_coupling_;
    if (!speed_)
        throw std::invalid_argument("bare coupling needs a propagation speed");
    return std::sqrt(2.0 * *speed_ * kappa_ / pi);
}

void PhysicalParams::validate() const
{
    if (!(gamma_ > 0.0) || !std::isfinite(gamma_))
        throw std::invalid_argument("gamma must be positive");
    if (!(kappa_ >= 0.0) || !std::isfinite(kappa_))
        throw std::invalid_argument("kappa must be non-negative");
    if (!(tau_ > 0.0) || !std::isfinite(tau_))
        throw std::invalid_argument("tau must be positive");
    if (std::abs(std::abs(feedback_phase_) - 1.0) > 1e-12)
        throw std::invalid_argument("feedback phase must have unit modulus");
    if (omega0_ && std::abs(feedback_phase_ - std::polar(1.0, *omega0_ * tau_)) > 1e-9)
        throw std::invalid_argument("feedback phase disagrees with exp(i omega0 tau)");
    if (speed_ && distance_ && !close_relative(tau_, 2.0 * *distance_ / *speed_, 1e-12))
        throw std::invalid_argument("tau disagrees with 2 L / c0");
    if (speed_ && bare_coupling_ &&
        !close_relative(kappa_, pi * *bare_coupling_ * *bare_coupling_ / (2.0 * *speed_), 1e-12))
        throw std::invalid_argument("kappa disagrees with pi G0^2 / (2 c0)");
}

std::string PhysicalParams::describe() const
{
    std::ostringstream os;
    os.precision(17);
    os << "gamma=" << gamma_ << " kappa=" << kappa_ << " tau=" << tau_
       << " feedback_phase=(" << feedback_phase_.real() << "," << feedback_phase_.imag() << ")";
    if (omega0_)
        os << " omega0=" << *omega0_;
    if (speed_)
        os << " c0=" << *speed_;
    if (distance_)
        os << " L=" << *distance_;
    if (bare_coupling_)
        os << " G0=" << *bare_coupling_;
    return os.str();
}

Trajectory::Trajectory(double t0, double dt, std::vector<AmplitudeState> samples)
    : t0_(t0), dt_(dt), samples_(std::move(samples))
{
    if (!(dt_ > 0.0))
        throw std::invalid_argument("trajectory step must be positive");
    if (samples_.empty())
        throw std::invalid_argument("trajectory must hold at least one sample");
}

std::pair<std::size_t, std::size_t> Trajectory::index_range(TimeWindow window) const
{
    const double slack = 0.5 * dt_;
    if (!(window.end > window.begin) || window.begin < t0_ - slack || window.end > t_end() + slack) {
        std::ostringstream os;
        os << "window [" << window.begin << ", " << window.end << "] outside trajectory span ["
           << t0_ << ", " << t_end() << "]";
        throw std::out_of_range(os.str());
    }
    const double first = std::ceil((window.begin - t0_) / dt_ - 1e-9);
    const double last = std::floor((window.end - t0_) / dt_ + 1e-9);
    const auto n = static_cast<double>(samples_.size() - 1);
    return {static_cast<std::size_t>(std::max(0.0, first)),
            static_cast<std::size_t>(std::min(n, last))};
}

Trajectory Trajectory::shifted(double offset) const
{
    return Trajectory(t0_ + offset, dt_, samples_);
}

double energy_to_angular_frequency(double energy_micro_ev)
{
    if (!(energy_micro_ev >= 0.0))
        throw std::domain_error("energy must be non-negative");
    return energy_micro_ev / hbar_micro_ev_ps;
}

}  // namespace qfb
