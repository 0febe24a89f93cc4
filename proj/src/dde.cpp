#include "qfb/dde.hpp"

#include <cmath>
#include <sstream>

namespace qfb {

DdeConfig::DdeConfig(double tau, int steps_per_delay, bool feedback_on, int output_stride)
    : dt_(0.0), steps_per_delay_(steps_per_delay), feedback_on_(feedback_on),
      output_stride_(output_stride)
{
    if (!(tau > 0.0))
        throw std::invalid_argument("delay must be positive");
    if (steps_per_delay < 1)
        throw std::invalid_argument("steps per delay must be at least 1");
    if (output_stride < 1)
        throw std::invalid_argument("output stride must be at least 1");
    dt_ = tau / steps_per_delay;
}

DdeConfig DdeConfig::from_step(double tau, double dt, bool feedback_on)
{
    if (!(dt > 0.0))
        throw std::invalid_argument("step must be positive");
    const double ratio = tau / dt;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * rounded) {
        std::ostringstream os;
        os.precision(17);
        os << "configuration error: tau / dt = " << ratio << " is not an integer";
        throw std::invalid_argument(os.str());
    }
    return DdeConfig(tau, static_cast<int>(rounded), feedback_on);
}

DdeConfig DdeConfig::without_feedback() const
{
    DdeConfig c = *this;
    c.feedback_on_ = false;
    return c;
}

namespace {

struct Rates {
    cplx ce;
    cplx cg;
};

class DelaySystem {
public:
    DelaySystem(const PhysicalParams& p)
        : i_gamma_(imag_unit * p.gamma()), kappa_(p.kappa()),
          gain_(p.kappa() * p.feedback_phase())
    {
    }

    Rates operator()(cplx ce, cplx cg, cplx delayed, bool feedback) const
    {
        cplx dcg = i_gamma_ * ce - kappa_ * cg;
        if (feedback)
            dcg += gain_ * delayed;
        return {i_gamma_ * cg, dcg};
    }

private:
    cplx i_gamma_;
    double kappa_;
    cplx gain_;
};

Trajectory run(const PhysicalParams& params, const DdeConfig& config, double t_end,
               bool feedback_allowed)
{
    if (!(t_end >= 0.0))
        throw std::out_of_range("t_end must be non-negative");
    const double dt = config.dt();
    if (std::abs(dt * config.steps_per_delay() - params.tau()) > 1e-12 * params.tau())
        throw std::invalid_argument("configuration error: step does not divide the delay");

    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    const auto lag = static_cast<std::size_t>(config.steps_per_delay());
    const bool feedback = feedback_allowed && config.feedback_on() && params.kappa() > 0.0;
    const DelaySystem rhs(params);

    // cg on the grid plus, per step, the derivative at its left end (right
    // limit) and at its right end (left limit).
    std::vector<cplx> cg_hist(steps + 1);
    std::vector<cplx> d_start(steps);
    std::vector<cplx> d_end(steps);

    const auto stride = static_cast<std::size_t>(config.output_stride());
    std::vector<AmplitudeState> out;
    out.reserve(steps / stride + 1);

    cplx ce = 1.0;
    cplx cg = 0.0;
    cg_hist[0] = cg;
    out.push_back({ce, cg});

    const double h = dt;
    for (std::size_t i = 0; i < steps; ++i) {
        const bool active = feedback && i >= lag;
        cplx lag0 = 0.0, lag_half = 0.0, lag1 = 0.0;
        if (active) {
            const std::size_t j = i - lag;
            lag0 = cg_hist[j];
            lag1 = cg_hist[j + 1];
            lag_half = 0.5 * (lag0 + lag1) + 0.125 * h * (d_start[j] - d_end[j]);
        }

        const Rates k1 = rhs(ce, cg, lag0, active);
        const Rates k2 = rhs(ce + 0.5 * h * k1.ce, cg + 0.5 * h * k1.cg, lag_half, active);
        const Rates k3 = rhs(ce + 0.5 * h * k2.ce, cg + 0.5 * h * k2.cg, lag_half, active);
        const Rates k4 = rhs(ce + h * k3.ce, cg + h * k3.cg, lag1, active);

        ce += h / 6.0 * (k1.ce + 2.0 * k2.ce + 2.0 * k3.ce + k4.ce);
        cg += h / 6.0 * (k1.cg + 2.0 * k2.cg + 2.0 * k3.cg + k4.cg);

        d_start[i] = k1.cg;
        d_end[i] = rhs(ce, cg, lag1, active).cg;
        cg_hist[i + 1] = cg;
        if ((i + 1) % stride == 0)
            out.push_back({ce, cg});
    }
    return Trajectory(0.0, dt * static_cast<double>(stride), std::move(out));
}

}  // namespace

Trajectory integrate_dde(const PhysicalParams& params, const DdeConfig& config, double t_end)
{
    return run(params, config, t_end, true);
}

Trajectory integrate_dde_nofeedback(const PhysicalParams& params, const DdeConfig& config,
                                    double t_end)
{
    return run(params, config, t_end, false);
}

}  // namespace qfb
