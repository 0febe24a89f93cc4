#ifndef QFB_DDE_HPP
#define QFB_DDE_HPP

#include "qfb/core.hpp"

namespace qfb {

/// Step configuration for the delay equation. The step always divides the
/// delay exactly so that every breakpoint n*tau is a grid point.
class DdeConfig {
public:
    static constexpr int default_steps_per_delay = 1000;

    DdeConfig(double tau, int steps_per_delay = default_steps_per_delay,
              bool feedback_on = true, int output_stride = 1);

    /// Throws std::invalid_argument unless tau / dt is an integer.
    static DdeConfig from_step(double tau, double dt, bool feedback_on = true);

    double dt() const { return dt_; }
    int steps_per_delay() const { return steps_per_delay_; }
    bool feedback_on() const { return feedback_on_; }
    int output_stride() const { return output_stride_; }

    DdeConfig without_feedback() const;

private:
    double dt_;
    int steps_per_delay_;
    bool feedback_on_;
    int output_stride_;
};

/**
 * Integrates
 *
 *   d/dt ce = i gamma cg
 *   d/dt cg = i gamma ce - kappa cg + kappa phase cg(t - tau) Theta(t - tau)
 *
 * from ce(0) = 1, cg(0) = 0 with classical RK4. Delayed values at the
 * half-step stages come from cubic Hermite interpolation inside one stored
 * history step; each step keeps its own one-sided end derivatives, so no
 * interpolant spans a breakpoint. The feedback switch is decided per step
 * (step index >= steps_per_delay), never by comparing floating-point times.
 *
 * `config.dt()` must equal params.tau() / config.steps_per_delay().
 */
Trajectory integrate_dde(const PhysicalParams& params, const DdeConfig& config, double t_end);

/// Same integrator with the delayed term removed for all times.
Trajectory integrate_dde_nofeedback(const PhysicalParams& params, const DdeConfig& config,
                                    double t_end);

}  // namespace qfb

#endif  // QFB_DDE_HPP
