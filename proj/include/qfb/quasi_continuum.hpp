#ifndef QFB_QUASI_CONTINUUM_HPP
#define QFB_QUASI_CONTINUUM_HPP

#include "qfb/core.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qfb {

class grid_too_fine_error : public std::runtime_error {
public:
    grid_too_fine_error(std::size_t count, std::size_t cap);
    std::size_t mode_count() const { return count_; }

private:
    std::size_t count_;
};

class step_too_coarse_error : public std::runtime_error {
public:
    step_too_coarse_error(double dt, double required);
    double required_dt() const { return required_; }

private:
    double required_;
};

/// Uniform wavenumber grid with trapezoid weights around k0 = omega0 / c0.
struct ModeGrid {
    std::vector<double> k_values;
    std::vector<double> weights;
    std::vector<double> omega_k;
    double spacing = 0.0;  ///< delta k

    std::size_t size() const { return k_values.size(); }
    /// 2 pi / (c0 delta k): time after which the discrete spectrum rephases.
    double recurrence_time(double speed) const;
};

struct ModeGridOptions {
    double bandwidth;                ///< angular-frequency window B
    double resolution_factor = 10.0; ///< recurrence time >= factor * t_end
    std::size_t max_modes = 2'000'000;
};

/// Requires params with speed, distance and carrier frequency set.
ModeGrid build_mode_grid(const PhysicalParams& params, double t_end, const ModeGridOptions& options);

/// Picks omega0 with omega0 tau = arg(phase) + 2 pi l exactly up to
/// rounding, with the smallest l that keeps the whole window at positive k
/// (omega0 >= bandwidth). Returns params with that carrier frequency.
PhysicalParams with_resonant_carrier(const PhysicalParams& params, double bandwidth);

/// G0 sin(k L) exp(i (omega0 - c0 k) t)
cplx coupling_G(double k, double t, const PhysicalParams& params);

struct ContinuumState {
    cplx ce;
    cplx cg;
    std::vector<cplx> cgk;
};

/// |ce|^2 + |cg|^2 + sum_j w_j |cgk_j|^2
double total_norm(const ContinuumState& state, const ModeGrid& grid);

struct ContinuumResult {
    Trajectory trajectory;
    ContinuumState final_state;
    double max_norm_deviation;  ///< max |norm - 1| over the output samples
};

inline constexpr double continuum_phase_guard = 0.1;

/**
 * Classical fixed-step RK4 on
 *
 *   d/dt ce    = i gamma cg
 *   d/dt cg    = i gamma ce + i sum_j w_j G(k_j, t) cgk_j
 *   d/dt cgk_j = i conj(G(k_j, t)) cg
 *
 * from ce = 1, cg = cgk = 0. Requires dt * max_j |omega0 - omega_j| <= 0.1.
 * Every `output_stride` steps a sample is recorded.
 */
ContinuumResult integrate_continuum(const PhysicalParams& params, const ModeGrid& grid,
                                    double t_end, double dt, int output_stride = 1);

}  // namespace qfb

#endif  // QFB_QUASI_CONTINUUM_HPP
