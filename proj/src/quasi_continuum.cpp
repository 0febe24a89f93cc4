#include "qfb/quasi_continuum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qfb {

namespace {

std::string grid_message(std::size_t count, std::size_t cap)
{
    std::ostringstream os;
    os << "grid too fine: " << count << " modes exceed the cap of " << cap;
    return os.str();
}

std::string step_message(double dt, double required)
{
    std::ostringstream os;
    os.precision(10);
    os << "dt too coarse for bandwidth: dt = " << dt << ", need dt <= " << required;
    return os.str();
}

void require_waveguide(const PhysicalParams& params)
{
    if (!params.speed() || !params.distance())
        throw std::invalid_argument("mode-resolved model needs c0 and L");
    if (!params.omega0())
        throw std::invalid_argument("mode-resolved model needs the carrier frequency omega0");
}

// Re-anchor the rotating phases exp(i detuning t) every this many steps.
constexpr std::size_t phase_anchor_interval = 512;

}  // namespace

grid_too_fine_error::grid_too_fine_error(std::size_t count, std::size_t cap)
    : std::runtime_error(grid_message(count, cap)), count_(count)
{
}

step_too_coarse_error::step_too_coarse_error(double dt, double required)
    : std::runtime_error(step_message(dt, required)), required_(required)
{
}

double ModeGrid::recurrence_time(double speed) const
{
    return 2.0 * pi / (speed * spacing);
}

ModeGrid build_mode_grid(const PhysicalParams& params, double t_end, const ModeGridOptions& options)
{
    require_waveguide(params);
    if (!(options.bandwidth > 0.0))
        throw std::invalid_argument("bandwidth must be positive");
    if (!(t_end > 0.0))
        throw std::invalid_argument("t_end must be positive");
    if (!(options.resolution_factor >= 2.0))
        throw std::invalid_argument("resolution factor must be at least 2");

    const double c0 = *params.speed();
    const double k0 = *params.omega0() / c0;
    const double half_width = options.bandwidth / (2.0 * c0);
    if (!(k0 - half_width > 0.0))
        throw std::invalid_argument("spectral window reaches k <= 0; raise omega0");

    const double max_spacing = 2.0 * pi / (c0 * options.resolution_factor * t_end);
    const double intervals = std::ceil(2.0 * half_width / max_spacing - 1e-9);
    const double count = intervals + 1.0;
    if (count > static_cast<double>(options.max_modes))
        throw grid_too_fine_error(static_cast<std::size_t>(std::min(count, 1e18)), options.max_modes);

    const auto n = static_cast<std::size_t>(intervals);
    ModeGrid grid;
    grid.spacing = 2.0 * half_width / intervals;
    grid.k_values.resize(n + 1);
    grid.weights.assign(n + 1, grid.spacing);
    grid.omega_k.resize(n + 1);
    grid.weights.front() *= 0.5;
    grid.weights.back() *= 0.5;
    for (std::size_t j = 0; j <= n; ++j) {
        grid.k_values[j] = k0 - half_width + static_cast<double>(j) * grid.spacing;
        grid.omega_k[j] = c0 * grid.k_values[j];
    }
    return grid;
}

PhysicalParams with_resonant_carrier(const PhysicalParams& params, double bandwidth)
{
    const double theta = std::arg(params.feedback_phase());
    const double tau = params.tau();
    const double l = std::ceil((bandwidth * tau - theta) / (2.0 * pi));
    return params.with_carrier_frequency((theta + 2.0 * pi * l) / tau);
}

cplx coupling_G(double k, double t, const PhysicalParams& params)
{
    require_waveguide(params);
    const double g0 = params.derived_bare_coupling();
    const double detuning = *params.omega0() - *params.speed() * k;
    return g0 * std::sin(k * *params.distance()) * std::polar(1.0, detuning * t);
}

double total_norm(const ContinuumState& state, const ModeGrid& grid)
{
    if (state.cgk.size() != grid.size())
        throw std::invalid_argument("state has " + std::to_string(state.cgk.size()) +
                                    " modes, grid has " + std::to_string(grid.size()));
    double norm = std::norm(state.ce) + std::norm(state.cg);
    for (std::size_t j = 0; j < grid.size(); ++j)
        norm += grid.weights[j] * std::norm(state.cgk[j]);
    return norm;
}

ContinuumResult integrate_continuum(const PhysicalParams& params, const ModeGrid& grid,
                                    double t_end, double dt, int output_stride)
{
    require_waveguide(params);
    if (!(dt > 0.0))
        throw std::invalid_argument("dt must be positive");
    if (!(t_end >= 0.0))
        throw std::out_of_range("t_end must be non-negative");
    if (output_stride < 1)
        throw std::invalid_argument("output stride must be at least 1");
    if (grid.size() == 0)
        throw std::invalid_argument("empty mode grid");

    const double omega0 = *params.omega0();
    const std::size_t n = grid.size();
    std::vector<double> detuning(n);
    double max_detuning = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        detuning[j] = omega0 - grid.omega_k[j];
        max_detuning = std::max(max_detuning, std::abs(detuning[j]));
    }
    if (dt * max_detuning > continuum_phase_guard * (1.0 + 1e-12))
        throw step_too_coarse_error(dt, continuum_phase_guard / max_detuning);

    // a_j = G0 sin(k_j L); the coupling is a_j exp(i detuning_j t)
    const double g0 = params.derived_bare_coupling();
    const double length = *params.distance();
    std::vector<double> coupling(n), weighted(n);
    std::vector<cplx> half_turn(n), phase(n, 1.0), cgk(n, 0.0);
    double sum_w_a2 = 0.0;
    cplx sum_w_a2_half = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        coupling[j] = g0 * std::sin(grid.k_values[j] * length);
        weighted[j] = grid.weights[j] * coupling[j];
        half_turn[j] = std::polar(1.0, 0.5 * detuning[j] * dt);
        sum_w_a2 += weighted[j] * coupling[j];
        sum_w_a2_half += weighted[j] * coupling[j] * half_turn[j];
    }

    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    const auto stride = static_cast<std::size_t>(output_stride);
    const cplx ig = imag_unit * params.gamma();
    const cplx i = imag_unit;

    cplx ce = 1.0, cg = 0.0;
    // P0, Ph, P1: sum_j w_j a_j exp(i detuning_j t') cgk_j at t' = t, t + dt/2, t + dt
    cplx p0 = 0.0, ph = 0.0, p1 = 0.0;
    double field_norm = 0.0;

    std::vector<AmplitudeState> out;
    out.reserve(steps / stride + 1);
    out.push_back({ce, cg});
    double max_dev = 0.0;

    // The mode amplitudes enter the c_g equation only through weighted sums,
    // and their own right-hand side only through c_g. The RK4 stage sums are
    // therefore assembled from P0/Ph/P1 and two constant sums, which is the
    // classical scheme reorganized to one pass over the modes per step.
    for (std::size_t step = 0; step < steps; ++step) {
        const cplx dce1 = ig * cg;
        const cplx dcg1 = ig * ce + i * p0;
        const cplx cg1 = cg;

        const cplx ce2 = ce + 0.5 * dt * dce1;
        const cplx cg2 = cg + 0.5 * dt * dcg1;
        const cplx dce2 = ig * cg2;
        const cplx dcg2 = ig * ce2 + i * (ph + i * (0.5 * dt) * cg1 * sum_w_a2_half);

        const cplx ce3 = ce + 0.5 * dt * dce2;
        const cplx cg3 = cg + 0.5 * dt * dcg2;
        const cplx dce3 = ig * cg3;
        const cplx dcg3 = ig * ce3 + i * (ph + i * (0.5 * dt) * cg2 * sum_w_a2);

        const cplx ce4 = ce + dt * dce3;
        const cplx cg4 = cg + dt * dcg3;
        const cplx dce4 = ig * cg4;
        const cplx dcg4 = ig * ce4 + i * (p1 + i * dt * cg3 * sum_w_a2_half);

        ce += dt / 6.0 * (dce1 + 2.0 * dce2 + 2.0 * dce3 + dce4);
        cg += dt / 6.0 * (dcg1 + 2.0 * dcg2 + 2.0 * dcg3 + dcg4);

        const bool anchor = (step + 1) % phase_anchor_interval == 0;
        const double t_next = static_cast<double>(step + 1) * dt;
        const cplx mid = cg2 + cg3;
        p0 = ph = p1 = 0.0;
        field_norm = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const cplx e0 = phase[j];
            const cplx eh = e0 * half_turn[j];
            const cplx e1 = anchor ? std::polar(1.0, detuning[j] * t_next) : eh * half_turn[j];
            const cplx kick = std::conj(e0) * cg1 + 2.0 * std::conj(eh) * mid + std::conj(e1) * cg4;
            cgk[j] += (dt / 6.0) * coupling[j] * i * kick;
            phase[j] = e1;

            cplx q = weighted[j] * e1 * cgk[j];
            p0 += q;
            q *= half_turn[j];
            ph += q;
            q *= half_turn[j];
            p1 += q;
            field_norm += grid.weights[j] * std::norm(cgk[j]);
        }

        if ((step + 1) % stride == 0) {
            out.push_back({ce, cg});
            const double norm = std::norm(ce) + std::norm(cg) + field_norm;
            max_dev = std::max(max_dev, std::abs(norm - 1.0));
        }
    }

    ContinuumResult result{Trajectory(0.0, dt * static_cast<double>(stride), std::move(out)),
                           ContinuumState{ce, cg, std::move(cgk)}, max_dev};
    return result;
}

}  // namespace qfb
