#ifndef QFB_CORE_HPP
#define QFB_CORE_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfb {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx imag_unit{0.0, 1.0};

/// Reduced Planck constant in micro-eV * ps.
inline constexpr double hbar_micro_ev_ps = 658.2119569;

/// Thrown when a window holds too few oscillations to measure anything.
class insufficient_data_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Parameter set of the emitter-cavity-mirror system.
 *
 * All solvers take rates in the same time unit; the usual choice is gamma = 1.
 * The feedback phase e^{i omega0 tau} is stored explicitly so that exact
 * resonance (phase = 1) does not depend on the floating-point product
 * omega0 * tau. The waveguide quantities (speed, distance, bare coupling) are
 * optional and only needed by the mode-resolved solver.
 */
class PhysicalParams {
public:
    static PhysicalParams from_rates(double gamma, double kappa, double tau,
                                     cplx feedback_phase = 1.0);

    /// Phase is set to e^{i omega0 tau}.
    static PhysicalParams from_rates_and_frequency(double gamma, double kappa,
                                                   double tau, double omega0);

    /// kappa = pi G0^2 / (2 c0), tau = 2 L / c0.
    static PhysicalParams from_geometry(double gamma, double bare_coupling,
                                        double distance, double speed,
                                        double omega0);

    /// Attaches a waveguide with propagation speed `speed`; the mirror
    /// distance and bare coupling are derived from tau and kappa.
    PhysicalParams with_waveguide(double speed) const;
    /// Sets omega0. A stored phase that already matches e^{i omega0 tau}
    /// within 1e-9 is kept bit-exact; otherwise it is replaced.
    PhysicalParams with_carrier_frequency(double omega0) const;
    /// Replaces the phase and drops any explicit carrier frequency.
    PhysicalParams with_feedback_phase(cplx phase) const;
    PhysicalParams with_kappa(double kappa) const;

    double gamma() const { return gamma_; }
    double kappa() const { return kappa_; }
    double tau() const { return tau_; }
    cplx feedback_phase() const { return feedback_phase_; }
    const std::optional<double>& omega0() const { return omega0_; }
    const std::optional<double>& speed() const { return speed_; }
    const std::optional<double>& distance() const { return distance_; }
    const std::optional<double>& bare_coupling() const { return bare_coupling_; }

    /// G0, either as given or as sqrt(2 c0 kappa / pi). Requires a speed.
    double derived_bare_coupling() const;

    std::string describe() const;

private:
    PhysicalParams() = default;
    void validate() const;

    double gamma_ = 1.0;
    double kappa_ = 0.0;
    double tau_ = 1.0;
    cplx feedback_phase_{1.0, 0.0};
    std::optional<double> omega0_;
    std::optional<double> speed_;
    std::optional<double> distance_;
    std::optional<double> bare_coupling_;
};

struct AmplitudeState {
    cplx ce;
    cplx cg;

    double population_e() const { return std::norm(ce); }
    double population_g() const { return std::norm(cg); }
};

struct TimeWindow {
    double begin;
    double end;

    double length() const { return end - begin; }
};

/// Uniformly sampled amplitudes; sample i sits at t0 + i * dt.
/// Solvers that only produce c_g fill c_e with NaN.
class Trajectory {
public:
    Trajectory(double t0, double dt, std::vector<AmplitudeState> samples);

    double t0() const { return t0_; }
    double dt() const { return dt_; }
    std::size_t size() const { return samples_.size(); }
    double time(std::size_t i) const { return t0_ + static_cast<double>(i) * dt_; }
    double t_end() const { return time(samples_.size() - 1); }
    const AmplitudeState& operator[](std::size_t i) const { return samples_[i]; }
    const std::vector<AmplitudeState>& samples() const { return samples_; }

    /// Index range [first, last] of samples inside the window, with half a
    /// step of slack at both ends. Throws std::out_of_range if the window is
    /// not inside the trajectory span.
    std::pair<std::size_t, std::size_t> index_range(TimeWindow window) const;

    Trajectory shifted(double offset) const;

private:
    double t0_;
    double dt_;
    std::vector<AmplitudeState> samples_;
};

struct OscillationStats {
    double amplitude = 0.0;
    double frequency = 0.0;
    double decay_rate = 0.0;
    std::size_t crossings = 0;
    std::size_t peaks = 0;
};

enum class Observable {
    population_e,
    population_g,
    imag_cg,  ///< signed amplitude Im c_g
    real_ce,  ///< signed amplitude Re c_e
};

/// A population oscillates at twice the rate of the underlying amplitude.
/// `signal` reports pi / (mean crossing spacing) of the observed signal;
/// `amplitude` converts population rates back to the amplitude rate.
enum class FrequencyLevel { signal, amplitude };

double sample_observable(const AmplitudeState& s, Observable which);

/**
 * Measures peak value, oscillation frequency and envelope decay of one
 * observable inside a time window.
 *
 * Population observables are centered on their window mean before zero
 * crossings are located; signed amplitudes are used as they are. Crossings
 * are located by linear interpolation and peaks by a parabola through the
 * three samples around each discrete maximum. The decay rate is the negated
 * least-squares slope of log(peak height) against peak time.
 */
OscillationStats extract_oscillation_stats(const Trajectory& traj, TimeWindow window,
                                           Observable which,
                                           FrequencyLevel level = FrequencyLevel::signal);

/// Peak times and heights of an observable inside a window.
struct Peak {
    double time;
    double value;
};
std::vector<Peak> find_peaks(const Trajectory& traj, TimeWindow window, Observable which);

/// Energy in micro-eV to angular frequency in rad/ps.
double energy_to_angular_frequency(double energy_micro_ev);

}  // namespace qfb

#endif  // QFB_CORE_HPP
