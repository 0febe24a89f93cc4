#include "qfb/core.hpp"

#include <cmath>
#include <sstream>

namespace qfb {

namespace {

bool is_population(Observable which)
{
    return which == Observable::population_e || which == Observable::population_g;
}

}  // namespace

double sample_observable(const AmplitudeState& s, Observable which)
{
    switch (which) {
    case Observable::population_e:
        return s.population_e();
    case Observable::population_g:
        return s.population_g();
    case Observable::imag_cg:
        return s.cg.imag();
    case Observable::real_ce:
        return s.ce.real();
    }
    return 0.0;
}

std::vector<Peak> find_peaks(const Trajectory& traj, TimeWindow window, Observable which)
{
    const auto [first, last] = traj.index_range(window);
    std::vector<Peak> peaks;
    if (last < first + 2)
        return peaks;
    for (std::size_t i = first + 1; i < last; ++i) {
        const double ym = sample_observable(traj[i - 1], which);
        const double y0 = sample_observable(traj[i], which);
        const double yp = sample_observable(traj[i + 1], which);
        if (!(y0 > ym && y0 >= yp))
            continue;
        // parabola through the three samples
        const double curvature = ym - 2.0 * y0 + yp;
        double offset = 0.0;
        double height = y0;
        if (curvature < 0.0) {
            offset = 0.5 * (ym - yp) / curvature;
            height = y0 - 0.25 * (ym - yp) * offset;
        }
        peaks.push_back({traj.time(i) + offset * traj.dt(), height});
    }
    return peaks;
}

OscillationStats extract_oscillation_stats(const Trajectory& traj, TimeWindow window,
                                           Observable which, FrequencyLevel level)
{
    const auto [first, last] = traj.index_range(window);

    std::vector<double> values;
    values.reserve(last - first + 1);
    for (std::size_t i = first; i <= last; ++i)
        values.push_back(sample_observable(traj[i], which));

    double centre = 0.0;
    if (is_population(which)) {
        for (double v : values)
            centre += v;
        centre /= static_cast<double>(values.size());
    }

    std::vector<double> crossings;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double a = values[i - 1] - centre;
        const double b = values[i] - centre;
        if ((a >= 0.0) == (b >= 0.0))
            continue;
        crossings.push_back(traj.time(first + i - 1) + a / (a - b) * traj.dt());
    }
    if (crossings.size() < 3) {
        std::ostringstream os;
        os << "insufficient data: " << crossings.size() << " zero crossings in window ["
           << window.begin << ", " << window.end << "], need at least 3";
        throw insufficient_data_error(os.str());
    }

    OscillationStats stats;
    stats.crossings = crossings.size();
    const double spacing = (crossings.back() - crossings.front()) /
                           static_cast<double>(crossings.size() - 1);
    stats.frequency = pi / spacing;
    if (level == FrequencyLevel::amplitude && is_population(which))
        stats.frequency *= 0.5;

    const std::vector<Peak> peaks = find_peaks(traj, window, which);
    stats.peaks = peaks.size();
    double amplitude = 0.0;
    for (double v : values)
        amplitude = std::max(amplitude, v);
    for (const Peak& p : peaks)
        amplitude = std::max(amplitude, p.value);
    stats.amplitude = amplitude;

    std::vector<Peak> positive;
    for (const Peak& p : peaks)
        if (p.value > 0.0)
            positive.push_back(p);
    if (positive.size() >= 2) {
        const auto n = static_cast<double>(positive.size());
        double mean_t = 0.0, mean_y = 0.0;
        for (const Peak& p : positive) {
            mean_t += p.time;
            mean_y += std::log(p.value);
        }
        mean_t /= n;
        mean_y /= n;
        double stt = 0.0, sty = 0.0;
        for (const Peak& p : positive) {
            const double dt = p.time - mean_t;
            stt += dt * dt;
            sty += dt * (std::log(p.value) - mean_y);
        }
        if (stt > 0.0)
            stats.decay_rate = -sty / stt;
    }
    return stats;
}

}  // namespace qfb
