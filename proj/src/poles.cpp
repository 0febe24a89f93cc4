#include "qfb/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qfb {

SearchBox SearchBox::default_for(const PhysicalParams& params)
{
    return {-3.0 * params.kappa(), 0.5 * params.gamma(), -3.0 * params.gamma(),
            3.0 * params.gamma()};
}

cplx characteristic(cplx s, const PhysicalParams& p)
{
    const double g = p.gamma();
    return s * s + g * g + p.kappa() * s * (1.0 - p.feedback_phase() * std::exp(-s * p.tau()));
}

cplx characteristic_derivative(cplx s, const PhysicalParams& p)
{
    const cplx delayed = p.feedback_phase() * std::exp(-s * p.tau());
    return 2.0 * s + p.kappa() * (1.0 - delayed) + p.kappa() * s * p.tau() * delayed;
}

cplx PoleSet::reconstruct_on_axis(double t, double re_tol) const
{
    cplx sum = 0.0;
    for (const Pole& p : poles)
        if (std::abs(p.s.real()) <= re_tol)
            sum += p.residue * std::exp(p.s * t);
    return sum;
}

PoleSet find_poles(const PhysicalParams& params, const SearchBox& box, int grid_density,
                   double tol)
{
    if (grid_density < 1)
        throw std::invalid_argument("grid density must be at least 1");
    if (!(box.re_max >= box.re_min) || !(box.im_max >= box.im_min))
        throw std::invalid_argument("search box is empty");

    const double gamma = params.gamma();
    const double scale = std::max(gamma * gamma, params.kappa() * gamma);
    const double accept = tol * scale;
    const double dedup = 1e-8 * gamma;
    // roots on the box boundary (e.g. s = +-i gamma when kappa = 0) are kept
    const double margin = 1e-6 * gamma;

    PoleSet set;
    const auto axis = [grid_density](double lo, double hi, int i) {
        if (grid_density == 1)
            return 0.5 * (lo + hi);
        return lo + (hi - lo) * i / (grid_density - 1);
    };

    for (int a = 0; a < grid_density; ++a) {
        for (int b = 0; b < grid_density; ++b) {
            ++set.seeds;
            cplx s(axis(box.re_min, box.re_max, a), axis(box.im_min, box.im_max, b));
            bool finite = true;  // false also when D' vanishes
            for (int iter = 0; iter < 100; ++iter) {
                const cplx d = characteristic(s, params);
                const cplx dp = characteristic_derivative(s, params);
                if (dp == 0.0) {
                    finite = false;
                    break;
                }
                const cplx step = d / dp;
                s -= step;
                if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
                    finite = false;
                    break;
                }
                if (std::abs(step) <= 1e-15 * std::max(gamma, std::abs(s)))
                    break;
            }
            if (!finite)
                continue;
            const double residual = std::abs(characteristic(s, params));
            if (residual > accept)
                continue;
            if (s.real() < box.re_min - margin || s.real() > box.re_max + margin ||
                s.imag() < box.im_min - margin || s.imag() > box.im_max + margin)
                continue;
            ++set.converged_seeds;
            const bool seen = std::any_of(set.poles.begin(), set.poles.end(),
                                          [&](const Pole& p) { return std::abs(p.s - s) <= dedup; });
            if (seen)
                continue;
            const cplx dp = characteristic_derivative(s, params);
            if (dp == 0.0)
                continue;
            set.poles.push_back({s, imag_unit * gamma / dp, residual});
        }
    }

    std::sort(set.poles.begin(), set.poles.end(),
              [](const Pole& a, const Pole& b) { return a.s.real() > b.s.real(); });
    if (set.poles.empty()) {
        std::ostringstream os;
        os << "no root converged from " << set.seeds << " seeds";
        set.diagnostic = os.str();
    }
    return set;
}

}  // namespace qfb
