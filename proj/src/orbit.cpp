#include "rotnum/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rotnum::orbit {

ArgAdvanceResult arg_advance(const holo::FibredPolyMap& f, double theta0, holo::complex z0,
                             long long m, const ArgAdvanceOptions& options) {
    if (m < 1) throw ValidationError("arg_advance: m must be >= 1");
    if (z0 == holo::complex{}) throw ValidationError("arg_advance: z0 must be nonzero");
    if (!(options.margin >= 0.0 && options.margin < 0.5)) {
        throw ValidationError("arg_advance: margin must lie in [0, 1/2)");
    }
    if (!(options.r_min > 0.0 && options.r_min <= options.r_max)) {
        throw ValidationError("arg_advance: need 0 < r_min <= r_max");
    }
    const double limit = two_pi * (0.5 - options.margin);
    std::vector<double> phase;
    if (options.branch == Branch::linear_part) {
        if (options.phase_grid < 2) throw ValidationError("arg_advance: phase_grid must be >= 2");
        phase = holo::unwrap_phase(f.rho1(), options.phase_grid);
        if (std::lround((phase.back() - phase.front()) / two_pi) != 0) {
            throw ValidationError("arg_advance: rho_1 has nonzero winding degree");
        }
    }
    // Continuous argument of rho_1 at theta in [0, 1): the principal value
    // moved to the branch nearest the interpolated grid phase.
    auto linear_phase = [&](double theta) {
        const double pos = theta * options.phase_grid;
        const auto j = std::min(static_cast<std::size_t>(pos), phase.size() - 2);
        const double w = pos - static_cast<double>(j);
        const double guess = (1.0 - w) * phase[j] + w * phase[j + 1];
        const double a = std::arg(f.rho1()(theta));
        return a + two_pi * std::round((guess - a) / two_pi);
    };
    ArgAdvanceResult result;
    std::vector<double> increments;
    increments.reserve(static_cast<std::size_t>(m));
    double theta = mod1(theta0);
    holo::complex z = z0;
    double running = 0.0;
    if (options.record_trace) result.trace.push_back({0, theta, z, 0.0});
    for (long long k = 0; k < m; ++k) {
        const holo::complex next = holo::eval_fibre(f, theta, z);
        const double r = std::abs(next);
        if (!(r >= options.r_min && r <= options.r_max)) {
            std::ostringstream os;
            os << "orbit left the annulus [" << options.r_min << ", " << options.r_max
               << "] at step " << k + 1 << " (|z| = " << r << ")";
            throw OrbitEscape(os.str(), k + 1);
        }
        const double centre = phase.empty() ? 0.0 : linear_phase(theta);
        const double deviation = std::arg(next / z * std::polar(1.0, -centre));
        if (std::abs(deviation) >= limit) {
            std::ostringstream os;
            os << "step " << k + 1 << " rotates " << deviation / two_pi
               << " turn away from the branch centre, too close to a half turn";
            throw NumericalError(os.str());
        }
        const double step = centre + deviation;
        increments.push_back(step);
        theta = mod1(theta + f.alpha);
        z = next;
        if (options.record_trace) {
            running += step / two_pi;
            result.trace.push_back({k + 1, theta, z, running});
        }
    }
    const double md = static_cast<double>(m);
    auto& est = result.estimate;
    est.value = pairwise_sum(increments) / (two_pi * md);
    const double half = 0.5 / md + 10.0 * 2.220446049250313e-16;
    est.lower = est.value - half;
    est.upper = est.value + half;
    est.iterations = m;
    return result;
}

}  // namespace rotnum::orbit
