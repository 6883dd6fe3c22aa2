#include "rotnum/approx.hpp"

#include <cmath>
#include <numeric>

namespace rotnum::approx {

ConvergentSequence convergents(double alpha, int count) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("convergents: alpha must lie in (0, 1)");
    if (count < 1) throw ValidationError("convergents: count must be >= 1");
    ConvergentSequence out;
    // p_{-1}/q_{-1} = 1/0, p_0/q_0 = 0/1 since a_0 = 0.
    long long p_prev = 1, q_prev = 0;
    long long p = 0, q = 1;
    double rem = alpha;
    while (static_cast<int>(out.terms.size()) < count) {
        if (rem <= 0.0) {
            out.terminated = true;
            out.reason = "continued fraction expansion terminates (alpha is rational at double precision)";
            break;
        }
        const double inv = 1.0 / rem;
        const double a_real = std::floor(inv);
        if (a_real * static_cast<double>(q) + static_cast<double>(q_prev) >
            static_cast<double>(max_denominator)) {
            out.terminated = true;
            out.reason = "denominator would exceed the double-precision limit";
            break;
        }
        const auto a = static_cast<long long>(a_real);
        const long long p_next = a * p + p_prev;
        const long long q_next = a * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
        out.terms.push_back({p, q});
        rem = inv - a_real;
        // Once p/q reproduces alpha the remainder is rounding noise.
        if (std::abs(alpha - static_cast<double>(p) / static_cast<double>(q)) <=
            4.0 * 2.220446049250313e-16 * alpha) {
            rem = 0.0;
        }
    }
    return out;
}

std::vector<double> FiniteApproximant::orbit() const {
    std::vector<double> pts(static_cast<std::size_t>(base.q));
    for (long long j = 0; j < base.q; ++j) {
        // (j p mod q) / q avoids the drift of adding p/q repeatedly.
        pts[static_cast<std::size_t>(j)] =
            anchor + static_cast<double>((j * base.p) % base.q) / static_cast<double>(base.q);
    }
    return pts;
}

double FiniteApproximant::log_modulus_sum() const {
    std::vector<double> logs;
    for (double t : orbit()) logs.push_back(std::log(std::abs(map.rho1()(t))));
    return pairwise_sum(logs);
}

FiniteApproximant build_approximant(const holo::FibredPolyMap& f, const Convergent& c,
                                    double anchor) {
    if (c.q < 1 || std::gcd(c.p, c.q) != 1) throw ValidationError("convergent must be reduced with q >= 1");
    FiniteApproximant a;
    a.base = c;
    a.anchor = anchor;
    std::vector<double> logs;
    logs.reserve(static_cast<std::size_t>(c.q));
    for (double t : a.orbit()) {
        const double m = std::abs(f.rho1()(t));
        if (!(m > 1e-12)) throw NumericalError("rho_1 vanishes on the periodic orbit");
        logs.push_back(std::log(m));
    }
    const double s = pairwise_sum(logs);
    a.correction = std::exp(-s / static_cast<double>(c.q));
    a.map.alpha = c.value();
    a.map.coeffs = f.coeffs;
    a.map.coeffs.front() = f.rho1().scaled(a.correction);
    return a;
}

std::vector<double> orbit_phases(const FiniteApproximant& a, int path_grid) {
    const long long q = a.base.q;
    // Sub-steps per gap 1/q so the path has at least path_grid samples.
    const long long sub = std::max<long long>(1, (path_grid + q - 1) / q);
    const long long total = sub * q;
    if (total > (1LL << 30)) throw NumericalError("orbit path too fine");
    const auto path = holo::unwrap_phase(a.map.rho1(), static_cast<int>(total), a.anchor);
    if (std::lround((path.back() - path.front()) / two_pi) != 0) {
        throw ValidationError("rho_1 has nonzero winding degree along the orbit path");
    }
    // Orbit point j sits at offset (j p mod q)/q, i.e. path index sub * (j p mod q).
    std::vector<double> phases(static_cast<std::size_t>(q));
    for (long long j = 0; j < q; ++j) {
        phases[static_cast<std::size_t>(j)] = path[static_cast<std::size_t>(sub * ((j * a.base.p) % q))];
    }
    return phases;
}

double rho_ff_chain(const FiniteApproximant& a, int path_grid) {
    const auto phases = orbit_phases(a, path_grid);
    return pairwise_sum(phases) / (two_pi * static_cast<double>(a.base.q));
}

skewfibre::FiniteFibreSystem angular_system(const FiniteApproximant& a, int path_grid) {
    skewfibre::FiniteFibreSystem sys;
    for (double phase : orbit_phases(a, path_grid)) {
        sys.lifts.push_back(circle::CircleMapLift::rigid(phase / two_pi));
    }
    return sys;
}

ConvergenceTable riemann_convergence(const holo::FibredPolyMap& f,
                                     const std::vector<Convergent>& convs, double anchor,
                                     int grid) {
    ConvergenceTable table;
    table.anchor = anchor;
    table.rho_T = holo::rho_T(f, grid);
    for (const auto& c : convs) {
        const auto a = build_approximant(f, c, anchor);
        ConvergenceRow row;
        row.p = c.p;
        row.q = c.q;
        row.rho_ff = mod1(rho_ff_chain(a, grid));
        row.circ_dist = circular_distance(row.rho_ff, table.rho_T);
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace rotnum::approx
