#include "rotnum/skewfibre.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace rotnum::skewfibre {

namespace {

int wrap(long long i, int n) {
    long long r = i % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

void require_index(const FiniteFibreSystem& sys, int i) {
    if (i < 0 || i >= sys.n()) {
        throw ValidationError("fibre index " + std::to_string(i) + " out of range [0, " +
                              std::to_string(sys.n()) + ")");
    }
}

}  // namespace

void require_valid(const FiniteFibreSystem& sys) {
    if (sys.lifts.empty()) throw ValidationError("finite fibre system has no fibres");
    for (int i = 0; i < sys.n(); ++i) {
        auto report = circle::validate_lift(sys.lift(i));
        if (!report.passed()) {
            throw ValidationError("lift " + std::to_string(i) + ": " + report.message);
        }
    }
}

double step_psi(const FiniteFibreSystem& sys, int i, double x, long long m) {
    require_index(sys, i);
    const double whole0 = std::floor(x);
    const double frac0 = x - whole0;
    double whole = 0.0;
    double frac = frac0;
    int fibre = i;
    for (long long j = 0; j < m; ++j) {
        const double y = sys.lift(fibre)(frac);
        const double fl = std::floor(y);
        whole += fl;
        frac = y - fl;
        if (++fibre == sys.n()) fibre = 0;
    }
    return whole + (frac - frac0);
}

CircleMapLift composite_lift(const FiniteFibreSystem& sys, int start_fibre) {
    require_index(sys, start_fibre);
    circle::Chain chain;
    for (int j = 0; j < sys.n(); ++j) {
        const auto& g = sys.lift(wrap(start_fibre + j, sys.n()));
        if (const auto* c = std::get_if<circle::Chain>(&g.kind())) {
            chain.parts.insert(chain.parts.end(), c->parts.begin(), c->parts.end());
        } else {
            chain.parts.push_back(g);
        }
    }
    return chain;
}

RotationEstimate rho_ff(const FiniteFibreSystem& sys, long long cycles, int start_fibre,
                        double x) {
    require_valid(sys);
    if (cycles < 1) throw ValidationError("rho_ff: cycles must be >= 1");
    auto est = circle::rho_bracket_unchecked(composite_lift(sys, start_fibre), x, cycles);
    const double n = sys.n();
    est.value /= n;
    est.lower /= n;
    est.upper /= n;
    return est;
}

RotationEstimate rho_ff_psi(const FiniteFibreSystem& sys, long long m, int i, double x) {
    require_valid(sys);
    const long long n = sys.n();
    const long long steps = std::max(n, (m / n) * n);
    const double md = static_cast<double>(steps);
    RotationEstimate est;
    est.value = step_psi(sys, i, x, steps) / md;
    // Psi^(qn)(i, x) is q iterations of the first-return lift at fibre i.
    const double half = (1.0 + circle::bracket_fudge * md) / md;
    est.lower = est.value - half;
    est.upper = est.value + half;
    est.iterations = steps;
    return est;
}

StepLemmaReport check_step_lemma(const FiniteFibreSystem& sys, long long samples,
                                 std::uint64_t seed, long long max_m,
                                 double periodicity_tolerance, double spread_tolerance) {
    require_valid(sys);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> fibre(0, sys.n() - 1);
    std::uniform_real_distribution<double> point(-4.0, 4.0);
    std::uniform_int_distribution<int> shift(-5, 5);
    std::uniform_int_distribution<long long> steps(0, max_m);

    StepLemmaReport report;
    report.samples = samples;
    report.periodicity_tolerance = periodicity_tolerance;
    report.spread_tolerance = spread_tolerance;
    for (long long s = 0; s < samples; ++s) {
        const int i = fibre(rng);
        const double x = point(rng);
        const double xp = point(rng);
        const int k = shift(rng);
        const long long m = steps(rng);
        const double psi = step_psi(sys, i, x, m);
        const double periodic = std::abs(step_psi(sys, i, x + k, m) - psi);
        const double spread = std::abs(step_psi(sys, i, xp, m) - psi);
        report.worst_periodicity_residual = std::max(report.worst_periodicity_residual, periodic);
        report.worst_spread = std::max(report.worst_spread, spread);
        if (periodic > periodicity_tolerance) ++report.periodicity_violations;
        if (spread > 1.0 + spread_tolerance) ++report.spread_violations;
    }
    return report;
}

FiniteFibreSystem power_system(const FiniteFibreSystem& sys, int m) {
    if (m < 1) throw ValidationError("power_system: m must be >= 1");
    if (sys.lifts.empty()) throw ValidationError("finite fibre system has no fibres");
    FiniteFibreSystem out;
    out.lifts.reserve(sys.lifts.size());
    for (int block = 0; block < sys.n(); ++block) {
        circle::Chain chain;
        for (int j = 0; j < m; ++j) {
            const auto& g = sys.lift(wrap(static_cast<long long>(block) * m + j, sys.n()));
            if (const auto* c = std::get_if<circle::Chain>(&g.kind())) {
                chain.parts.insert(chain.parts.end(), c->parts.begin(), c->parts.end());
            } else {
                chain.parts.push_back(g);
            }
        }
        out.lifts.emplace_back(std::move(chain));
    }
    return out;
}

PowerCheckReport power_rho_check(const FiniteFibreSystem& sys, int m, long long cycles) {
    PowerCheckReport r;
    r.power = rho_ff(power_system(sys, m), cycles);
    const auto base = rho_ff(sys, cycles);
    r.scaled = {m * base.value, m * base.lower, m * base.upper, base.iterations};
    r.difference = std::abs(r.power.value - r.scaled.value);
    r.tolerance = 0.5 * (r.power.width() + r.scaled.width());
    r.passed = r.difference <= r.tolerance;
    return r;
}

FiniteFibreSystem conjugate_system(const FiniteFibreSystem& sys,
                                   const std::vector<CircleMapLift>& h) {
    if (h.size() != sys.lifts.size()) {
        throw ValidationError("conjugate_system: need one conjugacy per fibre");
    }
    std::vector<CircleMapLift> inverses;
    inverses.reserve(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        const auto* pl = std::get_if<circle::PiecewiseLinear>(&h[i].kind());
        if (pl == nullptr) {
            throw ValidationError("conjugate_system: h_" + std::to_string(i) +
                                  " is not piecewise linear");
        }
        if (auto why = circle::structural_problem(h[i]); !why.empty()) {
            throw ValidationError("conjugate_system: h_" + std::to_string(i) + ": " + why);
        }
        const double h0 = h[i](0.0);
        if (!(h0 >= 0.0 && h0 < 1.0)) {
            throw ValidationError("conjugate_system: h_" + std::to_string(i) +
                                  "(0) must lie in [0, 1)");
        }
        inverses.push_back(circle::inverse_pl(h[i]));
    }
    FiniteFibreSystem out;
    const int n = sys.n();
    for (int i = 0; i < n; ++i) {
        auto inner = circle::compose(h[static_cast<std::size_t>(i)], sys.lift(i));
        out.lifts.push_back(circle::compose(inner, inverses[static_cast<std::size_t>(wrap(i + 1, n))]));
    }
    return out;
}

}  // namespace rotnum::skewfibre
