#pragma once

// Sub-additivity of the step function: Psi^(m+r)(i,x) <= Psi^(m)(i,x) +
// Psi^(r)(i,x) + C. The constant follows the proof: pad r up to a multiple of
// n with s < n extra steps, which costs at most the oscillation of Psi^(s)
// over fibres and points, plus one turn for each of the two uses of the
// spread bound.

#include <algorithm>
#include <cstdint>
#include <random>

#include "rotnum/skewfibre.hpp"

namespace support {

inline double subadditivity_constant(const rotnum::skewfibre::FiniteFibreSystem& sys, int grid = 2048) {
    double worst = 0.0;
    for (int s = 0; s < sys.n(); ++s) {
        double hi = -INFINITY, lo = INFINITY;
        for (int j = 0; j < sys.n(); ++j) {
            for (int g = 0; g < grid; ++g) {
                const double v = rotnum::skewfibre::step_psi(sys, j, static_cast<double>(g) / grid, s);
                hi = std::max(hi, v);
                lo = std::min(lo, v);
            }
        }
        worst = std::max(worst, hi - lo);
    }
    return worst + 2.0;
}

struct SubadditivityReport {
    double constant = 0.0;
    long long samples = 0;
    long long violations = 0;
    double min_slack = INFINITY;  ///< min of rhs - lhs
};

inline SubadditivityReport check_subadditivity(const rotnum::skewfibre::FiniteFibreSystem& sys, long long samples,
                                               std::uint64_t seed, long long max_steps = 300) {
    SubadditivityReport rep;
    rep.constant = subadditivity_constant(sys);
    rep.samples = samples;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> steps(0, max_steps);
    std::uniform_int_distribution<int> fibre(0, sys.n() - 1);
    std::uniform_real_distribution<double> point(-3.0, 3.0);
    for (long long t = 0; t < samples; ++t) {
        const long long m = steps(rng), r = steps(rng);
        const int i = fibre(rng);
        const double x = point(rng);
        using rotnum::skewfibre::step_psi;
        const double lhs = step_psi(sys, i, x, m + r);
        const double rhs = step_psi(sys, i, x, m) + step_psi(sys, i, x, r) + rep.constant;
        rep.min_slack = std::min(rep.min_slack, rhs - lhs);
        if (lhs > rhs) ++rep.violations;
    }
    return rep;
}

}  // namespace support
