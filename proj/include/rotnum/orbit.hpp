#pragma once

#include <vector>

#include "rotnum/holo.hpp"

namespace rotnum::orbit {

/// How each step's rotation is lifted to the universal cover of C \ {0}.
enum class Branch {
    /// Branch nearest the continuous argument of rho_1(theta_k): exact for
    /// linear maps, and continuous in z near the invariant zero section.
    linear_part,
    /// Principal value in (-1/2, 1/2] turn; needs every step below half a turn.
    principal,
};

struct ArgAdvanceOptions {
    /// Orbit must stay in r_min <= |z_k| <= r_max.
    double r_min = 1e-12;
    double r_max = 1e3;
    Branch branch = Branch::linear_part;
    /// The step rotation must stay below (1/2 - margin) turn away from the
    /// branch centre (zero, or the linear-part argument).
    double margin = 0.05;
    /// Resolution of the continuous argument of rho_1 (linear_part only).
    int phase_grid = 4096;
    bool record_trace = false;
};

struct TraceRow {
    long long k = 0;
    double theta = 0.0;
    holo::complex z;
    double cumulative_turns = 0.0;
};

struct ArgAdvanceResult {
    RotationEstimate estimate;
    std::vector<TraceRow> trace;
};

/// Thrown when the orbit leaves the annulus.
class OrbitEscape : public NumericalError {
public:
    OrbitEscape(const std::string& what, long long step) : NumericalError(what), step(step) {}
    long long step;
};

/// Mean angular advance of the orbit of (theta0, z0) in turns per step,
/// (1 / 2 pi m) sum_{k<m} arg(z_{k+1} / z_k), each increment taken on the
/// branch selected by `options.branch`. With the linear-part branch the
/// base branch is the principal argument of rho_1 at theta = 0. Steps within
/// `margin` of a half turn from the branch centre raise NumericalError. The
/// value is not reduced mod 1.
/// The bracket is value -/+ (1/(2m) + rounding) and is not a rigorous
/// enclosure of the limit.
ArgAdvanceResult arg_advance(const holo::FibredPolyMap& f, double theta0, holo::complex z0,
                             long long m, const ArgAdvanceOptions& options = {});

}  // namespace rotnum::orbit
