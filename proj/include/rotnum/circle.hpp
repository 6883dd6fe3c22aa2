#pragma once

#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rotnum/common.hpp"

namespace rotnum::circle {

class CircleMapLift;

/// x -> x + beta.
struct Rigid {
    double beta = 0.0;
};

/// x -> x + beta + (epsilon / 2pi) sin(2 pi k x). Derivative is
/// 1 + epsilon k cos(2 pi k x), so the lift is increasing iff |epsilon k| < 1.
struct SineFamily {
    double beta = 0.0;
    double epsilon = 0.0;
    int k = 1;
};

/// Linear interpolation through nodes (x_j, y_j) over one period window
/// [x_0, x_0 + 1], extended by F(x + 1) = F(x) + 1. Both coordinates must be
/// strictly increasing with x_last = x_0 + 1 and y_last = y_0 + 1.
struct PiecewiseLinear {
    std::vector<std::pair<double, double>> nodes;
};

/// parts[0] applied first.
struct Chain {
    std::vector<CircleMapLift> parts;
};

/// A lift F: R -> R of a circle homeomorphism, given in closed form.
class CircleMapLift {
public:
    using Kind = std::variant<Rigid, SineFamily, PiecewiseLinear, Chain>;

    CircleMapLift() : kind_(Rigid{0.0}) {}
    CircleMapLift(Rigid r) : kind_(r) {}
    CircleMapLift(SineFamily s) : kind_(s) {}
    CircleMapLift(PiecewiseLinear p) : kind_(std::move(p)) {}
    CircleMapLift(Chain c) : kind_(std::move(c)) {}

    static CircleMapLift rigid(double beta) { return Rigid{beta}; }
    static CircleMapLift sine_family(double beta, double epsilon, int k) {
        return SineFamily{beta, epsilon, k};
    }
    static CircleMapLift piecewise_linear(std::vector<std::pair<double, double>> nodes) {
        return PiecewiseLinear{std::move(nodes)};
    }
    static CircleMapLift identity() { return Rigid{0.0}; }

    const Kind& kind() const { return kind_; }

    /// F(x).
    double operator()(double x) const;

private:
    Kind kind_;
};

/// g after f.
CircleMapLift compose(const CircleMapLift& f, const CircleMapLift& g);

/// F + p for an integer p.
CircleMapLift shifted(const CircleMapLift& f, long long p);

/// Exact inverse of a piecewise-linear lift. Throws ValidationError for
/// other kinds or invalid nodes.
CircleMapLift inverse_pl(const CircleMapLift& h);

/// Analytic checks only (parameter ranges, node ordering); empty when fine.
std::string structural_problem(const CircleMapLift& lift);

struct ValidationReport {
    bool structural_ok = true;
    bool periodic_ok = true;
    bool monotone_ok = true;
    double worst_periodicity_residual = 0.0;
    double min_increment = 0.0;
    std::string message;

    bool passed() const { return structural_ok && periodic_ok && monotone_ok; }
};

/// Samples F at grid_size + 1 equispaced points of [0, 1] and checks
/// F(x + 1) = F(x) + 1 and strict increase between neighbours. Passing is
/// necessary, not sufficient: behaviour between grid points is not seen.
ValidationReport validate_lift(const CircleMapLift& lift, int grid_size = 256);

/// Throws ValidationError unless validate_lift passes.
void require_valid(const CircleMapLift& lift, int grid_size = 256);

/// F^m(x). Integer parts are carried separately so each evaluation happens
/// on [0, 1); F(x + n) = F(x) + n makes this exact in real arithmetic.
double iterate_lift(const CircleMapLift& lift, double x, long long m);

/// Relative widening of every bracket per iteration, absorbing the rounding
/// accumulated over m evaluations.
inline constexpr double bracket_fudge = 10.0 * 2.220446049250313e-16;

/// (F^m(x) - x) / m with the classical enclosure |F^m(x) - x - m rho| < 1,
/// widened by bracket_fudge * m in the numerator.
RotationEstimate rho_bracket(const CircleMapLift& lift, double x, long long m);

/// Same as rho_bracket but skips validation (hot loops that validated once).
RotationEstimate rho_bracket_unchecked(const CircleMapLift& lift, double x, long long m);

/// Random orientation-preserving PL lift with `interior_nodes` interior
/// breakpoints in (0, 1) and h(0) uniform in [0, 1).
CircleMapLift random_pl_homeo(std::mt19937_64& rng, int interior_nodes);

}  // namespace rotnum::circle
