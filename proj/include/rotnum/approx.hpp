#pragma once

#include <string>
#include <vector>

#include "rotnum/holo.hpp"
#include "rotnum/skewfibre.hpp"

namespace rotnum::approx {

struct Convergent {
    long long p = 0;
    long long q = 1;

    double value() const { return static_cast<double>(p) / static_cast<double>(q); }
    friend bool operator==(const Convergent&, const Convergent&) = default;
};

struct ConvergentSequence {
    std::vector<Convergent> terms;
    /// Set when the expansion stopped before `count` terms.
    bool terminated = false;
    std::string reason;
};

/// Denominators beyond this are not trusted from a double expansion.
inline constexpr long long max_denominator = 100'000'000;

/// Continued-fraction convergents p_k/q_k of alpha in (0, 1), starting with
/// 1/a_1. Stops early when the remainder vanishes (alpha rational at double
/// precision) or q would exceed max_denominator.
ConvergentSequence convergents(double alpha, int count);

/// F_(n): base rotation p/q, rho_1 rescaled by a constant so that
/// sum_{j<q} log|rho_1^(n)(anchor + j p/q)| = 0. Higher coefficients are
/// copied unchanged.
struct FiniteApproximant {
    Convergent base;
    double anchor = 0.0;
    holo::FibredPolyMap map;
    double correction = 1.0;

    /// The q orbit points anchor + j p/q, j = 0..q-1 (not reduced).
    std::vector<double> orbit() const;
    /// sum_{j<q} log|rho_1^(n)| over the orbit; zero up to rounding.
    double log_modulus_sum() const;
};

FiniteApproximant build_approximant(const holo::FibredPolyMap& f, const Convergent& c,
                                    double anchor = 0.0);

/// Resolution used to carry the argument branch between orbit points.
inline constexpr int default_path_grid = 4096;

/// Continuous arguments of rho_1^(n) at the orbit points anchor + j p/q,
/// in orbit order. The branch is fixed by the principal value at the anchor
/// and continued along theta in [anchor, anchor + 1).
std::vector<double> orbit_phases(const FiniteApproximant& a, int path_grid = default_path_grid);

/// (1 / 2 pi q) sum_j arg rho_1^(n)(anchor + j p/q): the rotation number of
/// the linear good chain along the periodic orbit. Unreduced.
double rho_ff_chain(const FiniteApproximant& a, int path_grid = default_path_grid);

/// The q-fibre system of rigid lifts by arg rho_1^(n)(theta_j) / 2 pi,
/// fibre j following the orbit order.
skewfibre::FiniteFibreSystem angular_system(const FiniteApproximant& a,
                                            int path_grid = default_path_grid);

struct ConvergenceRow {
    long long p = 0;
    long long q = 1;
    double rho_ff = 0.0;     ///< reduced to [0, 1)
    double circ_dist = 0.0;  ///< to rho_T(F)
};

struct ConvergenceTable {
    double rho_T = 0.0;
    double anchor = 0.0;
    std::vector<ConvergenceRow> rows;
};

ConvergenceTable riemann_convergence(const holo::FibredPolyMap& f,
                                     const std::vector<Convergent>& convergents,
                                     double anchor = 0.0, int grid = 4096);

}  // namespace rotnum::approx
