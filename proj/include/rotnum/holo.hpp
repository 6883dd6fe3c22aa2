#pragma once

#include <complex>
#include <map>
#include <random>
#include <vector>

#include "rotnum/common.hpp"

namespace rotnum::holo {

using complex = std::complex<double>;

/// Finite Fourier sum sum_k c_k exp(2 pi i k theta).
class TrigPoly {
public:
    TrigPoly() = default;
    explicit TrigPoly(std::map<int, complex> harmonics);

    static TrigPoly constant(complex c) { return TrigPoly({{0, c}}); }
    /// a cos(2 pi k theta) + b sin(2 pi k theta).
    static TrigPoly cos_sin(int k, complex a, complex b);

    const std::map<int, complex>& harmonics() const { return harmonics_; }
    complex coefficient(int k) const;
    bool is_zero() const { return harmonics_.empty(); }
    int degree() const;

    complex operator()(double theta) const;

    /// theta -> p(theta + shift).
    TrigPoly translated(double shift) const;

    TrigPoly& operator+=(const TrigPoly& o);
    TrigPoly& operator*=(complex s);
    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
    friend TrigPoly operator-(TrigPoly a, const TrigPoly& b);
    friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
    friend TrigPoly operator*(TrigPoly a, complex s) { return a *= s; }

private:
    void prune();
    std::map<int, complex> harmonics_;
};

/// Coefficient function num(theta) / den(theta) * exp(log(theta)). Closed
/// under products, quotients and translation, which is what conjugation by
/// theta-dependent linear fibre maps needs.
struct CoeffFn {
    TrigPoly num = TrigPoly::constant(1.0);
    TrigPoly den = TrigPoly::constant(1.0);
    TrigPoly log;

    static CoeffFn poly(TrigPoly p) { return {std::move(p), TrigPoly::constant(1.0), {}}; }
    static CoeffFn exp_of(TrigPoly q) { return {TrigPoly::constant(1.0), TrigPoly::constant(1.0), std::move(q)}; }

    complex operator()(double theta) const;
    bool is_zero() const { return num.is_zero(); }

    CoeffFn translated(double shift) const;
    CoeffFn scaled(complex s) const;
    friend CoeffFn operator*(const CoeffFn& a, const CoeffFn& b);
    friend CoeffFn operator/(const CoeffFn& a, const CoeffFn& b);
};

/// exp(2 pi i (beta + phase(theta))) for a real-valued phase trig poly.
CoeffFn phase_exponential(double beta, const TrigPoly& phase);

/// (theta, z) -> (theta + alpha, sum_{k>=1} rho_k(theta) z^k).
/// coeffs[0] is rho_1, the derivative at the invariant zero section.
struct FibredPolyMap {
    double alpha = 0.0;
    std::vector<CoeffFn> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()); }
    const CoeffFn& rho1() const;
};

/// f_theta(z); zero is fixed for every theta.
complex eval_fibre(const FibredPolyMap& f, double theta, complex z);

/// Largest accepted |arg increment| between neighbouring grid samples.
inline constexpr double max_unwrap_step = two_pi / 4.0;

/// Continuous argument of fn at theta_j = start + j / grid, j = 0..grid,
/// starting from the principal argument at `start`. Throws NumericalError if
/// fn vanishes on the grid or two neighbours differ by more than
/// max_unwrap_step.
std::vector<double> unwrap_phase(const CoeffFn& fn, int grid, double start = 0.0);

/// Number of turns of fn around 0 as theta runs once round the circle.
int winding_degree(const CoeffFn& fn, int grid);
int winding_degree(const FibredPolyMap& f, int grid);

/// Composite Simpson on a 1-periodic integrand sampled at j/panels,
/// j = 0..panels. panels must be even.
double periodic_simpson(std::span<const double> samples);

/// Simpson approximation of the integral of log|rho_1| over the circle. Zero
/// for an indifferent invariant curve.
double indifference_defect(const FibredPolyMap& f, int grid);

/// Fibred rotation number: mean of arg rho_1 / 2 pi over the circle, reduced
/// to [0, 1). Only the argument enters; the modulus part is the
/// indifference defect.
double rho_T(const FibredPolyMap& f, int grid = 4096);

/// Unreduced lift of rho_T using the branch with arg rho_1(0) principal.
double rho_T_lift(const FibredPolyMap& f, int grid = 4096);

/// H^{-1} o F o H for h_theta(z) = c(theta) z: the coefficient of z^k becomes
/// rho_k(theta) c(theta)^k / c(theta + alpha). Exact, no truncation, since h
/// is linear in z. c must be nonvanishing with zero winding on the grid.
FibredPolyMap conjugate_linear_part(const FibredPolyMap& f, const CoeffFn& c, int grid = 4096);

/// Real trig poly of the given degree, random cos/sin amplitudes in
/// [-amplitude, amplitude], zero mean.
TrigPoly random_real_trig_poly(std::mt19937_64& rng, int degree, double amplitude);

/// Largest |value| over a sample grid.
double sup_norm(const TrigPoly& p, int grid = 1024);

}  // namespace rotnum::holo
