#pragma once

#include <cstdint>
#include <vector>

#include "rotnum/circle.hpp"

namespace rotnum::skewfibre {

using circle::CircleMapLift;

/// Finite fibres circle homeomorphism on Z_n x R: (i, x) -> (i+1, g_i(x)).
struct FiniteFibreSystem {
    std::vector<CircleMapLift> lifts;

    int n() const { return static_cast<int>(lifts.size()); }
    const CircleMapLift& lift(int i) const { return lifts[static_cast<std::size_t>(i)]; }
};

/// Throws ValidationError if the system is empty or any lift is invalid.
void require_valid(const FiniteFibreSystem& sys);

/// Psi^(m)(i, x): real advance after m steps of the lifted dynamics.
double step_psi(const FiniteFibreSystem& sys, int i, double x, long long m);

/// g_{i-1} o ... o g_{i+1} o g_i: first return to fibre i.
CircleMapLift composite_lift(const FiniteFibreSystem& sys, int start_fibre = 0);

/// Finite fibres rotation number through the first-return lift at
/// start_fibre: its rotation bracket over `cycles` iterations divided by n.
/// The raw lift value is returned; reduce mod 1 if needed.
RotationEstimate rho_ff(const FiniteFibreSystem& sys, long long cycles, int start_fibre = 0,
                        double x = 0.0);

/// Same limit as Psi^(m)(i, x) / m with m rounded down to a multiple of n
/// (at least n). Independent cross-check of rho_ff.
RotationEstimate rho_ff_psi(const FiniteFibreSystem& sys, long long m, int i = 0, double x = 0.0);

struct StepLemmaReport {
    long long samples = 0;
    long long periodicity_violations = 0;
    long long spread_violations = 0;
    double worst_periodicity_residual = 0.0;
    /// max |Psi(i,x) - Psi(i,x')| observed; the bound is 1.
    double worst_spread = 0.0;
    double periodicity_tolerance = 0.0;
    double spread_tolerance = 0.0;

    bool passed() const { return periodicity_violations == 0 && spread_violations == 0; }
};

/// Random tests of Psi^(m)(i, x+k) = Psi^(m)(i, x) and
/// |Psi^(m)(i, x) - Psi^(m)(i, x')| <= 1 over (i, x, x', k, m).
StepLemmaReport check_step_lemma(const FiniteFibreSystem& sys, long long samples,
                                 std::uint64_t seed = 1, long long max_m = 200,
                                 double periodicity_tolerance = 1e-10,
                                 double spread_tolerance = 1e-9);

/// System of G^m: the m n-step orbit of fibre 0 cut into n blocks of m
/// steps. Block j maps to block j+1 and the blocks close up after n, so
/// rho_ff of the result is m rho_ff(G) whatever gcd(m, n) is.
FiniteFibreSystem power_system(const FiniteFibreSystem& sys, int m);

struct PowerCheckReport {
    RotationEstimate power;   ///< rho_ff(G^m)
    RotationEstimate scaled;  ///< m * rho_ff(G)
    double difference = 0.0;
    double tolerance = 0.0;   ///< sum of half-widths
    bool passed = false;
};

PowerCheckReport power_rho_check(const FiniteFibreSystem& sys, int m, long long cycles);

/// Conjugate by H(i, x) = (i, h_i(x)): lift i becomes h_{i+1}^{-1} o g_i o h_i.
/// Each h_i must be a valid piecewise-linear lift with h_i(0) in [0, 1).
FiniteFibreSystem conjugate_system(const FiniteFibreSystem& sys,
                                   const std::vector<CircleMapLift>& h);

}  // namespace rotnum::skewfibre
