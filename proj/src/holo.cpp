#include "rotnum/holo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rotnum::holo {

namespace {

constexpr complex i_unit{0.0, 1.0};
constexpr double vanishing_modulus = 1e-12;

}  // namespace

TrigPoly::TrigPoly(std::map<int, complex> harmonics) : harmonics_(std::move(harmonics)) {
    prune();
}

TrigPoly TrigPoly::cos_sin(int k, complex a, complex b) {
    if (k == 0) return constant(a);
    return TrigPoly({{k, 0.5 * a - 0.5 * i_unit * b}, {-k, 0.5 * a + 0.5 * i_unit * b}});
}

complex TrigPoly::coefficient(int k) const {
    auto it = harmonics_.find(k);
    return it == harmonics_.end() ? complex{} : it->second;
}

int TrigPoly::degree() const {
    int d = 0;
    for (const auto& [k, c] : harmonics_) d = std::max(d, std::abs(k));
    return d;
}

complex TrigPoly::operator()(double theta) const {
    complex s{};
    for (const auto& [k, c] : harmonics_) s += c * std::polar(1.0, two_pi * k * theta);
    return s;
}

TrigPoly TrigPoly::translated(double shift) const {
    TrigPoly out = *this;
    for (auto& [k, c] : out.harmonics_) c *= std::polar(1.0, two_pi * k * shift);
    return out;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
    for (const auto& [k, c] : o.harmonics_) harmonics_[k] += c;
    prune();
    return *this;
}

TrigPoly& TrigPoly::operator*=(complex s) {
    for (auto& [k, c] : harmonics_) c *= s;
    prune();
    return *this;
}

TrigPoly operator-(TrigPoly a, const TrigPoly& b) {
    for (const auto& [k, c] : b.harmonics_) a.harmonics_[k] -= c;
    a.prune();
    return a;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
    std::map<int, complex> out;
    for (const auto& [ka, ca] : a.harmonics_) {
        for (const auto& [kb, cb] : b.harmonics_) out[ka + kb] += ca * cb;
    }
    return TrigPoly(std::move(out));
}

void TrigPoly::prune() {
    std::erase_if(harmonics_, [](const auto& kv) { return kv.second == complex{}; });
}

complex CoeffFn::operator()(double theta) const {
    complex v = num(theta);
    if (!log.is_zero()) v *= std::exp(log(theta));
    return v / den(theta);
}

CoeffFn CoeffFn::translated(double shift) const {
    return {num.translated(shift), den.translated(shift), log.translated(shift)};
}

CoeffFn CoeffFn::scaled(complex s) const {
    return {num * s, den, log};
}

CoeffFn operator*(const CoeffFn& a, const CoeffFn& b) {
    return {a.num * b.num, a.den * b.den, a.log + b.log};
}

CoeffFn operator/(const CoeffFn& a, const CoeffFn& b) {
    return {a.num * b.den, a.den * b.num, a.log - b.log};
}

CoeffFn phase_exponential(double beta, const TrigPoly& phase) {
    TrigPoly q = TrigPoly::constant(beta) + phase;
    q *= two_pi * i_unit;
    return CoeffFn::exp_of(std::move(q));
}

const CoeffFn& FibredPolyMap::rho1() const {
    if (coeffs.empty()) throw ValidationError("fibred map has no linear coefficient");
    return coeffs.front();
}

complex eval_fibre(const FibredPolyMap& f, double theta, complex z) {
    // Horner in z; the constant term is zero.
    complex acc{};
    for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) {
        acc = (acc + (*it)(theta)) * z;
    }
    return acc;
}

std::vector<double> unwrap_phase(const CoeffFn& fn, int grid, double start) {
    if (grid < 2) throw ValidationError("unwrap_phase: grid must be >= 2");
    std::vector<double> phase(static_cast<std::size_t>(grid) + 1);
    for (int j = 0; j <= grid; ++j) {
        const double theta = start + static_cast<double>(j) / grid;
        const complex v = fn(theta);
        if (!(std::abs(v) > vanishing_modulus)) {
            std::ostringstream os;
            os << "coefficient vanishes at theta = " << theta;
            throw NumericalError(os.str());
        }
        double a = std::arg(v);
        if (j > 0) {
            const double prev = phase[static_cast<std::size_t>(j) - 1];
            a += two_pi * std::round((prev - a) / two_pi);
            if (std::abs(a - prev) > max_unwrap_step) {
                std::ostringstream os;
                os << "phase unwrap ambiguous near theta = " << theta << " (step "
                   << std::abs(a - prev) << " rad); refine the grid";
                throw NumericalError(os.str());
            }
        }
        phase[static_cast<std::size_t>(j)] = a;
    }
    return phase;
}

int winding_degree(const CoeffFn& fn, int grid) {
    const auto phase = unwrap_phase(fn, grid);
    return static_cast<int>(std::lround((phase.back() - phase.front()) / two_pi));
}

int winding_degree(const FibredPolyMap& f, int grid) {
    return winding_degree(f.rho1(), grid);
}

double periodic_simpson(std::span<const double> samples) {
    const std::size_t panels = samples.size() - 1;
    if (samples.size() < 3 || panels % 2 != 0) {
        throw ValidationError("Simpson quadrature needs an even, positive panel count");
    }
    std::vector<double> weighted(samples.size());
    for (std::size_t j = 0; j <= panels; ++j) {
        const double w = (j == 0 || j == panels) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
        weighted[j] = w * samples[j];
    }
    return pairwise_sum(weighted) / (3.0 * static_cast<double>(panels));
}

double indifference_defect(const FibredPolyMap& f, int grid) {
    if (grid < 2 || grid % 2 != 0) throw ValidationError("indifference_defect: grid must be even");
    const auto& rho1 = f.rho1();
    std::vector<double> logs(static_cast<std::size_t>(grid) + 1);
    for (int j = 0; j <= grid; ++j) {
        const double m = std::abs(rho1(static_cast<double>(j) / grid));
        if (!(m > vanishing_modulus)) throw NumericalError("rho_1 vanishes on the grid");
        logs[static_cast<std::size_t>(j)] = std::log(m);
    }
    return periodic_simpson(logs);
}

double rho_T_lift(const FibredPolyMap& f, int grid) {
    if (grid < 2 || grid % 2 != 0) throw ValidationError("rho_T: grid must be even");
    auto phase = unwrap_phase(f.rho1(), grid);
    const long turns = std::lround((phase.back() - phase.front()) / two_pi);
    if (turns != 0) {
        throw ValidationError("rho_1 has winding degree " + std::to_string(turns) +
                              "; no continuous logarithm exists");
    }
    for (auto& p : phase) p /= two_pi;
    return periodic_simpson(phase);
}

double rho_T(const FibredPolyMap& f, int grid) {
    return mod1(rho_T_lift(f, grid));
}

FibredPolyMap conjugate_linear_part(const FibredPolyMap& f, const CoeffFn& c, int grid) {
    if (c.is_zero()) throw ValidationError("conjugacy coefficient is identically zero");
    int degree = 0;
    try {
        degree = winding_degree(c, grid);
    } catch (const NumericalError& e) {
        throw ValidationError(std::string("conjugacy coefficient: ") + e.what());
    }
    if (degree != 0) {
        throw ValidationError("conjugacy coefficient has winding degree " + std::to_string(degree));
    }
    const CoeffFn c_next = c.translated(f.alpha);
    FibredPolyMap out{f.alpha, {}};
    out.coeffs.reserve(f.coeffs.size());
    CoeffFn c_power = c;
    for (const auto& rho_k : f.coeffs) {
        out.coeffs.push_back(rho_k * c_power / c_next);
        c_power = c_power * c;
    }
    return out;
}

TrigPoly random_real_trig_poly(std::mt19937_64& rng, int degree, double amplitude) {
    std::uniform_real_distribution<double> coef(-amplitude, amplitude);
    TrigPoly p;
    for (int k = 1; k <= degree; ++k) {
        const double a = coef(rng);
        const double b = coef(rng);
        p += TrigPoly::cos_sin(k, a, b);
    }
    return p;
}

double sup_norm(const TrigPoly& p, int grid) {
    double s = 0.0;
    for (int j = 0; j < grid; ++j) s = std::max(s, std::abs(p(static_cast<double>(j) / grid)));
    return s;
}

}  // namespace rotnum::holo
