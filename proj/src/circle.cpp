#include "rotnum/circle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rotnum::circle {

namespace {

constexpr double node_tolerance = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

double eval_pl(const PiecewiseLinear& pl, double x) {
    const auto& nodes = pl.nodes;
    const double x0 = nodes.front().first;
    const double y0 = nodes.front().second;
    const double t = x - x0;
    const double whole = std::floor(t);
    const double u = x0 + (t - whole);
    // First node with abscissa > u; the segment ends there.
    auto it = std::upper_bound(nodes.begin(), nodes.end(), u,
                               [](double v, const auto& node) { return v < node.first; });
    if (it == nodes.begin()) return y0 + whole;
    // The last node stands for (x0 + 1, y0 + 1) whatever its rounding.
    if (it == nodes.end()) return y0 + 1.0 + whole;
    const auto& [xa, ya] = *(it - 1);
    const bool last = (it + 1 == nodes.end());
    const double xb = last ? x0 + 1.0 : it->first;
    const double yb = last ? y0 + 1.0 : it->second;
    return ya + (yb - ya) * (u - xa) / (xb - xa) + whole;
}

void append_parts(std::vector<CircleMapLift>& out, const CircleMapLift& f) {
    if (const auto* c = std::get_if<Chain>(&f.kind())) {
        out.insert(out.end(), c->parts.begin(), c->parts.end());
    } else {
        out.push_back(f);
    }
}

}  // namespace

double CircleMapLift::operator()(double x) const {
    return std::visit(
        overloaded{
            [x](const Rigid& r) { return x + r.beta; },
            [x](const SineFamily& s) {
                return x + s.beta + s.epsilon / two_pi * std::sin(two_pi * s.k * x);
            },
            [x](const PiecewiseLinear& p) { return eval_pl(p, x); },
            [x](const Chain& c) {
                double y = x;
                for (const auto& part : c.parts) y = part(y);
                return y;
            },
        },
        kind_);
}

CircleMapLift compose(const CircleMapLift& f, const CircleMapLift& g) {
    Chain c;
    append_parts(c.parts, f);
    append_parts(c.parts, g);
    return c;
}

CircleMapLift shifted(const CircleMapLift& f, long long p) {
    if (const auto* r = std::get_if<Rigid>(&f.kind())) {
        return Rigid{r->beta + static_cast<double>(p)};
    }
    return compose(f, Rigid{static_cast<double>(p)});
}

CircleMapLift inverse_pl(const CircleMapLift& h) {
    const auto* pl = std::get_if<PiecewiseLinear>(&h.kind());
    if (pl == nullptr) throw ValidationError("inverse_pl: lift is not piecewise linear");
    if (auto why = structural_problem(h); !why.empty()) {
        throw ValidationError("inverse_pl: " + why);
    }
    PiecewiseLinear inv;
    inv.nodes.reserve(pl->nodes.size());
    for (const auto& [x, y] : pl->nodes) inv.nodes.emplace_back(y, x);
    const auto [x0, y0] = pl->nodes.front();
    inv.nodes.back() = {y0 + 1.0, x0 + 1.0};
    return inv;
}

std::string structural_problem(const CircleMapLift& lift) {
    return std::visit(
        overloaded{
            [](const Rigid& r) -> std::string {
                return std::isfinite(r.beta) ? "" : "rigid: beta is not finite";
            },
            [](const SineFamily& s) -> std::string {
                if (!std::isfinite(s.beta) || !std::isfinite(s.epsilon)) {
                    return "sine_family: non-finite parameter";
                }
                if (s.k < 1) return "sine_family: k must be a positive integer";
                if (std::abs(s.epsilon * s.k) >= 1.0) {
                    std::ostringstream os;
                    os << "sine_family: |epsilon*k| = " << std::abs(s.epsilon * s.k)
                       << " >= 1, lift is not increasing";
                    return os.str();
                }
                return "";
            },
            [](const PiecewiseLinear& p) -> std::string {
                const auto& n = p.nodes;
                if (n.size() < 2) return "piecewise_linear: need at least two nodes";
                for (const auto& [x, y] : n) {
                    if (!std::isfinite(x) || !std::isfinite(y)) {
                        return "piecewise_linear: non-finite node";
                    }
                }
                for (std::size_t j = 1; j < n.size(); ++j) {
                    if (!(n[j].first > n[j - 1].first)) {
                        return "piecewise_linear: node abscissae not strictly increasing";
                    }
                    if (!(n[j].second > n[j - 1].second)) {
                        return "piecewise_linear: node values not strictly increasing";
                    }
                }
                if (std::abs(n.back().first - n.front().first - 1.0) > node_tolerance) {
                    return "piecewise_linear: nodes must span exactly one period";
                }
                if (std::abs(n.back().second - n.front().second - 1.0) > node_tolerance) {
                    return "piecewise_linear: F(x0 + 1) must equal F(x0) + 1";
                }
                return "";
            },
            [](const Chain& c) -> std::string {
                for (const auto& part : c.parts) {
                    if (auto why = structural_problem(part); !why.empty()) {
                        return "chain: " + why;
                    }
                }
                return "";
            },
        },
        lift.kind());
}

ValidationReport validate_lift(const CircleMapLift& lift, int grid_size) {
    if (grid_size < 2) throw ValidationError("validate_lift: grid_size must be >= 2");
    ValidationReport report;
    report.message = structural_problem(lift);
    if (!report.message.empty()) {
        report.structural_ok = false;
        report.periodic_ok = false;
        report.monotone_ok = false;
        return report;
    }
    constexpr double periodic_tolerance = 1e-9;
    double prev = lift(0.0);
    report.min_increment = INFINITY;
    for (int j = 0; j <= grid_size; ++j) {
        const double x = static_cast<double>(j) / grid_size;
        const double fx = lift(x);
        const double residual = std::abs(lift(x + 1.0) - fx - 1.0);
        report.worst_periodicity_residual = std::max(report.worst_periodicity_residual, residual);
        if (j > 0) report.min_increment = std::min(report.min_increment, fx - prev);
        prev = fx;
    }
    report.periodic_ok = report.worst_periodicity_residual <= periodic_tolerance;
    report.monotone_ok = report.min_increment > 0.0;
    if (!report.periodic_ok) {
        report.message = "F(x+1) != F(x)+1 on the sample grid";
    } else if (!report.monotone_ok) {
        report.message = "lift is not increasing on the sample grid";
    }
    return report;
}

void require_valid(const CircleMapLift& lift, int grid_size) {
    auto report = validate_lift(lift, grid_size);
    if (!report.passed()) throw ValidationError("invalid lift: " + report.message);
}

double iterate_lift(const CircleMapLift& lift, double x, long long m) {
    double whole = std::floor(x);
    double frac = x - whole;
    for (long long j = 0; j < m; ++j) {
        const double y = lift(frac);
        const double fl = std::floor(y);
        whole += fl;
        frac = y - fl;
    }
    return whole + frac;
}

RotationEstimate rho_bracket_unchecked(const CircleMapLift& lift, double x, long long m) {
    if (m < 1) throw ValidationError("rho_bracket: m must be >= 1");
    const double whole0 = std::floor(x);
    double whole = 0.0;
    double frac = x - whole0;
    const double frac0 = frac;
    for (long long j = 0; j < m; ++j) {
        const double y = lift(frac);
        const double fl = std::floor(y);
        whole += fl;
        frac = y - fl;
    }
    const double md = static_cast<double>(m);
    RotationEstimate est;
    est.value = (whole + (frac - frac0)) / md;
    const double half = (1.0 + bracket_fudge * md) / md;
    est.lower = est.value - half;
    est.upper = est.value + half;
    est.iterations = m;
    return est;
}

RotationEstimate rho_bracket(const CircleMapLift& lift, double x, long long m) {
    require_valid(lift);
    return rho_bracket_unchecked(lift, x, m);
}

CircleMapLift random_pl_homeo(std::mt19937_64& rng, int interior_nodes) {
    if (interior_nodes < 0) throw ValidationError("random_pl_homeo: negative node count");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    // Strictly positive increments so both coordinates increase strictly.
    auto increments = [&](int count) {
        std::vector<double> w(count);
        double total = 0.0;
        for (auto& v : w) {
            v = 0.05 + unit(rng);
            total += v;
        }
        for (auto& v : w) v /= total;
        return w;
    };
    const int segments = interior_nodes + 1;
    const auto dx = increments(segments);
    const auto dy = increments(segments);
    const double y0 = unit(rng);
    PiecewiseLinear pl;
    double x = 0.0;
    double y = y0;
    pl.nodes.emplace_back(x, y);
    for (int j = 0; j + 1 < segments; ++j) {
        x += dx[j];
        y += dy[j];
        pl.nodes.emplace_back(x, y);
    }
    pl.nodes.emplace_back(1.0, y0 + 1.0);
    return pl;
}

}  // namespace rotnum::circle
