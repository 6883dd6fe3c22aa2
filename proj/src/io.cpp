#include "rotnum/io.hpp"

#include <charconv>
#include <map>

namespace rotnum::io {

namespace {

template <class T>
T field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw ValidationError(std::string("missing field \"") + key + "\"");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("field \"") + key + "\": " + e.what());
    }
}

holo::TrigPoly harmonics_from_json(const json& arr) {
    if (!arr.is_array()) throw ValidationError("harmonics must be an array");
    std::map<int, holo::complex> h;
    for (const auto& e : arr) {
        h[field<int>(e, "k")] += holo::complex{field<double>(e, "re"), field<double>(e, "im")};
    }
    return holo::TrigPoly(std::move(h));
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

circle::CircleMapLift lift_from_json(const json& j) {
    const auto kind = field<std::string>(j, "kind");
    if (kind == "rigid") return circle::CircleMapLift::rigid(field<double>(j, "beta"));
    if (kind == "sine_family") {
        return circle::CircleMapLift::sine_family(field<double>(j, "beta"), field<double>(j, "epsilon"),
                                                  field<int>(j, "k"));
    }
    if (kind == "piecewise_linear") {
        const auto& nodes = j.at("nodes");
        if (!nodes.is_array()) throw ValidationError("nodes must be an array of [x, y] pairs");
        std::vector<std::pair<double, double>> out;
        for (const auto& n : nodes) {
            if (!n.is_array() || n.size() != 2) throw ValidationError("node must be [x, y]");
            out.emplace_back(n[0].get<double>(), n[1].get<double>());
        }
        return circle::CircleMapLift::piecewise_linear(std::move(out));
    }
    if (kind == "chain") {
        circle::Chain c;
        for (const auto& p : j.at("parts")) c.parts.push_back(lift_from_json(p));
        return c;
    }
    throw ValidationError("unknown lift kind \"" + kind + "\"");
}

json to_json(const circle::CircleMapLift& lift) {
    return std::visit(
        [](const auto& k) -> json {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, circle::Rigid>) {
                return {{"kind", "rigid"}, {"beta", k.beta}};
            } else if constexpr (std::is_same_v<K, circle::SineFamily>) {
                return {{"kind", "sine_family"}, {"beta", k.beta}, {"epsilon", k.epsilon}, {"k", k.k}};
            } else if constexpr (std::is_same_v<K, circle::PiecewiseLinear>) {
                json nodes = json::array();
                for (const auto& [x, y] : k.nodes) nodes.push_back({x, y});
                return {{"kind", "piecewise_linear"}, {"nodes", nodes}};
            } else {
                json parts = json::array();
                for (const auto& p : k.parts) parts.push_back(to_json(p));
                return {{"kind", "chain"}, {"parts", parts}};
            }
        },
        lift.kind());
}

skewfibre::FiniteFibreSystem system_from_json(const json& j) {
    skewfibre::FiniteFibreSystem sys;
    const auto& lifts = j.at("lifts");
    if (!lifts.is_array()) throw ValidationError("lifts must be an array");
    for (const auto& l : lifts) sys.lifts.push_back(lift_from_json(l));
    if (j.contains("n") && field<int>(j, "n") != sys.n()) {
        throw ValidationError("n does not match the number of lifts");
    }
    return sys;
}

json to_json(const skewfibre::FiniteFibreSystem& sys) {
    json lifts = json::array();
    for (const auto& l : sys.lifts) lifts.push_back(to_json(l));
    return {{"n", sys.n()}, {"lifts", lifts}};
}

holo::TrigPoly trig_poly_from_json(const json& j) { return harmonics_from_json(j); }

json to_json(const holo::TrigPoly& p) {
    json arr = json::array();
    for (const auto& [k, c] : p.harmonics()) arr.push_back({{"k", k}, {"re", c.real()}, {"im", c.imag()}});
    return arr;
}

holo::FibredPolyMap map_from_json(const json& j) {
    holo::FibredPolyMap f;
    f.alpha = field<double>(j, "alpha");
    const auto& coeffs = j.at("coeffs");
    if (!coeffs.is_array() || coeffs.empty()) throw ValidationError("coeffs must be a nonempty array");
    std::map<int, holo::CoeffFn> by_degree;
    for (const auto& c : coeffs) {
        const int d = field<int>(c, "degree");
        if (d < 1) throw ValidationError("coefficient degree must be >= 1");
        if (by_degree.contains(d)) throw ValidationError("duplicate coefficient degree");
        holo::CoeffFn fn;
        if (c.contains("harmonics")) fn.num = harmonics_from_json(c.at("harmonics"));
        if (c.contains("den_harmonics")) fn.den = harmonics_from_json(c.at("den_harmonics"));
        if (c.contains("log_harmonics")) fn.log = harmonics_from_json(c.at("log_harmonics"));
        if (c.contains("phase_turns")) {
            const auto& pt = c.at("phase_turns");
            holo::TrigPoly phase;
            if (pt.contains("terms")) {
                for (const auto& t : pt.at("terms")) {
                    phase += holo::TrigPoly::cos_sin(field<int>(t, "k"), t.value("cos", 0.0),
                                                     t.value("sin", 0.0));
                }
            }
            auto e = holo::phase_exponential(pt.value("beta", 0.0), phase);
            fn.log += e.log;
        }
        if (fn.den.is_zero()) throw ValidationError("den_harmonics must not be identically zero");
        by_degree.emplace(d, std::move(fn));
    }
    const int top = by_degree.rbegin()->first;
    for (int d = 1; d <= top; ++d) {
        auto it = by_degree.find(d);
        f.coeffs.push_back(it == by_degree.end() ? holo::CoeffFn{holo::TrigPoly{}, holo::TrigPoly::constant(1.0), {}}
                                                 : it->second);
    }
    return f;
}

json to_json(const holo::FibredPolyMap& f) {
    json coeffs = json::array();
    for (int d = 1; d <= f.degree(); ++d) {
        const auto& fn = f.coeffs[static_cast<std::size_t>(d) - 1];
        if (fn.is_zero()) continue;
        json c = {{"degree", d}, {"harmonics", to_json(fn.num)}};
        if (!fn.log.is_zero()) c["log_harmonics"] = to_json(fn.log);
        if (fn.den.harmonics() != holo::TrigPoly::constant(1.0).harmonics()) c["den_harmonics"] = to_json(fn.den);
        coeffs.push_back(std::move(c));
    }
    return {{"alpha", f.alpha}, {"coeffs", coeffs}};
}

json to_json(const RotationEstimate& est) {
    return {{"value", est.value}, {"lower", est.lower}, {"upper", est.upper}, {"iterations", est.iterations}};
}

json to_json(const approx::ConvergenceTable& table) {
    json rows = json::array();
    for (const auto& r : table.rows) {
        rows.push_back({{"p", r.p}, {"q", r.q}, {"rho_ff", r.rho_ff}, {"circ_dist", r.circ_dist}});
    }
    return {{"rho_T", table.rho_T}, {"anchor", table.anchor}, {"rows", rows}};
}

void write_csv(std::ostream& os, const approx::ConvergenceTable& table) {
    os << "q,rho_ff,circ_dist\n";
    for (const auto& r : table.rows) {
        os << r.q << ',' << format_double(r.rho_ff) << ',' << format_double(r.circ_dist) << '\n';
    }
}

void write_csv(std::ostream& os, const std::vector<orbit::TraceRow>& trace) {
    os << "k,theta,re_z,im_z,cumulative_advance\n";
    for (const auto& r : trace) {
        os << r.k << ',' << format_double(r.theta) << ',' << format_double(r.z.real()) << ','
           << format_double(r.z.imag()) << ',' << format_double(r.cumulative_turns) << '\n';
    }
}

}  // namespace rotnum::io
