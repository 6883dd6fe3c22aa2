#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "rotnum/approx.hpp"
#include "rotnum/circle.hpp"
#include "rotnum/holo.hpp"
#include "rotnum/orbit.hpp"
#include "rotnum/skewfibre.hpp"

// Structured-text records for the experiment runner. Readers throw
// ValidationError on malformed input.
//
//   lift    {"kind": "rigid", "beta": b}
//           {"kind": "sine_family", "beta": b, "epsilon": e, "k": k}
//           {"kind": "piecewise_linear", "nodes": [[x, y], ...]}
//           {"kind": "chain", "parts": [lift, ...]}
//   system  {"n": n, "lifts": [lift, ...]}
//   map     {"alpha": a, "coeffs": [coeff, ...]}
//   coeff   {"degree": d, "harmonics": [{"k", "re", "im"}, ...],
//            "log_harmonics": [...], "den_harmonics": [...],
//            "phase_turns": {"beta": b, "terms": [{"k", "cos", "sin"}, ...]}}
//
// A coefficient is num / den * exp(log). Omitted "harmonics" means num = 1,
// omitted "den_harmonics" means den = 1. "phase_turns" is shorthand that adds
// 2 pi i (beta + sum cos/sin terms) to log.

namespace rotnum::io {

using nlohmann::json;

circle::CircleMapLift lift_from_json(const json& j);
json to_json(const circle::CircleMapLift& lift);

skewfibre::FiniteFibreSystem system_from_json(const json& j);
json to_json(const skewfibre::FiniteFibreSystem& sys);

holo::TrigPoly trig_poly_from_json(const json& j);
json to_json(const holo::TrigPoly& p);

holo::FibredPolyMap map_from_json(const json& j);
json to_json(const holo::FibredPolyMap& f);

json to_json(const RotationEstimate& est);
json to_json(const approx::ConvergenceTable& table);

/// Header q,rho_ff,circ_dist; values printed with 17 significant digits.
void write_csv(std::ostream& os, const approx::ConvergenceTable& table);
void write_csv(std::ostream& os, const std::vector<orbit::TraceRow>& trace);

/// Shortest text that reads back to the same double.
std::string format_double(double x);

}  // namespace rotnum::io
