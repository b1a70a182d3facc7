#pragma once

#include "orbitlab/elliptic.hpp"
#include "orbitlab/hecke.hpp"
#include "orbitlab/mixed.hpp"

#include <json.hpp>

#include <string>

namespace orbitlab {

using json = nlohmann::json;

json to_json(const RationalMatrix& m);          // array of arrays of "p/q" strings
RationalMatrix matrix_from_json(const json& j);

json to_json(const SiegelPoint& z); // {g, X: [[...]], Y: [[...]]}
SiegelPoint siegel_from_json(const json& j, const Tolerances& tol = {});

json to_json(const MixedPoint& p); // {v: [...], Z: {...}, rational, v_exact?}
MixedPoint mixed_from_json(const json& j, const Tolerances& tol = {});

json to_json(const GroupElement& gel); // {w: [...], M: [[...]]}

// JSON-lines record for an orbit point.
json orbit_point_record(const OrbitPoint& t, const Int& witness_height);

json to_json(const CurveQ& e);  // {a2, a4, a6, form}
json to_json(const PointQ& p);  // {x, y} or "O"
CurveQ curve_from_json(const json& j);
PointQ point_from_json(const json& j);

} // namespace orbitlab
