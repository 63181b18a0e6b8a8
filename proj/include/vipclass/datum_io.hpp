#pragma once

// Datum files: JSON text describing (G, K_1..K_n, V_1..V_n).
//
//   {
//     "group": [2, 2, 2],
//     "coords": "ambient",            // or "quotient"
//     "kernels": [[], [], []],        // generator tuples per curve
//     "vectors": [
//       {"type": "[0; 2,2,2,2,2,2]", "elements": [[1,0,0], ...]},
//       ...
//     ]
//   }
//
// "n" is optional and must match the number of vectors when present. With
// "coords": "ambient" elements are tuples in G and are projected to G/K_i;
// with "quotient" they are tuples in the invariant-factor form of G/K_i.
// An optional "hyperbolic" list per vector holds d_1, e_1, ... for g' > 0.

#include <string>

#include <json.hpp>

#include "vipclass/covering_data.hpp"

namespace vipclass {

/// Parses and builds the datum without running validity checks. Malformed
/// input raises ValidationError naming the offending field.
AlgebraicDatum parse_datum(const nlohmann::json& j);
AlgebraicDatum parse_datum_text(const std::string& text);
AlgebraicDatum read_datum_file(const std::string& path);

/// Canonical serialization: quotient coordinates, kernels by their
/// generators. parse_datum(serialize_datum(D)) serializes identically.
nlohmann::json serialize_datum(const AlgebraicDatum& D);

}  // namespace vipclass
