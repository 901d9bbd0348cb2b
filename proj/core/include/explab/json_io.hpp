#pragma once

#include <json.hpp>

#include "explab/cyclotomic.hpp"
#include "explab/dmodule.hpp"
#include "explab/finite_model.hpp"

namespace explab {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "explab/1";

/// {"prime": p, "coeffs": ["a/b", ...]}
json to_json(const Cyclo& c);
Cyclo cyclo_from_json(const json& j);

/// {"base": n, "prime": p, "values": [[cyclo x p] x n]}
json to_json(const ExpObject& h);
ExpObject exp_object_from_json(const json& j);

/// {"n": n, "generators": ["d - 1", ...]} (reduced basis on output).
json to_json(const CyclicModule& m);
CyclicModule module_from_json(const json& j);

/// List of operator strings.
json to_json(const GroebnerBasis& g);

/// {"ker": k, "coker": c, "degrees": [a, b], "certificate": "..."} plus
/// witness lists.
json to_json(const TwoTermComplex& c);

}  // namespace explab
