#pragma once

#include "npweyl/quadrature.hpp"

#include <json.hpp>

namespace npweyl {

/// {label, chi, nodes: [{x: [3], n: [3], w, E, F, G, L, M, N, H, K}]}
nlohmann::json quadrature_to_json(const SurfaceQuadrature& quad);
SurfaceQuadrature quadrature_from_json(const nlohmann::json& doc);

}  // namespace npweyl
