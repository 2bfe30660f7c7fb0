#include "npweyl/geometry_io.hpp"

#include "npweyl/error.hpp"

namespace npweyl {

namespace {
nlohmann::json vec_json(const Vec3& v) { return nlohmann::json::array({v.x(), v.y(), v.z()}); }
Vec3 json_vec(const nlohmann::json& j) { return Vec3(j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()); }
}  // namespace

nlohmann::json quadrature_to_json(const SurfaceQuadrature& quad) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& node : quad.nodes) {
    nodes.push_back({{"x", vec_json(node.x)},
                     {"n", vec_json(node.n)},
                     {"w", node.w},
                     {"E", node.forms.E},
                     {"F", node.forms.F},
                     {"G", node.forms.G},
                     {"L", node.forms.L},
                     {"M", node.forms.M},
                     {"N", node.forms.N},
                     {"H", node.H},
                     {"K", node.K}});
  }
  return {{"label", quad.label}, {"chi", quad.euler_characteristic}, {"nodes", std::move(nodes)}};
}

SurfaceQuadrature quadrature_from_json(const nlohmann::json& doc) {
  try {
    SurfaceQuadrature quad;
    quad.label = doc.at("label").get<std::string>();
    quad.euler_characteristic = doc.at("chi").get<int>();
    for (const auto& j : doc.at("nodes")) {
      SurfaceNode node;
      node.x = json_vec(j.at("x"));
      node.n = json_vec(j.at("n"));
      node.w = j.at("w").get<double>();
      node.forms = {j.at("E").get<double>(), j.at("F").get<double>(), j.at("G").get<double>(),
                    j.at("L").get<double>(), j.at("M").get<double>(), j.at("N").get<double>()};
      node.H = j.at("H").get<double>();
      node.K = j.at("K").get<double>();
      quad.nodes.push_back(node);
    }
    return quad;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed quadrature JSON: ") + e.what());
  }
}

}  // namespace npweyl
