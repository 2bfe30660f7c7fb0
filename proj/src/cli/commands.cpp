#include "npweyl/cli.hpp"

#include "npweyl/error.hpp"
#include "npweyl/geometry_io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

namespace npweyl::cli {

namespace {

// Files are written under a temporary name and renamed only by commit(), so a
// failing command leaves no partial outputs behind.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}
  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;
  ~OutputSet() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& [tmp, final] : files_) std::filesystem::remove(tmp, ec);
  }

  std::ofstream open(const std::string& name) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    const auto final = dir_ / name;
    auto tmp = final;
    tmp += ".partial";
    std::ofstream out(tmp);
    if (!out) throw ConfigError("cannot write " + final.string());
    files_.emplace_back(tmp, final);
    return out;
  }

  /// Registers a file that the caller writes itself under `tmp_name`.
  std::filesystem::path stage(const std::string& tmp_name, const std::string& final_name) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    files_.emplace_back(dir_ / tmp_name, dir_ / final_name);
    return dir_ / tmp_name;
  }

  void write_json(const std::string& name, const nlohmann::json& doc) { open(name) << doc.dump(2) << '\n'; }

  void commit() {
    for (const auto& [tmp, final] : files_) std::filesystem::rename(tmp, final);
    committed_ = true;
  }

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::filesystem::path, std::filesystem::path>> files_;
  bool committed_ = false;
};

SurfaceChart make_chart(const RunConfig& config) {
  if (config.shape == "sphere") return sphere(config.rho);
  if (config.shape == "ellipsoid") return ellipsoid(config.a, config.b, config.c);
  if (config.shape == "torus") return torus(config.R, config.r);
  if (config.shape == "clifford") return clifford_torus();
  throw ConfigError("unknown shape '" + config.shape + "'");
}

bool is_mesh(const RunConfig& config) { return config.shape == "mesh" || config.shape.rfind("mesh:", 0) == 0; }

std::string mesh_path(const RunConfig& config) {
  if (config.shape.rfind("mesh:", 0) == 0) return config.shape.substr(5);
  return config.mesh_path;
}

std::pair<int, int> resolution(const RunConfig& config, int default_ns, int default_nt) {
  return {config.n_s > 0 ? config.n_s : default_ns, config.n_t > 0 ? config.n_t : default_nt};
}

bool is_torus_like(const RunConfig& config) { return config.shape == "torus" || config.shape == "clifford"; }

}  // namespace

std::pair<int, int> parse_resolution(const std::string& text) {
  const auto x = text.find_first_of("xX");
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t used_s = 0, used_t = 0;
    const int ns = std::stoi(text.substr(0, x), &used_s);
    const int nt = std::stoi(text.substr(x + 1), &used_t);
    if (used_s != x || used_t != text.size() - x - 1) throw std::invalid_argument(text);
    return {ns, nt};
  } catch (const std::exception&) {
    throw ConfigError("--res expects NxM, got '" + text + "'");
  }
}

FitWindow parse_window(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument(text);
    FitWindow w{std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
    if (w.j_min < 1 || w.j_max < w.j_min) throw ConfigError("--window needs 1 <= J <= K, got '" + text + "'");
    return w;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("--window expects J:K, got '" + text + "'");
  }
}

void validate(const RunConfig& config) {
  if ((config.n_s != 0 && config.n_s < 4) || (config.n_t != 0 && config.n_t < 4)) {
    throw ConfigError("resolution must be at least 4x4");
  }
  if (is_mesh(config)) {
    if (mesh_path(config).empty()) throw ConfigError("mesh shape needs --mesh PATH or --shape mesh:PATH");
    return;
  }
  if (config.shape == "sphere") {
    if (!(config.rho > 0.0)) throw ConfigError("--rho must be positive");
  } else if (config.shape == "ellipsoid") {
    if (!(config.a > 0.0 && config.b > 0.0 && config.c > 0.0)) throw ConfigError("--a, --b, --c must be positive");
  } else if (config.shape == "torus") {
    if (!(config.r > 0.0)) throw ConfigError("--r must be positive");
    if (!(config.R > config.r)) throw ConfigError("torus requires R > r");
  } else if (config.shape != "clifford") {
    throw ConfigError("unknown shape '" + config.shape + "'");
  }
}

Surface build_surface(const RunConfig& config, int default_ns, int default_nt) {
  validate(config);
  Surface surface;
  if (is_mesh(config)) {
    surface.mesh = read_mesh(mesh_path(config));
    surface.quad = mesh_quadrature(*surface.mesh);
    return surface;
  }
  const auto [ns, nt] = resolution(config, default_ns, default_nt);
  surface.chart = make_chart(config);
  surface.quad = build_quadrature(*surface.chart, ns, nt);
  return surface;
}

MobiusMap resolve_mobius(const RunConfig& config, const Surface& surface) {
  MobiusMap map;
  std::mt19937_64 rng(config.seed);
  for (const auto& spec : config.mobius) {
    if (spec == "random") {
      Vec3 lo = surface.quad.nodes.front().x, hi = lo;
      for (const auto& node : surface.quad.nodes) {
        lo = lo.cwiseMin(node.x);
        hi = hi.cwiseMax(node.x);
      }
      const MobiusMap random = random_mobius(rng, 0.5 * (lo + hi), 0.5 * (hi - lo).norm());
      map.steps.insert(map.steps.end(), random.steps.begin(), random.steps.end());
    } else {
      const MobiusMap parsed = parse_mobius(spec);
      map.steps.insert(map.steps.end(), parsed.steps.begin(), parsed.steps.end());
    }
  }
  return map;
}

Surface transform_surface(const Surface& surface, const MobiusMap& map, const RunConfig& config, int default_ns,
                          int default_nt) {
  Surface out;
  if (surface.mesh) {
    out.mesh = apply_mobius(*surface.mesh, map);
    out.quad = mesh_quadrature(*out.mesh);
    out.quad.label = surface.quad.label + "_mobius";
    return out;
  }
  const auto [ns, nt] = resolution(config, default_ns, default_nt);
  out.chart = apply_mobius(*surface.chart, map);
  out.quad = build_quadrature(*out.chart, ns, nt, surface.quad.label + "_mobius");
  return out;
}

namespace {

constexpr int kGeometryNs = 64;
int geometry_nt(const RunConfig& config) { return is_torus_like(config) ? 64 : 128; }

// About 2048 nodes with comparable spacing in both directions.
std::pair<int, int> spectrum_defaults(const RunConfig& config) {
  return is_torus_like(config) ? std::pair{64, 32} : std::pair{32, 64};
}

Surface configured_surface(const RunConfig& config, int ns, int nt) {
  Surface surface = build_surface(config, ns, nt);
  if (config.mobius.empty()) return surface;
  return transform_surface(surface, resolve_mobius(config, surface), config, ns, nt);
}

ReportOptions report_options(const RunConfig& config) {
  ReportOptions options;
  options.signed_densities = config.signed_densities;
  options.per_node_density = config.per_node_density;
  return options;
}

}  // namespace

GeometryReport cmd_geometry(const RunConfig& config, std::ostream& out) {
  const Surface surface = configured_surface(config, kGeometryNs, geometry_nt(config));
  GeometryReport report = geometry_report(surface.quad, report_options(config));
  OutputSet files(config.out_dir);
  files.write_json("geometry.json", report_to_json(report));
  files.write_json("quad.json", quadrature_to_json(surface.quad));
  files.commit();
  out << report_table(report);
  return report;
}

WeylFit cmd_spectrum(const RunConfig& config, std::ostream& out) {
  const auto [ns, nt] = spectrum_defaults(config);
  const Surface surface = configured_surface(config, ns, nt);
  const GeometryReport geometry = geometry_report(surface.quad);
  const NpMatrix matrix = assemble(surface.quad);
  const SpectrumResult spectrum = eigenvalues(matrix);
  const FitWindow window = config.window.value_or(default_window(spectrum.n));
  const WeylFit fit = weyl_fit(spectrum, window, geometry.predicted_weyl_constant);
  const SignedFit signed_fit = signed_split_fit(spectrum, window);

  OutputSet files(config.out_dir);
  {
    auto csv = files.open("spectrum.csv");
    write_spectrum_csv(spectrum, csv);
  }
  files.write_json("fit.json", fit_to_json(fit));
  if (config.export_matrix) {
    const auto bin = files.stage("matrix.partial.bin", "matrix.bin");
    files.stage("matrix.partial.json", "matrix.json");
    export_matrix(matrix, bin);
  }
  files.commit();

  out.precision(12);
  out << "label=" << matrix.source_label() << '\n'
      << "n=" << spectrum.n << '\n'
      << "lambda_0=" << spectrum.eigenvalues.front().real() << '\n'
      << "max_imag_residual=" << spectrum.max_imag_residual << '\n'
      << "window=" << window.j_min << ':' << window.j_max << '\n'
      << "fitted_constant=" << fit.fitted_constant << '\n'
      << "slope=" << fit.slope << '\n'
      << "predicted_constant=" << fit.predicted_constant << '\n'
      << "relative_deviation=" << fit.relative_deviation << '\n'
      << "signed_c_plus_exploratory=" << signed_fit.c_plus << '\n'
      << "signed_c_minus_exploratory=" << signed_fit.c_minus << '\n';
  return fit;
}

std::vector<double> cmd_sphere_exact(const RunConfig& config, std::ostream& out) {
  if (config.count < 1) throw ConfigError("--count must be at least 1");
  const std::vector<double> values = exact_sphere_spectrum(config.count);
  OutputSet files(config.out_dir);
  {
    auto csv = files.open("sphere_exact.csv");
    csv << "j,value\n";
    char buf[64];
    for (std::size_t j = 0; j < values.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g\n", j, values[j]);
      csv << buf;
    }
  }
  files.commit();
  out << "count=" << values.size() << '\n';
  out.precision(17);
  out << "last=" << values.back() << '\n';
  return values;
}

MobiusComparison cmd_mobius(const RunConfig& config, std::ostream& out) {
  if (config.mobius.empty()) throw ConfigError("mobius command needs at least one --mobius SPEC");
  const int ns = kGeometryNs, nt = geometry_nt(config);
  const Surface surface = build_surface(config, ns, nt);
  const MobiusMap map = resolve_mobius(config, surface);
  const Surface image = transform_surface(surface, map, config, ns, nt);

  MobiusComparison cmp;
  cmp.before = geometry_report(surface.quad, report_options(config));
  cmp.after = geometry_report(image.quad, report_options(config));
  cmp.delta_willmore = cmp.after.willmore_energy - cmp.before.willmore_energy;
  cmp.delta_constant = cmp.after.predicted_weyl_constant - cmp.before.predicted_weyl_constant;
  cmp.delta_area = cmp.after.area - cmp.before.area;

  OutputSet files(config.out_dir);
  files.write_json("mobius.json", {{"map", to_string(map)},
                                   {"before", report_to_json(cmp.before)},
                                   {"after", report_to_json(cmp.after)},
                                   {"delta_willmore", cmp.delta_willmore},
                                   {"delta_constant", cmp.delta_constant},
                                   {"delta_area", cmp.delta_area}});
  files.commit();

  out << "map=" << to_string(map) << '\n' << "[before]\n" << report_table(cmp.before) << "[after]\n"
      << report_table(cmp.after);
  out.precision(6);
  out << "[delta]\n"
      << std::scientific << "delta_willmore=" << cmp.delta_willmore << '\n'
      << "relative_delta_willmore=" << std::abs(cmp.delta_willmore) / cmp.before.willmore_energy << '\n'
      << "delta_constant=" << cmp.delta_constant << '\n'
      << "delta_area=" << cmp.delta_area << '\n'
      << std::defaultfloat;
  return cmp;
}

}  // namespace npweyl::cli
