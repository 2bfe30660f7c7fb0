#include "npweyl/cli.hpp"

#include "npweyl/error.hpp"

#include <CLI11.hpp>

#include <ostream>

namespace npweyl::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Neumann-Poincare spectra and Weyl-law checks on closed surfaces"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file (command-line flags take precedence)");

  RunConfig config;
  std::string res, window, out_dir = ".";
  app.add_option("--shape", config.shape, "sphere | ellipsoid | torus | clifford | mesh | mesh:PATH");
  app.add_option("--rho", config.rho, "sphere radius");
  app.add_option("--a", config.a, "ellipsoid semi-axis along x");
  app.add_option("--b", config.b, "ellipsoid semi-axis along y");
  app.add_option("--c", config.c, "ellipsoid semi-axis along z");
  app.add_option("--R", config.R, "torus major radius");
  app.add_option("--r", config.r, "torus tube radius");
  app.add_option("--res", res, "quadrature resolution NxM");
  app.add_option("--mesh", config.mesh_path, "OFF or OBJ triangle mesh");
  app.add_option("--window", window, "Weyl fit window J:K");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--mobius", config.mobius,
                 "Mobius step list 'translate:x,y,z;scale:a;invert:x,y,z,rho' or 'random'")
      ->take_all();
  app.add_option("--seed", config.seed, "seed for randomized inputs");
  app.add_option("--count", config.count, "number of exact sphere eigenvalues");
  app.add_flag("--signed", config.signed_densities, "include signed densities C+ and C-");
  app.add_flag("--weyl-density", config.per_node_density, "include the per-node Weyl density");
  app.add_flag("--export-matrix", config.export_matrix, "write matrix.bin and matrix.json");

  auto* geometry = app.add_subcommand("geometry", "Willmore energy, Gauss-Bonnet and the predicted Weyl constant");
  auto* spectrum = app.add_subcommand("spectrum", "Nystrom NP spectrum and Weyl fit");
  auto* exact = app.add_subcommand("sphere-exact", "exact NP spectrum of the round sphere");
  auto* mobius = app.add_subcommand("mobius", "geometry before and after a Mobius map");
  for (auto* sub : {geometry, spectrum, exact, mobius}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (!res.empty()) std::tie(config.n_s, config.n_t) = parse_resolution(res);
    if (!window.empty()) config.window = parse_window(window);
    config.out_dir = out_dir;
    if (geometry->parsed()) {
      cmd_geometry(config, out);
    } else if (spectrum->parsed()) {
      cmd_spectrum(config, out);
    } else if (exact->parsed()) {
      cmd_sphere_exact(config, out);
    } else if (mobius->parsed()) {
      cmd_mobius(config, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(Error::Category::Numerics);
  }
  return 0;
}

}  // namespace npweyl::cli
