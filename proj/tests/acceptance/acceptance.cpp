// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "npweyl/invariants.hpp"
#include "npweyl/mobius.hpp"
#include "npweyl/np_operator.hpp"
#include "npweyl/quadrature.hpp"
#include "npweyl/spectrum.hpp"
#include "npweyl/symbol.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace npweyl;

namespace {

constexpr double kPi = std::numbers::pi;
int failures = 0;

class Criterion {
 public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

  void check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4))) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    details_.push_back(std::string(ok ? "  ok   " : "  FAIL ") + buf);
    passed_ = passed_ && ok;
  }

  ~Criterion() {
    std::printf("[%s] criterion %d: %s\n", passed_ ? "PASS" : "FAIL", id_, title_.c_str());
    for (const auto& line : details_) std::printf("%s\n", line.c_str());
    std::fflush(stdout);
    if (!passed_) ++failures;
  }

 private:
  int id_;
  std::string title_;
  std::vector<std::string> details_;
  bool passed_ = true;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Run {
  SpectrumResult spectrum;
  double predicted = 0.0;
  double seconds = 0.0;
};

Run nystrom(const SurfaceChart& chart, int ns, int nt) {
  const auto t0 = std::chrono::steady_clock::now();
  const SurfaceQuadrature quad = build_quadrature(chart, ns, nt);
  Run run;
  run.spectrum = eigenvalues(assemble(quad));
  run.seconds = seconds_since(t0);
  run.predicted = predicted_weyl_constant(willmore_energy(quad), quad.euler_characteristic);
  return run;
}

double spread(const std::vector<std::complex<double>>& ev, int first, int last) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int j = first; j <= last; ++j) {
    lo = std::min(lo, std::abs(ev[j]));
    hi = std::max(hi, std::abs(ev[j]));
  }
  return hi - lo;
}

double predicted_of(const SurfaceQuadrature& quad) {
  return predicted_weyl_constant(willmore_energy(quad), quad.euler_characteristic);
}

}  // namespace

int main() {
  std::printf("Nystrom sphere runs (N = 512, 1024, 2048)...\n");
  std::fflush(stdout);
  const Run s512 = nystrom(sphere(1.0), 16, 32);
  const Run s1024 = nystrom(sphere(1.0), 32, 32);
  const Run s2048 = nystrom(sphere(1.0), 32, 64);
  const auto& ev = s2048.spectrum.eigenvalues;

  {
    Criterion c(1, "sphere exact-spectrum reproduction, N = 2048");
    c.check(std::abs(ev[0] - 0.5) <= 1e-12, "|lambda_0 - 1/2| = %.3e (<= 1e-12)", std::abs(ev[0] - 0.5));
    double e1 = 0.0, e2 = 0.0;
    for (int j = 1; j <= 3; ++j) e1 = std::max(e1, std::abs(ev[j] - 1.0 / 6.0));
    for (int j = 4; j <= 8; ++j) e2 = std::max(e2, std::abs(ev[j] - 1.0 / 10.0));
    c.check(e1 <= 5e-3, "max_{j=1..3} |lambda_j - 1/6| = %.3e (<= 5e-3)", e1);
    c.check(e2 <= 5e-3, "max_{j=4..8} |lambda_j - 1/10| = %.3e (<= 5e-3)", e2);
    const double sp3 = spread(ev, 1, 3), sp5 = spread(ev, 4, 8);
    const double gap_34 = std::abs(ev[3]) - std::abs(ev[4]);
    const double gap_89 = std::abs(ev[8]) - std::abs(ev[9]);
    c.check(gap_34 > 10 * sp3 && gap_34 > 10 * sp5, "gap(3,4) = %.3e vs spreads %.3e, %.3e (> 10x)", gap_34, sp3, sp5);
    c.check(gap_89 > 10 * sp5, "gap(8,9) = %.3e vs spread %.3e (> 10x)", gap_89, sp5);
    c.check(s2048.seconds <= 180.0, "quadrature + assembly + eigensolve: %.1f s (<= 180 s)", s2048.seconds);
  }

  {
    Criterion c(2, "Weyl constant on the sphere");
    const WeylFit fit = weyl_fit(s2048.spectrum, default_window(s2048.spectrum.n), 0.25);
    c.check(fit.relative_deviation <= 0.10, "Nystrom N = 2048, window [%d, %d]: c = %.6f, rel dev %.4f (<= 0.10)",
            fit.window.j_min, fit.window.j_max, fit.fitted_constant, fit.relative_deviation);
    const WeylFit exact = weyl_fit(exact_sphere_spectrum(2501), {100, 2500}, 0.25);
    c.check(exact.relative_deviation <= 0.05, "exact spectrum, window [100, 2500]: c = %.6f, rel dev %.4f (<= 0.05)",
            exact.fitted_constant, exact.relative_deviation);
  }

  {
    Criterion c(3, "geometry constants");
    const double w_sphere = willmore_energy(build_quadrature(sphere(1.0), 64, 128));
    c.check(std::abs(w_sphere - 4 * kPi) <= 1e-6, "W(unit sphere) - 4 pi = %.3e (<= 1e-6)", w_sphere - 4 * kPi);
    const SurfaceQuadrature cliff = build_quadrature(clifford_torus(), 64, 64);
    const double w_cliff = willmore_energy(cliff);
    c.check(std::abs(w_cliff - 2 * kPi * kPi) <= 1e-8, "W(Clifford) - 2 pi^2 = %.3e (<= 1e-8)",
            w_cliff - 2 * kPi * kPi);
    const double c_sphere = predicted_weyl_constant(4 * kPi, 2);
    c.check(c_sphere == 0.25, "C(4 pi, 2) = %.17g (== 0.25)", c_sphere);
    const double c_cliff = predicted_of(cliff);
    c.check(std::abs(c_cliff - std::sqrt(3 * kPi) / 8) <= 1e-8, "C(Clifford) - sqrt(3 pi)/8 = %.3e (<= 1e-8)",
            c_cliff - std::sqrt(3 * kPi) / 8);
  }

  {
    Criterion c(4, "Gauss-Bonnet");
    const double r_sphere = gauss_bonnet_check(build_quadrature(sphere(1.0), 64, 64)).residual;
    const double r_torus = gauss_bonnet_check(build_quadrature(torus(2.0, 1.0), 64, 64)).residual;
    c.check(r_sphere <= 1e-6, "sphere 64x64 residual %.3e (<= 1e-6)", r_sphere);
    c.check(r_torus <= 1e-10, "torus 64x64 residual %.3e (<= 1e-10)", r_torus);
    // Refinement sequences on surfaces whose coarse grids are not yet exact.
    for (const auto& chart : {sphere(1.0), ellipsoid(1.0, 1.3, 1.7), torus(2.0, 1.0), torus(3.0, 0.5)}) {
      std::string seq;
      bool decreasing = true;
      double previous = std::numeric_limits<double>::infinity();
      for (int n : {4, 8, 16, 32, 64}) {
        const double r = gauss_bonnet_check(build_quadrature(chart, n, n)).residual;
        char buf[32];
        std::snprintf(buf, sizeof buf, " %.2e", r);
        seq += buf;
        // Once at rounding level the residual can only wander within it.
        if (!(r < previous || r <= 1e-13)) decreasing = false;
        previous = r;
      }
      c.check(decreasing, "%s residuals at n = 4..64:%s", chart.name.c_str(), seq.c_str());
    }
  }

  {
    Criterion c(5, "symbol densities: numeric, closed form, curvature form, global integral");
    std::mt19937_64 rng(20260501);
    const SurfaceChart chart = stereographic_sphere();
    std::uniform_real_distribution<double> u(chart.domain.s0, chart.domain.s1);
    std::uniform_real_distribution<double> v(chart.domain.t0, chart.domain.t1);
    double worst_nc = 0.0, worst_cw = 0.0, worst_nw = 0.0;
    int points = 0;
    while (points < 200) {
      const SymbolPoint p = make_symbol_point(fundamental_forms(chart, u(rng), v(rng)));
      if (!p.is_conformal) continue;
      const double numeric = symbol_density_numeric(p, 512);
      const double closed = symbol_density_closed_form(p);
      const double curvature = weyl_density_pointwise(p.H, p.K);
      worst_nc = std::max(worst_nc, rel(numeric, closed));
      worst_cw = std::max(worst_cw, rel(closed, curvature));
      worst_nw = std::max(worst_nw, rel(numeric, curvature));
      ++points;
    }
    c.check(worst_nc <= 1e-10, "%d conformal points: max rel |numeric - closed| = %.3e (<= 1e-10)", points, worst_nc);
    c.check(std::max(worst_cw, worst_nw) <= 1e-8, "max rel deviation from the (H, K) density = %.3e (<= 1e-8)",
            std::max(worst_cw, worst_nw));
    struct Case {
      SurfaceChart chart;
      int ns, nt;
    };
    for (const Case& k : {Case{sphere(1.0), 64, 128}, Case{ellipsoid(1.0, 1.3, 1.7), 64, 128},
                          Case{torus(2.0, 1.0), 64, 64}}) {
      const SurfaceQuadrature quad = build_quadrature(k.chart, k.ns, k.nt);
      const double total = integrated_weyl_density(quad);
      const double cc = predicted_of(quad);
      c.check(rel(total, cc * cc) <= 1e-8, "%s: sum density w = %.12f vs C^2 = %.12f, rel %.3e (<= 1e-8)",
              k.chart.name.c_str(), total, cc * cc, rel(total, cc * cc));
    }
  }

  {
    // Closed built-in surfaces; the stereographic chart is only a patch.
    Criterion c(6, "signed densities");
    struct Case {
      SurfaceChart chart;
      int ns, nt;
    };
    for (const Case& k : {Case{sphere(1.0), 64, 128}, Case{ellipsoid(1.0, 1.3, 1.7), 64, 128},
                          Case{torus(2.0, 1.0), 64, 64}, Case{clifford_torus(), 64, 64}}) {
      const SurfaceQuadrature quad = build_quadrature(k.chart, k.ns, k.nt);
      const SignedDensities sd = signed_densities(quad);
      const double cc = predicted_of(quad);
      const double sum = sd.c_plus * sd.c_plus + sd.c_minus * sd.c_minus;
      c.check(rel(sum, cc * cc) <= 1e-10, "%s: C+ = %.8f, C- = %.8f, rel |C+^2 + C-^2 - C^2| = %.3e (<= 1e-10)",
              k.chart.name.c_str(), sd.c_plus, sd.c_minus, rel(sum, cc * cc));
      if (k.chart.genus == 0) {
        c.check(sd.c_minus <= 1e-12, "%s: C- = %.3e (<= 1e-12)", k.chart.name.c_str(), sd.c_minus);
      } else if (k.chart.name.rfind("torus", 0) == 0) {
        c.check(sd.c_minus > 0.0, "%s: C- = %.6f (> 0)", k.chart.name.c_str(), sd.c_minus);
      }
    }
  }

  {
    Criterion c(7, "Mobius invariance of W and C at 128x128");
    std::mt19937_64 rng(7);
    struct Case {
      SurfaceChart chart;
      double bounding_radius;
    };
    for (const Case& k : {Case{sphere(1.0), 1.0}, Case{torus(2.0, 1.0), 3.0}}) {
      const SurfaceQuadrature before = build_quadrature(k.chart, 128, 128);
      const double w0 = willmore_energy(before), c0 = predicted_of(before);
      double worst_w = 0.0, worst_c = 0.0;
      for (int trial = 0; trial < 5; ++trial) {
        const MobiusMap map = random_mobius(rng, Vec3::Zero(), k.bounding_radius);
        const SurfaceQuadrature after = build_quadrature(apply_mobius(k.chart, map), 128, 128);
        worst_w = std::max(worst_w, rel(willmore_energy(after), w0));
        worst_c = std::max(worst_c, rel(predicted_of(after), c0));
      }
      c.check(worst_w <= 1e-5, "%s, 5 maps: max |dW|/W = %.3e (<= 1e-5)", k.chart.name.c_str(), worst_w);
      c.check(worst_c <= 1e-5, "%s, 5 maps: max |dC|/C = %.3e (<= 1e-5)", k.chart.name.c_str(), worst_c);
    }
  }

  {
    Criterion c(8, "torus(2,1) Weyl law against the geometric prediction");
    const Run tor = nystrom(torus(2.0, 1.0), 64, 32);
    const WeylFit fit = weyl_fit(tor.spectrum, default_window(tor.spectrum.n), tor.predicted);
    c.check(fit.relative_deviation <= 0.15, "N = %zu, window [%d, %d]: c = %.6f vs predicted %.6f, rel dev %.4f (<= 0.15)",
            tor.spectrum.n, fit.window.j_min, fit.window.j_max, fit.fitted_constant, tor.predicted,
            fit.relative_deviation);
    c.check(fit.slope >= -0.6 && fit.slope <= -0.4, "log-log slope %.4f (in [-0.6, -0.4])", fit.slope);
  }

  {
    Criterion c(9, "eigenvalue realness and singular-value tracking on the sphere");
    const double eps = std::numeric_limits<double>::epsilon();
    const Run* runs[] = {&s512, &s1024, &s2048};
    bool non_increasing = true;
    std::string seq;
    for (int i = 0; i < 3; ++i) {
      const double r = runs[i]->spectrum.max_imag_residual;
      char buf[64];
      std::snprintf(buf, sizeof buf, " N=%zu: %.3e", runs[i]->spectrum.n, r);
      seq += buf;
      if (i > 0) {
        // Below N eps the imaginary parts are eigensolver round-off.
        const double floor = static_cast<double>(runs[i]->spectrum.n) * eps;
        if (r > std::max(runs[i - 1]->spectrum.max_imag_residual, floor)) non_increasing = false;
      }
    }
    c.check(non_increasing, "max |Im lambda| non-increasing under doubling (round-off floor N eps):%s", seq.c_str());
    c.check(s2048.spectrum.max_imag_residual <= 1e-6, "N = 2048: max |Im lambda| = %.3e (<= 1e-6)",
            s2048.spectrum.max_imag_residual);
    double worst = 0.0;
    for (int j = 0; j <= 50; ++j) {
      const double s = s2048.spectrum.singular_values[j];
      worst = std::max(worst, std::abs(std::abs(ev[j]) - s) / s);
    }
    c.check(worst <= 2e-2, "max_{j<=50} ||lambda_j| - s_j| / s_j = %.3e (<= 2e-2)", worst);
  }

  {
    Criterion c(10, "plasmonic map");
    const double d = plasmonic_eigenvalues(std::vector<double>{1.0 / 6.0})[0].deviation;
    c.check(d == 1.0, "deviation(1/6) = %.17g (== 1)", d);
    const auto entries = plasmonic_eigenvalues(exact_sphere_spectrum(2501));
    std::vector<double> deviations;
    for (const auto& e : entries) deviations.push_back(e.deviation);
    const WeylFit fit = weyl_fit(deviations, {100, 2500}, 1.0);
    c.check(fit.relative_deviation <= 0.05, "exact sphere, window [100, 2500]: deviation_j sqrt(j) -> %.6f, rel %.4f (<= 0.05)",
            fit.fitted_constant, fit.relative_deviation);
  }

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
