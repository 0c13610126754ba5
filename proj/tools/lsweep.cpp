// lsweep: command-line front end for the 2D volume-scattering solver.
//
// Subcommands:
//   solve          set up the preconditioned solver for a medium and solve
//                  one incident plane wave; writes report.json, u.lsf and
//                  magnitude images into --out
//   stencil-eval   free-space accuracy study of the fitted compact scheme
//                  against the rotationally-fitted reference scheme
//   calibrate-pml  sweep the absorption strength on a free-space point
//                  source and report the best candidate
//   selftest       run the built-in oracle suite (exit status reflects it)

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "lsw/config.hpp"
#include "lsw/field_io.hpp"
#include "lsw/grid.hpp"
#include "lsw/scattering.hpp"
#include "lsw/selftest.hpp"
#include "lsw/special.hpp"
#include "lsw/stencil_eval.hpp"
#include "lsw/velocity.hpp"

extern "C" void openblas_set_num_threads(int);

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using namespace lsw;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int resolve_threads(int from_cli) {
  int t = 1;
  if (const char* env = std::getenv("LS_SWEEP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 4096) t = static_cast<int>(v);
  }
  if (from_cli >= 1) t = from_cli;
  return t;
}

void apply_threads(int t) {
  // All solver phases are serial by construction; the thread count only
  // feeds the linear-algebra backend.
  openblas_set_num_threads(t);
}

void write_json(const fs::path& path, const json& doc) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw NumericalError("cannot open for writing: " + path.string());
  out << doc.dump(2) << "\n";
}

RealVector magnitude_image(const ComplexVector& u) {
  RealVector mag(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) mag[i] = std::abs(u[i]);
  return mag;
}

const char* velocity_kind_name(VelocityConfig::Kind k) {
  switch (k) {
    case VelocityConfig::Kind::kFree: return "free";
    case VelocityConfig::Kind::kGaussian: return "gaussian";
    case VelocityConfig::Kind::kRandomGaussians: return "random_gaussians";
    case VelocityConfig::Kind::kRandom: return "random";
  }
  return "?";
}

int run_solve(const RunConfig& rc, const std::string& out_dir) {
  apply_threads(resolve_threads(rc.threads));
  fs::create_directories(out_dir);

  const GridSpec g = grid_from_config(rc);
  const PerturbationField field = build_velocity(g, rc.velocity);

  std::cout << "grid: n = " << g.n << " (" << static_cast<long>(g.n) * g.n
            << " unknowns), h = " << g.h() << ", collar b = " << g.b << "\n";
  std::cout << "medium: kind = " << velocity_kind_name(rc.velocity.kind)
            << ", max |m| = " << field.max_abs() << "\n";

  ScatteringSolver::Options opt;
  opt.solver = rc.solver;
  const ComplexField u_inc =
      plane_wave(g, rc.incident_direction[0], rc.incident_direction[1]);
  const auto result = solve_scattering(g, field, u_inc.data, opt);
  const SolveReport& rep = result.report;

  std::cout << (rep.converged ? "converged" : "NOT CONVERGED") << " in "
            << rep.iterations << " iterations (" << rep.restarts
            << " restarts)\n";
  std::cout << "relative residual: preconditioned " << rep.rel_residual
            << ", unpreconditioned " << rep.true_rel_residual << "\n";
  std::cout << "seconds: setup " << rep.t_setup << ", one apply "
            << rep.t_apply << ", solve " << rep.t_solve << "\n";

  json doc = {
      {"omega_over_2pi", g.omega / kTwoPi},
      {"ppw", rc.ppw},
      {"n", g.n},
      {"unknowns", static_cast<long>(g.n) * g.n},
      {"b", g.b},
      {"c_pml", g.c_pml},
      {"velocity", velocity_kind_name(rc.velocity.kind)},
      {"max_abs_m", field.max_abs()},
      {"iterations", rep.iterations},
      {"restarts", rep.restarts},
      {"converged", rep.converged},
      {"rel_residual", rep.rel_residual},
      {"true_rel_residual", rep.true_rel_residual},
      {"t_setup", rep.t_setup},
      {"t_apply", rep.t_apply},
      {"t_solve", rep.t_solve},
  };
  write_json(fs::path(out_dir) / "report.json", doc);

  FieldMeta meta;
  meta.nx = g.n;
  meta.ny = g.n;
  meta.index_set = "interior";
  meta.omega = g.omega;
  meta.h = g.h();
  write_field((fs::path(out_dir) / "u.lsf").string(), meta, result.u);
  write_pgm((fs::path(out_dir) / "u_mag.pgm").string(), g.n, g.n,
            magnitude_image(result.u));
  write_pgm((fs::path(out_dir) / "m.pgm").string(), g.n, g.n, field.m);

  std::cout << "wrote " << out_dir << "/report.json, u.lsf, u_mag.pgm, m.pgm\n";
  return rep.converged ? 0 : 2;
}

int run_stencil_eval(double f, std::vector<double> ppw_list,
                     std::vector<std::string> schemes, int b, double c_pml,
                     bool exact_green, const std::string& out_dir) {
  apply_threads(resolve_threads(0));
  fs::create_directories(out_dir);

  json rows = json::array();
  for (const std::string& scheme_name : schemes) {
    HomogeneousScheme scheme;
    if (scheme_name == "fitted") {
      scheme = HomogeneousScheme::kFitted;
    } else if (scheme_name == "reference") {
      scheme = HomogeneousScheme::kReference;
    } else {
      std::cerr << "unknown scheme \"" << scheme_name
                << "\" (expected fitted|reference)\n";
      return 1;
    }
    for (double ppw : ppw_list) {
      const GridSpec g = make_grid(kTwoPi * f, ppw, b, c_pml);
      const ComplexVector u = solve_homogeneous(g, scheme, exact_green);
      const PhaseErrorMap map = phase_error(g, u);

      std::cout << scheme_name << "  ppw=" << ppw << "  n=" << g.n
                << "  max phase error = " << map.max_abs
                << " cycles  (relative " << map.rel_phase_error << ", "
                << map.unsafe_count << " unsafe points)\n";
      rows.push_back({{"scheme", scheme_name},
                      {"ppw", ppw},
                      {"n", g.n},
                      {"max_phase_cycles", map.max_abs},
                      {"rel_phase_error", map.rel_phase_error},
                      {"unsafe_points", map.unsafe_count}});

      RealVector img(map.delta.size());
      for (std::size_t i = 0; i < img.size(); ++i)
        img[i] = map.valid[i] ? map.delta[i] : 0.0;
      std::ostringstream name;
      name << "delta_" << scheme_name << "_ppw" << ppw << ".pgm";
      write_pgm((fs::path(out_dir) / name.str()).string(), g.n, g.n, img);
    }
  }
  json doc = {{"omega_over_2pi", f},
              {"collar_scale", 2},
              {"exact_green", exact_green},
              {"rows", rows}};
  write_json(fs::path(out_dir) / "summary.json", doc);
  std::cout << "wrote " << out_dir << "/summary.json\n";
  return 0;
}

int run_calibrate(double f, double ppw, int b, std::vector<double> candidates,
                  const std::string& out_dir) {
  apply_threads(resolve_threads(0));
  fs::create_directories(out_dir);

  json rows = json::array();
  double best_err = 0.0;
  double best_c = 0.0;
  for (double c_pml : candidates) {
    const GridSpec g = make_grid(kTwoPi * f, ppw, b, c_pml);
    // Production collar (scale 1): the measured error is interior error
    // plus whatever reflects off the absorbing layer.
    const ComplexVector u =
        solve_homogeneous(g, HomogeneousScheme::kFitted, false, 1);

    const int c = source_cell(g);
    const double h = g.h();
    double num = 0.0, den = 0.0;
    for (int i1 = 1; i1 <= g.n; ++i1)
      for (int i2 = 1; i2 <= g.n; ++i2) {
        if (std::abs(i1 - c) <= 1 && std::abs(i2 - c) <= 1) continue;
        const Complex ref = green2d(
            g.omega, h * std::hypot(double(i1 - c), double(i2 - c)));
        const Complex z = u[static_cast<std::size_t>(i1 - 1) * g.n + (i2 - 1)];
        num += std::norm(z - ref);
        den += std::norm(ref);
      }
    const double err = std::sqrt(num / den);
    std::cout << "c_pml = " << c_pml << "  free-space mismatch = " << err
              << "\n";
    rows.push_back({{"c_pml", c_pml}, {"l2_rel_error", err}});
    if (best_c == 0.0 || err < best_err) {
      best_err = err;
      best_c = c_pml;
    }
  }
  json doc = {{"omega_over_2pi", f},
              {"ppw", ppw},
              {"b", b},
              {"candidates", rows},
              {"best_c_pml", best_c},
              {"best_error", best_err}};
  write_json(fs::path(out_dir) / "calibration.json", doc);
  std::cout << "best c_pml = " << best_c << " (mismatch " << best_err
            << "); wrote " << out_dir << "/calibration.json\n";
  return 0;
}

int run_selftest_cmd(const std::string& inject) {
  apply_threads(resolve_threads(0));
  FaultInjection fault = FaultInjection::kNone;
  if (inject == "kernel-table") {
    fault = FaultInjection::kKernelTable;
  } else if (!inject.empty()) {
    std::cerr << "unknown fault \"" << inject << "\"\n";
    return 1;
  }
  const SelftestResult r = run_selftest(fault, &std::cout);
  std::cout << (r.ok ? "selftest: all checks passed\n"
                     : "selftest: FAILURES above\n");
  return r.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "2D volume scattering: integral operator applied by FFT, approximated "
      "by a fitted compact-stencil system, inverted approximately by a "
      "moving-ramp sweeping factorization, wrapped as a GMRES "
      "preconditioner"};
  app.require_subcommand(1);

  // ---- solve ----
  auto* solve = app.add_subcommand("solve", "solve one scattering problem");
  std::string cfg_path, velocity_preset_name = "focusing-gaussian";
  std::string out_dir = "out";
  double f = 16.0, ppw = 8.0, c_pml = 10.0, tol = 1e-6;
  int b = 8, threads = 0;
  long long seed = -1;
  solve->add_option("--config", cfg_path, "JSON config file");
  solve->add_option("--velocity", velocity_preset_name,
                    "medium preset: free|focusing-gaussian|defocusing-"
                    "gaussian|random-gaussians|random-smooth");
  solve->add_option("--omega-over-2pi", f, "frequency in cycles per unit");
  solve->add_option("--ppw", ppw, "grid points per wavelength");
  solve->add_option("--b", b, "absorbing layers per side");
  solve->add_option("--c-pml", c_pml, "absorption strength");
  solve->add_option("--seed", seed, "override the medium seed");
  solve->add_option("--threads", threads, "linear-algebra threads");
  solve->add_option("--tol", tol, "solver relative residual target");
  solve->add_option("--out", out_dir, "output directory");

  // ---- stencil-eval ----
  auto* seval = app.add_subcommand(
      "stencil-eval", "free-space accuracy study of the compact schemes");
  double se_f = 64.0, se_cpml = 10.0;
  int se_b = 8;
  std::vector<double> se_ppw = {3.0, 4.0, 5.0};
  std::vector<std::string> se_schemes = {"fitted", "reference"};
  bool se_exact_green = false;
  std::string se_out = "out";
  seval->add_option("--omega-over-2pi", se_f, "frequency in cycles per unit");
  seval->add_option("--ppw", se_ppw, "points-per-wavelength list");
  seval->add_option("--scheme", se_schemes, "schemes: fitted and/or reference");
  seval->add_option("--b", se_b, "base collar width (study doubles it)");
  seval->add_option("--c-pml", se_cpml, "base absorption (study doubles it)");
  seval
      ->add_flag("--exact-green", se_exact_green,
                 "bypass the solve and emit the sampled kernel (must give a "
                 "zero error map)")
      ->group("");  // hidden test hook
  seval->add_option("--out", se_out, "output directory");

  // ---- calibrate-pml ----
  auto* cal = app.add_subcommand(
      "calibrate-pml", "sweep absorption strengths on a free-space source");
  double cal_f = 8.0, cal_ppw = 8.0;
  int cal_b = 8;
  std::vector<double> cal_cand = {5.0, 10.0, 15.0, 20.0};
  std::string cal_out = "out";
  cal->add_option("--omega-over-2pi", cal_f, "frequency in cycles per unit");
  cal->add_option("--ppw", cal_ppw, "grid points per wavelength");
  cal->add_option("--b", cal_b, "absorbing layers per side");
  cal->add_option("--candidates", cal_cand, "absorption strengths to try");
  cal->add_option("--out", cal_out, "output directory");

  // ---- selftest ----
  auto* st = app.add_subcommand("selftest", "run the built-in oracle suite");
  std::string st_inject;
  st->add_option("--inject-fault", st_inject,
                 "deliberately corrupt a component (kernel-table)")
      ->group("");  // hidden test hook

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      RunConfig rc;
      if (!cfg_path.empty())
        rc = load_run_config(cfg_path);
      else
        rc.velocity = velocity_preset(velocity_preset_name);
      // Explicit flags override the config file.
      if (solve->count("--velocity"))
        rc.velocity = velocity_preset(velocity_preset_name);
      if (solve->count("--omega-over-2pi")) rc.omega_over_2pi = f;
      if (solve->count("--ppw")) rc.ppw = ppw;
      if (solve->count("--b")) rc.b = b;
      if (solve->count("--c-pml")) rc.c_pml = c_pml;
      if (solve->count("--tol")) rc.solver.tol = tol;
      if (solve->count("--threads")) rc.threads = threads;
      if (seed >= 0) rc.velocity.seed = static_cast<std::uint64_t>(seed);
      return run_solve(rc, out_dir);
    }
    if (*seval)
      return run_stencil_eval(se_f, se_ppw, se_schemes, se_b, se_cpml,
                              se_exact_green, se_out);
    if (*cal) return run_calibrate(cal_f, cal_ppw, cal_b, cal_cand, cal_out);
    if (*st) return run_selftest_cmd(st_inject);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
