// Command-line front end: spectra, peak scans, coupling curves, efficiency
// maps, localization sweeps and the self-check suites, each emitting a CSV
// (or JSON report) plus a rerunnable manifest.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "wqed/csv.hpp"
#include "wqed/ddi.hpp"
#include "wqed/disorder.hpp"
#include "wqed/ensemble.hpp"
#include "wqed/manifest.hpp"
#include "wqed/observables.hpp"
#include "wqed/validate.hpp"
#include "wqed/version.hpp"

namespace wqedcli {

using nlohmann::json;

// Options shared by every physics subcommand. Rates in gamma0 units, lengths
// in nm; a negative spacing means "lambda_e / 20".
struct PhysicsOptions {
  double gamma = 6.86;
  double gamma_bottom = 11.03;
  double gamma_top = 11.03;
  double theta = std::numbers::pi / 2.0;
  double gamma0_hz = 7.5e6;
  double lambda_e_nm = 655.0;
  double group_velocity = 299792458.0;
  double phase_scale = 1.0;
  double spacing_nm = -1.0;
  std::string mode = "chiral";
  std::uint64_t seed = 42;
  int threads = 0;

  double resolved_spacing() const { return spacing_nm < 0.0 ? lambda_e_nm / 20.0 : spacing_nm; }

  wqed::EmitterParams emitter() const {
    wqed::EmitterParams p;
    p.gamma = gamma;
    p.big_gamma_bottom = gamma_bottom;
    p.big_gamma_top = gamma_top;
    p.theta_dipole = theta;
    return p;
  }

  wqed::UnitSystem units() const {
    wqed::UnitSystem u;
    u.gamma0_hz = gamma0_hz;
    u.lambda_e_nm = lambda_e_nm;
    u.group_velocity = group_velocity;
    u.phase_scale = phase_scale;
    return u;
  }

  wqed::ChiralityMode chirality() const {
    if (mode == "chiral") return wqed::ChiralityMode::chiral;
    if (mode == "bidirectional") return wqed::ChiralityMode::bidirectional;
    throw CLI::ValidationError("--mode must be chiral or bidirectional");
  }
};

void to_json(json& j, const PhysicsOptions& p) {
  j = json{{"gamma", p.gamma},
           {"gamma_bottom", p.gamma_bottom},
           {"gamma_top", p.gamma_top},
           {"theta", p.theta},
           {"gamma0_hz", p.gamma0_hz},
           {"lambda_e_nm", p.lambda_e_nm},
           {"group_velocity", p.group_velocity},
           {"phase_scale", p.phase_scale},
           {"spacing_nm", p.spacing_nm},
           {"mode", p.mode},
           {"seed", p.seed},
           {"threads", p.threads}};
}

void from_json(const json& j, PhysicsOptions& p) {
  j.at("gamma").get_to(p.gamma);
  j.at("gamma_bottom").get_to(p.gamma_bottom);
  j.at("gamma_top").get_to(p.gamma_top);
  j.at("theta").get_to(p.theta);
  j.at("gamma0_hz").get_to(p.gamma0_hz);
  j.at("lambda_e_nm").get_to(p.lambda_e_nm);
  j.at("group_velocity").get_to(p.group_velocity);
  j.at("phase_scale").get_to(p.phase_scale);
  j.at("spacing_nm").get_to(p.spacing_nm);
  j.at("mode").get_to(p.mode);
  j.at("seed").get_to(p.seed);
  j.at("threads").get_to(p.threads);
}

void add_physics_options(CLI::App* cmd, PhysicsOptions& p) {
  cmd->add_option("--gamma", p.gamma, "Residual free-space decay rate (gamma0 units)")
      ->capture_default_str();
  cmd->add_option("--gamma-bottom", p.gamma_bottom,
                  "Per-direction decay into the bottom guide (gamma0 units)")
      ->capture_default_str();
  cmd->add_option("--gamma-top", p.gamma_top,
                  "Per-direction decay into the top guide (gamma0 units)")
      ->capture_default_str();
  cmd->add_option("--theta", p.theta, "Dipole angle against the chain axis (radians)")
      ->capture_default_str();
  cmd->add_option("--gamma0-hz", p.gamma0_hz, "Free-space decay rate scale in Hz")
      ->capture_default_str();
  cmd->add_option("--lambda-e", p.lambda_e_nm, "Emitter transition wavelength (nm)")
      ->capture_default_str();
  cmd->add_option("--group-velocity", p.group_velocity, "Waveguide group velocity (m/s)")
      ->capture_default_str();
  cmd->add_option("--phase-scale", p.phase_scale, "Multiplier on all propagation phases")
      ->capture_default_str();
  cmd->add_option("--spacing", p.spacing_nm,
                  "Nominal emitter spacing in nm (negative: lambda_e / 20)")
      ->capture_default_str();
  cmd->add_option("--mode", p.mode, "Coupling mode: chiral or bidirectional")
      ->check(CLI::IsMember({"chiral", "bidirectional"}))
      ->capture_default_str();
  cmd->add_option("--seed", p.seed, "Master seed for disorder realizations")
      ->capture_default_str();
  cmd->add_option("--threads", p.threads, "Worker threads for ensembles (0: hardware)")
      ->capture_default_str();
}

std::string manifest_path_for(const std::string& output) {
  const std::filesystem::path p(output);
  std::filesystem::path m = p;
  m.replace_extension();
  m += ".manifest.json";
  return m.string();
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

// Runs `body`, then writes the manifest next to the primary output.
template <typename Body>
void with_manifest(const std::string& subcommand, const json& parameters,
                   const std::string& output, bool write_manifest, Body&& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  const auto stop = std::chrono::steady_clock::now();

  if (!write_manifest) return;
  wqed::RunManifest manifest;
  manifest.tool_version = wqed::kToolVersion;
  manifest.subcommand = subcommand;
  manifest.parameters = parameters;
  manifest.outputs = {output};
  manifest.duration_seconds = std::chrono::duration<double>(stop - start).count();
  manifest.created_utc = utc_now();
  manifest.save(manifest_path_for(output));
}

void write_common_comments(wqed::CsvWriter& csv, const std::string& schema,
                           const PhysicsOptions& phys, int n_realizations) {
  csv.comment("schema=" + schema);
  csv.comment("tool_version=" + std::string(wqed::kToolVersion));
  csv.comment("seed=" + std::to_string(phys.seed) +
              " n_realizations=" + std::to_string(n_realizations));
  // The thread count never affects the numbers, so it stays out of the file:
  // a rerun with a different --threads must reproduce the bytes exactly.
  json p = phys;
  p.erase("threads");
  csv.comment("params=" + p.dump());
}

// ---------------------------------------------------------------------------
// ddi-curve: pairwise coupling versus separation, periodic and disordered.

struct DdiCurveOptions {
  PhysicsOptions phys;
  double l_min = 10.0;
  double l_max = 160.0;
  double l_step = 0.25;
  double sigma = 0.2;
  int realizations = 1000;
  std::string output = "ddi_curve.csv";
};

void to_json(json& j, const DdiCurveOptions& o) {
  j = json{{"phys", o.phys},   {"l_min", o.l_min},
           {"l_max", o.l_max}, {"l_step", o.l_step},
           {"sigma", o.sigma}, {"realizations", o.realizations},
           {"output", o.output}};
}

void from_json(const json& j, DdiCurveOptions& o) {
  j.at("phys").get_to(o.phys);
  j.at("l_min").get_to(o.l_min);
  j.at("l_max").get_to(o.l_max);
  j.at("l_step").get_to(o.l_step);
  j.at("sigma").get_to(o.sigma);
  j.at("realizations").get_to(o.realizations);
  j.at("output").get_to(o.output);
}

void run_ddi_curve(const DdiCurveOptions& o, bool write_manifest = true) {
  with_manifest("ddi-curve", json(o), o.output, write_manifest, [&] {
    wqed::DisorderSpec spec;
    spec.mean_spacing_nm = o.phys.resolved_spacing();
    spec.sigma_fraction = o.sigma;
    spec.master_seed = o.phys.seed;

    const std::vector<double> grid = wqed::delta_grid(o.l_min, o.l_max, o.l_step);
    const auto curve =
        wqed::mean_ddi_curve(spec, grid, o.realizations, o.phys.theta, o.phys.units());

    wqed::CsvWriter csv(o.output);
    write_common_comments(csv, "wqed.ddi_curve.v1", o.phys, o.realizations);
    csv.header({"L_nm", "kL_over_pi", "J_periodic", "J_disordered_mean", "J_disordered_stderr"});
    for (const auto& point : curve) {
      csv.row({point.separation_nm, point.k_l_over_pi, point.j_periodic,
               point.j_disordered_mean, point.j_disordered_sem});
    }
    csv.close();
  });
}

// ---------------------------------------------------------------------------
// spectrum: port probabilities over a detuning grid, periodic chain plus the
// disorder-averaged ensemble.

struct SpectrumOptions {
  PhysicsOptions phys;
  int n = 2;
  double delta_min = -300.0;
  double delta_max = 300.0;
  double delta_step = 0.1;
  double sigma = 0.1;
  int realizations = 1000;
  std::string output = "spectrum.csv";
};

void to_json(json& j, const SpectrumOptions& o) {
  j = json{{"phys", o.phys},
           {"n", o.n},
           {"delta_min", o.delta_min},
           {"delta_max", o.delta_max},
           {"delta_step", o.delta_step},
           {"sigma", o.sigma},
           {"realizations", o.realizations},
           {"output", o.output}};
}

void from_json(const json& j, SpectrumOptions& o) {
  j.at("phys").get_to(o.phys);
  j.at("n").get_to(o.n);
  j.at("delta_min").get_to(o.delta_min);
  j.at("delta_max").get_to(o.delta_max);
  j.at("delta_step").get_to(o.delta_step);
  j.at("sigma").get_to(o.sigma);
  j.at("realizations").get_to(o.realizations);
  j.at("output").get_to(o.output);
}

void run_spectrum(const SpectrumOptions& o, bool write_manifest = true) {
  with_manifest("spectrum", json(o), o.output, write_manifest, [&] {
    const std::vector<double> grid = wqed::delta_grid(o.delta_min, o.delta_max, o.delta_step);

    wqed::ScatterProblem periodic;
    periodic.chain = wqed::build_periodic_chain(o.n, o.phys.resolved_spacing(), o.phys.emitter());
    periodic.units = o.phys.units();
    periodic.ddi = wqed::ddi_matrix(periodic.chain, periodic.units);
    periodic.mode = o.phys.chirality();
    const wqed::Spectrum clean = wqed::spectrum(periodic, grid);

    wqed::DisorderSpec spec;
    spec.mean_spacing_nm = o.phys.resolved_spacing();
    spec.sigma_fraction = o.sigma;
    spec.master_seed = o.phys.seed;
    wqed::EnsembleConfig config;
    config.n_realizations = o.realizations;
    config.threads = o.phys.threads;
    const wqed::EnsembleStats stats = wqed::run_ensemble(
        spec, o.n, o.phys.emitter(), o.phys.chirality(), o.phys.units(), grid, config);

    wqed::CsvWriter csv(o.output);
    write_common_comments(csv, "wqed.spectrum.v1", o.phys, o.realizations);
    csv.comment("n=" + std::to_string(o.n) + " sigma_fraction=" + wqed::format_double(o.sigma));
    csv.header({"delta", "p2_periodic", "p4_periodic", "xi_periodic", "p2_mean", "p2_stderr",
                "p4_mean", "p4_stderr", "xi_mean", "xi_stderr"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
      csv.row({grid[i], clean.p_bottom[i], clean.p_top[i], clean.xi[i], stats.p_bottom.mean[i],
               stats.p_bottom.sem[i], stats.p_top.mean[i], stats.p_top.sem[i], stats.xi.mean[i],
               stats.xi.sem[i]});
    }
    csv.close();
  });
}

// ---------------------------------------------------------------------------
// pmax: peak top-guide transmission per chain size.

struct PmaxOptions {
  PhysicsOptions phys;
  std::vector<int> n_list;
  double delta_min = -300.0;
  double delta_max = 300.0;
  double coarse_step = 0.1;
  double refine_tol = 1e-3;
  double sigma = 0.0;
  int realizations = 1000;
  std::string output = "pmax.csv";
};

void to_json(json& j, const PmaxOptions& o) {
  j = json{{"phys", o.phys},
           {"n_list", o.n_list},
           {"delta_min", o.delta_min},
           {"delta_max", o.delta_max},
           {"coarse_step", o.coarse_step},
           {"refine_tol", o.refine_tol},
           {"sigma", o.sigma},
           {"realizations", o.realizations},
           {"output", o.output}};
}

void from_json(const json& j, PmaxOptions& o) {
  j.at("phys").get_to(o.phys);
  j.at("n_list").get_to(o.n_list);
  j.at("delta_min").get_to(o.delta_min);
  j.at("delta_max").get_to(o.delta_max);
  j.at("coarse_step").get_to(o.coarse_step);
  j.at("refine_tol").get_to(o.refine_tol);
  j.at("sigma").get_to(o.sigma);
  j.at("realizations").get_to(o.realizations);
  j.at("output").get_to(o.output);
}

void run_pmax(const PmaxOptions& o, bool write_manifest = true) {
  with_manifest("pmax", json(o), o.output, write_manifest, [&] {
    std::vector<int> n_list = o.n_list;
    if (n_list.empty()) {
      n_list.resize(20);
      for (int i = 0; i < 20; ++i) n_list[static_cast<std::size_t>(i)] = i + 1;
    }

    wqed::CsvWriter csv(o.output);
    write_common_comments(csv, "wqed.pmax.v1", o.phys, o.sigma > 0.0 ? o.realizations : 1);
    csv.comment("sigma_fraction=" + wqed::format_double(o.sigma));
    csv.header({"n", "p_max", "delta_max", "boundary_flag"});

    for (const int n : n_list) {
      if (o.sigma <= 0.0) {
        wqed::ScatterProblem problem;
        problem.chain =
            wqed::build_periodic_chain(n, o.phys.resolved_spacing(), o.phys.emitter());
        problem.units = o.phys.units();
        problem.ddi = wqed::ddi_matrix(problem.chain, problem.units);
        problem.mode = o.phys.chirality();
        const wqed::PmaxResult res =
            wqed::pmax_scan(problem, o.delta_min, o.delta_max, o.coarse_step, o.refine_tol);
        csv.row_mixed({std::to_string(res.n), wqed::format_double(res.p_max),
                       wqed::format_double(res.delta_max), res.at_boundary ? "1" : "0"});
      } else {
        // Disordered chains: peak of the mean spectrum on the coarse grid.
        wqed::DisorderSpec spec;
        spec.mean_spacing_nm = o.phys.resolved_spacing();
        spec.sigma_fraction = o.sigma;
        spec.master_seed = o.phys.seed;
        wqed::EnsembleConfig config;
        config.n_realizations = o.realizations;
        config.threads = o.phys.threads;
        const std::vector<double> grid =
            wqed::delta_grid(o.delta_min, o.delta_max, o.coarse_step);
        const wqed::EnsembleStats stats = wqed::run_ensemble(
            spec, n, o.phys.emitter(), o.phys.chirality(), o.phys.units(), grid, config);
        std::size_t best = 0;
        for (std::size_t i = 1; i < grid.size(); ++i)
          if (stats.p_top.mean[i] > stats.p_top.mean[best]) best = i;
        const bool boundary = best == 0 || best + 1 == grid.size();
        csv.row_mixed({std::to_string(n), wqed::format_double(stats.p_top.mean[best]),
                       wqed::format_double(grid[best]), boundary ? "1" : "0"});
      }
    }
    csv.close();
  });
}

// ---------------------------------------------------------------------------
// efficiency-map: routing efficiency over (detuning, spacing).

struct EfficiencyMapOptions {
  PhysicsOptions phys;
  int n = 2;
  double delta_min = -200.0;
  double delta_max = 200.0;
  double delta_step = 1.0;
  double l_min_frac = 0.01;  // spacing in units of lambda_e
  double l_max_frac = 0.23;
  double l_step_frac = 0.005;
  double sigma = 0.0;
  int realizations = 200;
  std::string output = "efficiency_map.csv";
};

void to_json(json& j, const EfficiencyMapOptions& o) {
  j = json{{"phys", o.phys},
           {"n", o.n},
           {"delta_min", o.delta_min},
           {"delta_max", o.delta_max},
           {"delta_step", o.delta_step},
           {"l_min_frac", o.l_min_frac},
           {"l_max_frac", o.l_max_frac},
           {"l_step_frac", o.l_step_frac},
           {"sigma", o.sigma},
           {"realizations", o.realizations},
           {"output", o.output}};
}

void from_json(const json& j, EfficiencyMapOptions& o) {
  j.at("phys").get_to(o.phys);
  j.at("n").get_to(o.n);
  j.at("delta_min").get_to(o.delta_min);
  j.at("delta_max").get_to(o.delta_max);
  j.at("delta_step").get_to(o.delta_step);
  j.at("l_min_frac").get_to(o.l_min_frac);
  j.at("l_max_frac").get_to(o.l_max_frac);
  j.at("l_step_frac").get_to(o.l_step_frac);
  j.at("sigma").get_to(o.sigma);
  j.at("realizations").get_to(o.realizations);
  j.at("output").get_to(o.output);
}

void run_efficiency_map(const EfficiencyMapOptions& o, bool write_manifest = true) {
  with_manifest("efficiency-map", json(o), o.output, write_manifest, [&] {
    const std::vector<double> deltas =
        wqed::delta_grid(o.delta_min, o.delta_max, o.delta_step);
    const std::vector<double> l_fracs =
        wqed::delta_grid(o.l_min_frac, o.l_max_frac, o.l_step_frac);

    wqed::CsvWriter csv(o.output);
    write_common_comments(csv, "wqed.efficiency_map.v1", o.phys,
                          o.sigma > 0.0 ? o.realizations : 1);
    csv.comment("n=" + std::to_string(o.n) + " sigma_fraction=" + wqed::format_double(o.sigma));
    csv.header({"delta", "L_over_lambda", "xi_mean", "xi_stderr"});

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const double frac : l_fracs) {
      const double spacing = frac * o.phys.lambda_e_nm;
      if (o.sigma <= 0.0) {
        wqed::ScatterProblem problem;
        problem.chain = wqed::build_periodic_chain(o.n, spacing, o.phys.emitter());
        problem.units = o.phys.units();
        problem.ddi = wqed::ddi_matrix(problem.chain, problem.units);
        problem.mode = o.phys.chirality();
        const wqed::Spectrum spec = wqed::spectrum(problem, deltas);
        for (std::size_t i = 0; i < deltas.size(); ++i)
          csv.row({deltas[i], frac, spec.xi[i], nan});
      } else {
        wqed::DisorderSpec dspec;
        dspec.mean_spacing_nm = spacing;
        dspec.sigma_fraction = o.sigma;
        dspec.master_seed = o.phys.seed;
        wqed::EnsembleConfig config;
        config.n_realizations = o.realizations;
        config.threads = o.phys.threads;
        const wqed::EnsembleStats stats =
            wqed::run_ensemble(dspec, o.n, o.phys.emitter(), o.phys.chirality(), o.phys.units(),
                               deltas, config);
        for (std::size_t i = 0; i < deltas.size(); ++i)
          csv.row({deltas[i], frac, stats.xi.mean[i], stats.xi.sem[i]});
      }
    }
    csv.close();
  });
}

// ---------------------------------------------------------------------------
// localization: transmission-based length estimates on a (n, sigma) grid.

struct LocalizationOptions {
  PhysicsOptions phys;
  std::vector<int> n_list{2, 5, 10, 20};
  std::vector<double> delta_list{30.0, 80.0, 150.0, 200.0};
  std::vector<double> sigma_list{0.05, 0.1, 0.15, 0.2};
  int realizations = 1000;
  std::string output = "localization.csv";
};

void to_json(json& j, const LocalizationOptions& o) {
  j = json{{"phys", o.phys},
           {"n_list", o.n_list},
           {"delta_list", o.delta_list},
           {"sigma_list", o.sigma_list},
           {"realizations", o.realizations},
           {"output", o.output}};
}

void from_json(const json& j, LocalizationOptions& o) {
  j.at("phys").get_to(o.phys);
  j.at("n_list").get_to(o.n_list);
  j.at("delta_list").get_to(o.delta_list);
  j.at("sigma_list").get_to(o.sigma_list);
  j.at("realizations").get_to(o.realizations);
  j.at("output").get_to(o.output);
}

void run_localization(const LocalizationOptions& o, bool write_manifest = true) {
  with_manifest("localization", json(o), o.output, write_manifest, [&] {
    wqed::DisorderSpec spec;
    spec.mean_spacing_nm = o.phys.resolved_spacing();
    spec.master_seed = o.phys.seed;
    wqed::EnsembleConfig config;
    config.n_realizations = o.realizations;
    config.threads = o.phys.threads;

    std::vector<double> deltas = o.delta_list;
    const auto points = wqed::localization_sweep(spec, o.phys.emitter(), o.phys.chirality(),
                                                 o.phys.units(), o.n_list, deltas, o.sigma_list,
                                                 config);

    wqed::CsvWriter csv(o.output);
    write_common_comments(csv, "wqed.localization.v1", o.phys, o.realizations);
    csv.header({"n", "sigma_fraction", "delta", "t_mean", "t_stderr", "loc_length",
                "loc_length_err", "loc_length_conv", "loc_length_conv_err"});
    for (const auto& p : points) {
      csv.row_mixed({std::to_string(p.n), wqed::format_double(p.sigma_fraction),
                     wqed::format_double(p.delta), wqed::format_double(p.t_mean),
                     wqed::format_double(p.t_sem), wqed::format_double(p.loc_length),
                     wqed::format_double(p.loc_length_err), wqed::format_double(p.loc_conv),
                     wqed::format_double(p.loc_conv_err)});
    }
    csv.close();
  });
}

// ---------------------------------------------------------------------------
// validate: self-check suites with a machine-readable report.

struct ValidateOptions {
  std::uint64_t seed = 42;
  std::string output = "validate_report.json";
};

void to_json(json& j, const ValidateOptions& o) {
  j = json{{"seed", o.seed}, {"output", o.output}};
}

void from_json(const json& j, ValidateOptions& o) {
  j.at("seed").get_to(o.seed);
  j.at("output").get_to(o.output);
}

int run_validate(const ValidateOptions& o, bool write_manifest = true) {
  int exit_code = 0;
  with_manifest("validate", json(o), o.output, write_manifest, [&] {
    const auto suites = wqed::run_all_suites(o.seed);

    json report;
    report["schema"] = "wqed.validate_report.v1";
    report["tool_version"] = wqed::kToolVersion;
    report["seed"] = o.seed;
    report["suites"] = json::array();
    bool all_passed = true;
    for (const auto& suite : suites) {
      std::cout << (suite.passed() ? "[PASS] " : "[FAIL] ") << suite.name << ": " << suite.cases
                << " cases, " << suite.failures << " failures, max error " << suite.max_error
                << " (tolerance " << suite.tolerance << ")\n";
      report["suites"].push_back(json{{"name", suite.name},
                                      {"cases", suite.cases},
                                      {"failures", suite.failures},
                                      {"max_error", suite.max_error},
                                      {"tolerance", suite.tolerance},
                                      {"passed", suite.passed()}});
      all_passed = all_passed && suite.passed();
    }
    report["passed"] = all_passed;

    std::ofstream out(o.output);
    if (!out) throw std::runtime_error("validate: cannot open " + o.output);
    out << report.dump(2) << "\n";

    std::cout << (all_passed ? "all suites passed" : "validation FAILED") << "\n";
    exit_code = all_passed ? 0 : 3;
  });
  return exit_code;
}

// ---------------------------------------------------------------------------

int run_rerun(const std::string& manifest_path, const std::string& output_override,
              int threads_override) {
  const wqed::RunManifest manifest = wqed::RunManifest::load(manifest_path);
  json params = manifest.parameters;
  if (!output_override.empty()) params["output"] = output_override;
  if (threads_override >= 0 && params.contains("phys"))
    params["phys"]["threads"] = threads_override;

  // Reruns regenerate the recorded outputs byte for byte; they do not write a
  // fresh manifest unless redirected to a new output path.
  const bool fresh_manifest = !output_override.empty();
  if (manifest.subcommand == "ddi-curve") {
    run_ddi_curve(params.get<DdiCurveOptions>(), fresh_manifest);
  } else if (manifest.subcommand == "spectrum") {
    run_spectrum(params.get<SpectrumOptions>(), fresh_manifest);
  } else if (manifest.subcommand == "pmax") {
    run_pmax(params.get<PmaxOptions>(), fresh_manifest);
  } else if (manifest.subcommand == "efficiency-map") {
    run_efficiency_map(params.get<EfficiencyMapOptions>(), fresh_manifest);
  } else if (manifest.subcommand == "localization") {
    run_localization(params.get<LocalizationOptions>(), fresh_manifest);
  } else if (manifest.subcommand == "validate") {
    return run_validate(params.get<ValidateOptions>(), fresh_manifest);
  } else {
    throw std::runtime_error("rerun: unknown subcommand " + manifest.subcommand);
  }
  return 0;
}

}  // namespace wqedcli

int main(int argc, char** argv) {
  CLI::App app{"Single-photon router: emitter chains coupled to two waveguides"};
  app.set_version_flag("--version", wqed::kToolVersion);
  app.set_config("--config", "", "Read options from a key=value config file");
  app.require_subcommand(1);

  wqedcli::DdiCurveOptions ddi_opts;
  auto* ddi_cmd = app.add_subcommand("ddi-curve", "Pairwise coupling versus emitter separation");
  wqedcli::add_physics_options(ddi_cmd, ddi_opts.phys);
  ddi_cmd->add_option("--l-min", ddi_opts.l_min, "Smallest separation (nm)")->capture_default_str();
  ddi_cmd->add_option("--l-max", ddi_opts.l_max, "Largest separation (nm)")->capture_default_str();
  ddi_cmd->add_option("--l-step", ddi_opts.l_step, "Separation grid step (nm)")
      ->capture_default_str();
  ddi_cmd->add_option("--sigma", ddi_opts.sigma, "Spacing noise as a fraction of the separation")
      ->capture_default_str();
  ddi_cmd->add_option("--realizations", ddi_opts.realizations, "Disorder draws per grid point")
      ->capture_default_str();
  ddi_cmd->add_option("-o,--output", ddi_opts.output, "Output CSV path")->capture_default_str();

  wqedcli::SpectrumOptions spec_opts;
  auto* spec_cmd =
      app.add_subcommand("spectrum", "Port probabilities over a detuning grid");
  wqedcli::add_physics_options(spec_cmd, spec_opts.phys);
  spec_cmd->add_option("--n", spec_opts.n, "Number of emitters")->capture_default_str();
  spec_cmd->add_option("--delta-min", spec_opts.delta_min, "Lowest detuning (gamma0)")
      ->capture_default_str();
  spec_cmd->add_option("--delta-max", spec_opts.delta_max, "Highest detuning (gamma0)")
      ->capture_default_str();
  spec_cmd->add_option("--delta-step", spec_opts.delta_step, "Detuning grid step (gamma0)")
      ->capture_default_str();
  spec_cmd->add_option("--sigma", spec_opts.sigma, "Spacing disorder fraction")
      ->capture_default_str();
  spec_cmd->add_option("--realizations", spec_opts.realizations, "Disorder realizations")
      ->capture_default_str();
  spec_cmd->add_option("-o,--output", spec_opts.output, "Output CSV path")->capture_default_str();

  wqedcli::PmaxOptions pmax_opts;
  auto* pmax_cmd = app.add_subcommand("pmax", "Peak top-guide transmission per chain size");
  wqedcli::add_physics_options(pmax_cmd, pmax_opts.phys);
  pmax_cmd->add_option("--n-list", pmax_opts.n_list, "Chain sizes (default 1..20)")
      ->delimiter(',');
  pmax_cmd->add_option("--delta-min", pmax_opts.delta_min, "Scan start (gamma0)")
      ->capture_default_str();
  pmax_cmd->add_option("--delta-max", pmax_opts.delta_max, "Scan end (gamma0)")
      ->capture_default_str();
  pmax_cmd->add_option("--coarse-step", pmax_opts.coarse_step, "Coarse scan step (gamma0)")
      ->capture_default_str();
  pmax_cmd->add_option("--refine-tol", pmax_opts.refine_tol,
                       "Golden-section window tolerance (gamma0)")
      ->capture_default_str();
  pmax_cmd->add_option("--sigma", pmax_opts.sigma, "Spacing disorder fraction (0: periodic)")
      ->capture_default_str();
  pmax_cmd->add_option("--realizations", pmax_opts.realizations, "Disorder realizations")
      ->capture_default_str();
  pmax_cmd->add_option("-o,--output", pmax_opts.output, "Output CSV path")->capture_default_str();

  wqedcli::EfficiencyMapOptions map_opts;
  auto* map_cmd =
      app.add_subcommand("efficiency-map", "Routing efficiency over detuning and spacing");
  wqedcli::add_physics_options(map_cmd, map_opts.phys);
  map_cmd->add_option("--n", map_opts.n, "Number of emitters")->capture_default_str();
  map_cmd->add_option("--delta-min", map_opts.delta_min, "Lowest detuning (gamma0)")
      ->capture_default_str();
  map_cmd->add_option("--delta-max", map_opts.delta_max, "Highest detuning (gamma0)")
      ->capture_default_str();
  map_cmd->add_option("--delta-step", map_opts.delta_step, "Detuning grid step (gamma0)")
      ->capture_default_str();
  map_cmd->add_option("--l-min", map_opts.l_min_frac, "Smallest spacing (lambda_e units)")
      ->capture_default_str();
  map_cmd->add_option("--l-max", map_opts.l_max_frac, "Largest spacing (lambda_e units)")
      ->capture_default_str();
  map_cmd->add_option("--l-step", map_opts.l_step_frac, "Spacing grid step (lambda_e units)")
      ->capture_default_str();
  map_cmd->add_option("--sigma", map_opts.sigma, "Spacing disorder fraction (0: periodic)")
      ->capture_default_str();
  map_cmd->add_option("--realizations", map_opts.realizations, "Disorder realizations")
      ->capture_default_str();
  map_cmd->add_option("-o,--output", map_opts.output, "Output CSV path")->capture_default_str();

  wqedcli::LocalizationOptions loc_opts;
  auto* loc_cmd =
      app.add_subcommand("localization", "Localization length estimates per chain size");
  wqedcli::add_physics_options(loc_cmd, loc_opts.phys);
  loc_cmd->add_option("--n-list", loc_opts.n_list, "Chain sizes")->delimiter(',');
  loc_cmd->add_option("--delta-list", loc_opts.delta_list, "Fixed detuning per chain size")
      ->delimiter(',');
  loc_cmd->add_option("--sigma-list", loc_opts.sigma_list, "Disorder fractions")->delimiter(',');
  loc_cmd->add_option("--realizations", loc_opts.realizations, "Disorder realizations")
      ->capture_default_str();
  loc_cmd->add_option("-o,--output", loc_opts.output, "Output CSV path")->capture_default_str();

  wqedcli::ValidateOptions val_opts;
  auto* val_cmd = app.add_subcommand("validate", "Run the self-check suites");
  val_cmd->add_option("--seed", val_opts.seed, "Seed for the randomized suites")
      ->capture_default_str();
  val_cmd->add_option("-o,--output", val_opts.output, "JSON report path")->capture_default_str();

  std::string rerun_manifest;
  std::string rerun_output;
  int rerun_threads = -1;
  auto* rerun_cmd = app.add_subcommand("rerun", "Reproduce a run from its manifest");
  rerun_cmd->add_option("manifest", rerun_manifest, "Manifest JSON path")->required();
  rerun_cmd->add_option("-o,--output", rerun_output, "Redirect the output file");
  rerun_cmd->add_option("--threads", rerun_threads, "Override the worker thread count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // help and version exit cleanly, usage errors as 1
  }

  try {
    if (ddi_cmd->parsed()) {
      wqedcli::run_ddi_curve(ddi_opts);
    } else if (spec_cmd->parsed()) {
      wqedcli::run_spectrum(spec_opts);
    } else if (pmax_cmd->parsed()) {
      wqedcli::run_pmax(pmax_opts);
    } else if (map_cmd->parsed()) {
      wqedcli::run_efficiency_map(map_opts);
    } else if (loc_cmd->parsed()) {
      wqedcli::run_localization(loc_opts);
    } else if (val_cmd->parsed()) {
      return wqedcli::run_validate(val_opts);
    } else if (rerun_cmd->parsed()) {
      return wqedcli::run_rerun(rerun_manifest, rerun_output, rerun_threads);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
