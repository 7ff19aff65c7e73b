// Command-line front end: run experiments, check identities, refit series.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "tmodel/errors.hpp"
#include "tmodel/experiment.hpp"
#include "tmodel/io.hpp"

using namespace tmodel;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

// Every RunConfig field as an optional override, so that unset flags leave
// preset and config-file values alone.
struct RunFlags {
  std::string preset, config_file;
  std::optional<std::string> system, closure, ic, scheme, sample_spacing, fit_window, output_dir;
  std::optional<int> n, max_iter, sample_count, threads;
  std::optional<std::uint64_t> seed;
  std::optional<double> t0, t_end, tol, h, solver_tol, peak_prominence, progress_interval;
  bool snapshot = false;
};

void add_run_flags(CLI::App& cmd, RunFlags& f) {
  cmd.set_help_flag("--help", "Print this help message and exit");  // frees -h for the step size
  auto* preset = cmd.add_option("--preset", f.preset, "Named experiment (see `presets`)");
  cmd.add_option("--config", f.config_file, "JSON config file; flags override its values")->excludes(preset);
  cmd.add_option("--system", f.system, "burgers1d | euler2d | euler3d");
  cmd.add_option("--closure", f.closure, "galerkin | tmodel");
  cmd.add_option("--n", f.n, "Resolved cutoff: modes 0 < |k|_inf <= n");
  cmd.add_option("--ic", f.ic, "sine | random | taylor-green | file:<snapshot>");
  cmd.add_option("--seed", f.seed, "Seed for the random initial condition");
  cmd.add_option("--t0", f.t0, "Start time");
  cmd.add_option("--t-end", f.t_end, "End time");
  cmd.add_option("--scheme", f.scheme, "rkf45 | implicit-midpoint");
  cmd.add_option("--tol", f.tol, "RKF45 absolute error tolerance");
  cmd.add_option("--h", f.h, "Initial (RKF45) or fixed (implicit midpoint) step");
  cmd.add_option("--solver-tol", f.solver_tol, "Implicit midpoint fixed-point tolerance");
  cmd.add_option("--max-iter", f.max_iter, "Implicit midpoint iteration cap");
  cmd.add_option("--sample-count", f.sample_count, "Number of diagnostic samples");
  cmd.add_option("--sample-spacing", f.sample_spacing, "log | linear");
  cmd.add_option("--fit-window", f.fit_window, "Power-law fit window lo:hi");
  cmd.add_option("--peak-prominence", f.peak_prominence, "Relative prominence for decay-rate peaks");
  cmd.add_option("--output-dir", f.output_dir, "Output directory (default $TMODEL_OUTPUT_DIR or ./out)");
  cmd.add_flag("--snapshot", f.snapshot, "Also write initial and final spectral snapshots");
  cmd.add_option("--threads", f.threads, "Cap on FFT threads");
  cmd.add_option("--progress-interval", f.progress_interval, "Seconds between progress lines; 0 silences");
}

RunConfig build_config(const RunFlags& f) {
  RunConfig c;
  bool dir_given = false;
  if (!f.preset.empty()) c = make_preset(f.preset);
  if (!f.config_file.empty()) {
    std::ifstream in(f.config_file);
    if (!in) throw ConfigError("cannot open config file " + f.config_file);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config file " + f.config_file + ": " + e.what());
    }
    c = RunConfig::from_json(j, c);
    dir_given = j.contains("output_dir");
  }
  if (f.system) c.system = parse_system(*f.system);
  if (f.closure) c.closure = parse_closure(*f.closure);
  if (f.ic) c.ic = *f.ic;
  if (f.scheme) c.scheme = parse_scheme(*f.scheme);
  if (f.sample_spacing) c.sample_spacing = parse_spacing(*f.sample_spacing);
  if (f.fit_window) c.fit_window = parse_window(*f.fit_window);
  if (f.n) c.n = *f.n;
  if (f.max_iter) c.max_iter = *f.max_iter;
  if (f.sample_count) c.sample_count = *f.sample_count;
  if (f.threads) c.threads = *f.threads;
  if (f.seed) c.seed = *f.seed;
  if (f.t0) c.t0 = *f.t0;
  if (f.t_end) c.t_end = *f.t_end;
  if (f.tol) c.tol = *f.tol;
  if (f.h) c.h = *f.h;
  if (f.solver_tol) c.solver_tol = *f.solver_tol;
  if (f.peak_prominence) c.peak_prominence = *f.peak_prominence;
  if (f.progress_interval) c.progress_interval = *f.progress_interval;
  if (f.snapshot) c.snapshot = true;
  if (f.output_dir) {
    c.output_dir = *f.output_dir;
  } else if (!dir_given) {
    if (const char* root = std::getenv("TMODEL_OUTPUT_DIR"); root && *root)
      c.output_dir = c.preset.empty() ? std::string(root) : std::string(root) + "/" + c.preset;
  }
  c.validate();
  return c;
}

int cmd_run(const RunFlags& flags) {
  const RunConfig config = build_config(flags);
  const ExperimentResult r = run_experiment(config, &std::cerr);
  const RunManifest& m = r.manifest;
  std::printf("output      %s\n", config.output_dir.c_str());
  std::printf("t reached   %.17g of %.17g\n", m.t_reached, config.t_end);
  std::printf("energy      %.10g -> %.10g (relative drop %.4e)\n", m.initial_energy, m.final_energy,
              m.relative_energy_drop);
  if (m.fit)
    std::printf("fit         E ~ t^%.5f +- %.2e on [%g, %g], %d points\n", m.fit->exponent, m.fit->standard_error,
                m.fit->window.lo, m.fit->window.hi, m.fit->n_points);
  else if (m.fit_error)
    std::printf("fit         unavailable: %s\n", m.fit_error->c_str());
  for (const auto& p : m.peaks)
    std::printf("peak        t = %.6g  |dE/dt| = %.6g  prominence %.3g\n", p.t, p.value, p.prominence);
  std::printf("steps       %ld accepted, %ld rejected, %ld rhs evaluations, %.1f s\n", m.steps, m.rejected_steps,
              m.rhs_evaluations, m.wall_seconds);
  if (m.failure) {
    std::fprintf(stderr, "integration stopped early: %s\n", m.failure->c_str());
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_verify(const VerifyOptions& options) {
  bool all = true;
  for (const auto& c : verify_identities(options)) {
    std::printf("%s  %-62s residual %.3e  tol %.1e\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.residual,
                c.tolerance);
    all = all && c.pass;
  }
  return all ? kExitOk : kExitRuntime;
}

int cmd_fit(const std::string& input, const std::string& window_text, bool raw) {
  const TimeWindow window = parse_window(window_text);
  EnergySeries series;
  for (const auto& s : read_series_csv(input)) series.push(s.t, s.value);
  FitOptions options;
  options.log_resample = !raw;
  const PowerLawFit fit = fit_power_law(series, window, options);
  std::printf("exponent        %.10g\n", fit.exponent);
  std::printf("standard_error  %.3e\n", fit.standard_error);
  std::printf("intercept       %.10g\n", fit.intercept);
  std::printf("window          %g:%g\n", fit.window.lo, fit.window.hi);
  std::printf("points          %d\n", fit.n_points);
  return kExitOk;
}

int cmd_presets() {
  for (const auto& name : preset_names()) {
    const RunConfig c = make_preset(name);
    std::printf("%-18s %s n=%d ic=%s t_end=%g samples=%d (%s)\n", name.c_str(), to_string(c.system).c_str(), c.n,
                c.ic.c_str(), c.t_end, c.sample_count, to_string(c.sample_spacing).c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced-order spectral simulations of Burgers and Euler flows"};
  app.require_subcommand(1);
  app.set_version_flag("--version", code_version());

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "Integrate one configuration and write its series and manifest");
  add_run_flags(*run, run_flags);

  VerifyOptions verify_options;
  auto* verify = app.add_subcommand("verify", "Check conservation and dissipation identities at small n");
  verify->add_option("--seed", verify_options.seed, "Seed for the random test fields");
  verify->add_option("--fields", verify_options.fields, "Random fields per system");
  verify->add_flag("--corrupt-tableau", verify_options.corrupt_tableau)->group("");

  std::string fit_input, fit_window;
  bool fit_raw = false;
  auto* fit = app.add_subcommand("fit", "Fit E ~ t^a to an energy series");
  fit->add_option("--input", fit_input, "CSV with header t,value")->required();
  fit->add_option("--window", fit_window, "Fit window lo:hi")->required();
  fit->add_flag("--no-resample", fit_raw, "Fit the raw samples instead of a log-uniform grid");

  auto* presets = app.add_subcommand("presets", "List the built-in experiments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(run_flags);
    if (*verify) return cmd_verify(verify_options);
    if (*fit) return cmd_fit(fit_input, fit_window, fit_raw);
    if (*presets) return cmd_presets();
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitConfig;
}
