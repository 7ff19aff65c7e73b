#include "tmodel/experiment.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "tmodel/errors.hpp"
#include "tmodel/initial_conditions.hpp"
#include "tmodel/io.hpp"
#include "tmodel/spectral_ops.hpp"

#ifndef TMODEL_VERSION
#define TMODEL_VERSION "unknown"
#endif

namespace tmodel {

namespace fs = std::filesystem;

std::string code_version() { return TMODEL_VERSION; }

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["config"] = config.to_json();
  j["code_version"] = code_version;
  j["wall_seconds"] = wall_seconds;
  j["t_reached"] = t_reached;
  j["initial_energy"] = initial_energy;
  j["final_energy"] = final_energy;
  j["relative_energy_drop"] = relative_energy_drop;
  if (fit) {
    j["fit"] = {{"exponent", fit->exponent},
                {"standard_error", fit->standard_error},
                {"window", {fit->window.lo, fit->window.hi}},
                {"n_points", fit->n_points},
                {"source", "energy.csv"}};
  } else {
    j["fit"] = nullptr;
  }
  if (fit_error) j["fit_error"] = *fit_error;
  auto peaks_json = nlohmann::json::array();
  for (const auto& p : peaks) peaks_json.push_back({{"t", p.t}, {"rate", p.value}, {"prominence", p.prominence}});
  j["decay_rate_peaks"] = {{"source", "decay_rate.csv"},
                           {"relative_prominence", config.peak_prominence},
                           {"peaks", peaks_json}};
  j["structure"] = {{"max_divergence_residual", max_divergence_residual},
                    {"max_reality_residual", max_reality_residual}};
  j["steps"] = {{"accepted", steps}, {"rejected", rejected_steps}, {"rhs_evaluations", rhs_evaluations}};
  j["notes"] = notes;
  j["failure"] = failure ? nlohmann::json(*failure) : nlohmann::json(nullptr);
  j["files"] = files;
  return j;
}

SpectralField make_initial_condition(const RunConfig& config, const PartitionPtr& partition,
                                     std::vector<std::string>* notes) {
  auto note = [&](const std::string& s) {
    if (notes) notes->push_back(s);
  };
  if (config.ic == "sine") {
    note("initial condition: u(x) = sin x");
    return init_burgers_sine(partition);
  }
  if (config.ic == "taylor-green") {
    note("initial condition: Taylor-Green vortex");
    return init_taylor_green(partition);
  }
  if (config.ic == "random") {
    RandomFieldReport report;
    const auto profile = SpectrumProfile::exponential(config.seed);
    SpectralField v = init_random_isotropic(partition, profile, &report);
    std::ostringstream os;
    os << "initial condition: random isotropic, E(k) = " << profile.description << ", seed " << config.seed
       << "; unit-width shells s-1/2 <= |k| < s+1/2 intersected with F, shell energy 1/2 sum |v_k|^2 = E(s), "
       << report.shells.size() << " shells populated";
    note(os.str());
    for (const auto& w : report.warnings) note("warning: " + w);
    if (report.unassigned_energy > 0.0) note("unassigned energy: " + std::to_string(report.unassigned_energy));
    return v;
  }
  if (config.ic.rfind("file:", 0) == 0) {
    const fs::path path = config.ic.substr(5);
    SpectralField raw = read_snapshot(path);
    if (!(raw.partition() == *partition) || raw.components() != partition->dim())
      throw ConfigError("snapshot " + path.string() + " does not match system " + to_string(config.system) +
                        " with n = " + std::to_string(config.n));
    SpectralField v(partition);
    for (int c = 0; c < v.components(); ++c)
      for (std::size_t i = 0; i < partition->volume(); ++i) v.at(c, i) = raw.at(c, i);
    if (v.max_abs_outside(ModeSet::Resolved) != 0.0)
      throw ConfigError("snapshot " + path.string() + " has coefficients outside the resolved set");
    note("initial condition: imported from " + path.string());
    return v;
  }
  throw ConfigError("unknown initial condition '" + config.ic + "'");
}

ExperimentResult run_experiment(const RunConfig& config, std::ostream* progress) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  set_fft_threads(config.threads);

  const auto partition = ModePartition::build(dimension_of(config.system), config.n);
  ExperimentResult result;
  RunManifest& m = result.manifest;
  m.config = config;
  m.code_version = code_version();
  const SpectralField v0 = make_initial_condition(config, partition, &m.notes);
  const RhsEvaluator rhs(config.system, config.closure, partition);

  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) throw IoError("cannot create output directory " + config.output_dir + ": " + ec.message());
  const fs::path dir = config.output_dir;
  if (config.snapshot) {
    write_snapshot(dir / "initial.bin", v0, config.t0);
    m.files.push_back("initial.bin");
  }

  IntegrateParams params;
  params.scheme = config.scheme;
  params.h = config.h;
  params.rkf.tol = config.tol;
  params.midpoint.solver_tol = config.solver_tol;
  params.midpoint.max_iter = config.max_iter;
  const auto times = config.sample_spacing == SampleSpacing::Log
                         ? log_sample_times(config.t0, config.t_end, config.sample_count)
                         : linear_sample_times(config.t0, config.t_end, config.sample_count);

  auto last_report = start;
  auto on_sample = [&](const Sample& s) {
    if (!progress || config.progress_interval <= 0.0) return;
    const auto now = std::chrono::steady_clock::now();
    if (std::chrono::duration<double>(now - last_report).count() < config.progress_interval) return;
    last_report = now;
    *progress << std::setprecision(6) << "[" << (config.preset.empty() ? "run" : config.preset) << "] t = " << s.t
              << " / " << config.t_end << "  E = " << s.energy << "  dE/dt = " << s.energy_rate << '\n';
  };

  result.trajectory = integrate(rhs, v0, config.t0, config.t_end, params, times, on_sample);
  const Trajectory& tr = result.trajectory;

  write_series_csv(dir / "energy.csv", tr.energy.samples());
  write_series_csv(dir / "decay_rate.csv", tr.decay_rate.magnitude());
  m.files.push_back("energy.csv");
  m.files.push_back("decay_rate.csv");
  if (config.snapshot) {
    write_snapshot(dir / "final.bin", tr.final_state, tr.t_reached);
    m.files.push_back("final.bin");
  }

  m.t_reached = tr.t_reached;
  m.failure = tr.failure;
  m.steps = tr.steps;
  m.rejected_steps = tr.rejected;
  m.rhs_evaluations = tr.rhs_evaluations;
  m.max_divergence_residual = tr.max_divergence_residual;
  m.max_reality_residual = tr.max_reality_residual;
  if (!tr.energy.empty()) {
    m.initial_energy = tr.energy.samples().front().value;
    m.final_energy = tr.energy.samples().back().value;
    if (m.initial_energy > 0.0) m.relative_energy_drop = relative_energy_drop(tr.energy);
  }
  if (tr.decay_rate.size() >= 3) m.peaks = find_rate_peaks(tr.decay_rate, config.peak_prominence);

  TimeWindow window = config.fit_window.value_or(default_fit_window(config.system, config.t_end));
  window.hi = std::min(window.hi, tr.t_reached);
  try {
    if (!(window.hi > window.lo)) throw FitError("fit window lies beyond the time reached");
    m.fit = fit_power_law(tr.energy, window);
  } catch (const FitError& e) {
    m.fit_error = e.what();
  }

  m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  m.files.push_back("manifest.json");
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  if (!out) throw IoError("cannot write " + (dir / "manifest.json").string());
  out << m.to_json().dump(2) << '\n';
  return result;
}

}  // namespace tmodel
