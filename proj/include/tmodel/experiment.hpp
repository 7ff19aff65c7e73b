#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tmodel/analysis.hpp"
#include "tmodel/integrators.hpp"
#include "tmodel/run_config.hpp"

namespace tmodel {

std::string code_version();

struct RunManifest {
  RunConfig config;
  std::string code_version;
  double wall_seconds = 0.0;
  double t_reached = 0.0;
  double initial_energy = 0.0;
  double final_energy = 0.0;
  double relative_energy_drop = 0.0;
  std::optional<PowerLawFit> fit;
  std::optional<std::string> fit_error;
  std::vector<Peak> peaks;
  double max_divergence_residual = 0.0;
  double max_reality_residual = 0.0;
  long steps = 0;
  long rejected_steps = 0;
  long rhs_evaluations = 0;
  /// Initial-condition notes (shell normalisation, unassigned energy).
  std::vector<std::string> notes;
  std::optional<std::string> failure;
  /// Files written, relative to the output directory.
  std::vector<std::string> files;

  nlohmann::json to_json() const;
};

struct ExperimentResult {
  RunManifest manifest;
  Trajectory trajectory;
};

/// Builds the partition, initial condition and evaluator for `config`,
/// integrates, and writes energy.csv, decay_rate.csv, manifest.json (and
/// snapshots when requested) into config.output_dir. Integrator failures
/// do not throw: the partial series are written and manifest.failure is
/// set. Throws ConfigError for invalid configs and IoError for I/O.
ExperimentResult run_experiment(const RunConfig& config, std::ostream* progress = nullptr);

/// Initial condition named by config.ic on the given partition.
SpectralField make_initial_condition(const RunConfig& config, const PartitionPtr& partition,
                                     std::vector<std::string>* notes = nullptr);

struct CheckResult {
  std::string name;
  double residual;
  double tolerance;
  bool pass;
};

struct VerifyOptions {
  std::uint64_t seed = 7;
  int fields = 4;
  /// Test hook: validate a midpoint tableau with a11 = 0.6 flagged
  /// symplectic, which must fail the symplectic-condition check.
  bool corrupt_tableau = false;
};

/// Small-n identity checks: hand values, FFT vs direct oracle, Galerkin
/// conservation, dissipation identity, symplectic condition and the
/// per-step energy equality of implicit midpoint.
std::vector<CheckResult> verify_identities(const VerifyOptions& options = {});

}  // namespace tmodel
