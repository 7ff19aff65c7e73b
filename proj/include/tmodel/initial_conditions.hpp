#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tmodel/mode_partition.hpp"
#include "tmodel/spectral_field.hpp"

namespace tmodel {

/// Shell energy profile E(k) for random isotropic fields.
struct SpectrumProfile {
  std::function<double(double)> shape;
  std::string description;
  std::uint64_t seed = 0;

  /// E(k) = exp(−2k).
  static SpectrumProfile exponential(std::uint64_t seed);
  static SpectrumProfile zero(std::uint64_t seed = 0);
};

/// What init_random_isotropic did with each shell.
struct ShellReport {
  int shell;
  int modes;
  double target_energy;
  double realised_energy;
};

struct RandomFieldReport {
  std::vector<ShellReport> shells;
  /// Shells with E(k) > 0 but no modes in F; their energy is left unassigned.
  std::vector<std::string> warnings;
  double unassigned_energy = 0.0;
};

/// u(x) = sin x: v₁ = −i/2, v₋₁ = i/2.
SpectralField init_burgers_sine(const PartitionPtr& partition);

/// Random solenoidal field on F. Every mode gets independent uniform random
/// phases per component, is Leray-projected, then each unit-width shell
/// {s − ½ ≤ |k| < s + ½} ∩ F is rescaled so ½ Σ|v_k|² over the shell equals
/// E(s). Deterministic for a given seed.
SpectralField init_random_isotropic(const PartitionPtr& partition, const SpectrumProfile& profile,
                                    RandomFieldReport* report = nullptr);

/// Taylor-Green vortex: u¹ = sin x₁ cos x₂ cos x₃, u² = −cos x₁ sin x₂ cos x₃, u³ = 0.
SpectralField init_taylor_green(const PartitionPtr& partition);

/// Random field on F with reality (and, for dim ≥ 2, incompressibility)
/// imposed; components uniform in the unit square before projection. Used
/// by the identity checks.
SpectralField random_admissible(const PartitionPtr& partition, std::uint64_t seed);

}  // namespace tmodel
