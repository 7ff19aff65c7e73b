#include "tmodel/initial_conditions.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "tmodel/errors.hpp"
#include "tmodel/spectral_ops.hpp"

namespace tmodel {

SpectrumProfile SpectrumProfile::exponential(std::uint64_t seed) {
  return {[](double k) { return std::exp(-2.0 * k); }, "exp(-2k)", seed};
}

SpectrumProfile SpectrumProfile::zero(std::uint64_t seed) {
  return {[](double) { return 0.0; }, "0", seed};
}

SpectralField init_burgers_sine(const PartitionPtr& partition) {
  if (!partition || partition->dim() != 1) throw ConfigError("sine initial condition requires a 1D partition");
  SpectralField v(partition);
  v.at(0, WaveVector{{1, 0, 0}}) = {0.0, -0.5};
  v.at(0, WaveVector{{-1, 0, 0}}) = {0.0, 0.5};
  return v;
}

SpectralField init_taylor_green(const PartitionPtr& partition) {
  if (!partition || partition->dim() != 3)
    throw ConfigError("Taylor-Green initial condition requires a 3D partition");
  SpectralField v(partition);
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1})
      for (int s3 : {-1, 1}) {
        const WaveVector k{{s1, s2, s3}};
        v.at(0, k) = {0.0, -s1 / 8.0};
        v.at(1, k) = {0.0, s2 / 8.0};
      }
  return v;
}

namespace {

// mt19937_64 is fully specified by the standard; the conversion to [0,1) is
// done here so the stream does not depend on the library's distributions.
double uniform01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

}  // namespace

SpectralField init_random_isotropic(const PartitionPtr& partition, const SpectrumProfile& profile,
                                    RandomFieldReport* report) {
  if (!partition || partition->dim() < 2)
    throw ConfigError("random isotropic initial condition requires a 2D or 3D partition");
  if (!profile.shape) throw ConfigError("random isotropic initial condition: empty spectrum profile");
  const auto& part = *partition;
  const int d = part.dim();
  SpectralField v(partition);
  std::mt19937_64 rng(profile.seed);

  std::map<int, std::vector<std::size_t>> shells;
  for (std::size_t i : part.resolved()) {
    const WaveVector k = part.wavevector(i);
    if (!is_canonical(k)) continue;
    CVec3 a{};
    for (int c = 0; c < d; ++c) a[c] = std::polar(1.0, 2.0 * std::numbers::pi * uniform01(rng));
    a = leray_apply(k, a);
    const std::size_t j = part.index(-k);
    for (int c = 0; c < d; ++c) {
      v.at(c, i) = a[c];
      v.at(c, j) = std::conj(a[c]);
    }
    shells[int(std::floor(std::sqrt(double(k.norm_sq())) + 0.5))].push_back(i);
  }

  RandomFieldReport local;
  const int max_shell = int(std::floor(std::sqrt(double(d)) * part.n() + 0.5));
  for (int s = 1; s <= max_shell; ++s) {
    const double target = profile.shape(double(s));
    if (target < 0.0) throw ConfigError("spectrum profile is negative at shell " + std::to_string(s));
    auto it = shells.find(s);
    if (it == shells.end()) {
      if (target > 0.0) {
        std::ostringstream os;
        os << "shell " << s << " has no resolved modes; energy " << target << " left unassigned";
        local.warnings.push_back(os.str());
        local.unassigned_energy += target;
      }
      continue;
    }
    // Canonical modes only; each stands for itself and its conjugate.
    double current = 0.0;
    for (std::size_t i : it->second)
      for (int c = 0; c < d; ++c) current += std::norm(v.at(c, i));
    const double scale = current > 0.0 ? std::sqrt(target / current) : 0.0;
    double realised = 0.0;
    for (std::size_t i : it->second) {
      const std::size_t j = part.index(-part.wavevector(i));
      for (int c = 0; c < d; ++c) {
        v.at(c, i) *= scale;
        v.at(c, j) = std::conj(v.at(c, i));
        realised += std::norm(v.at(c, i));
      }
    }
    local.shells.push_back({s, int(2 * it->second.size()), target, realised});
  }
  if (report) *report = std::move(local);
  return v;
}

SpectralField random_admissible(const PartitionPtr& partition, std::uint64_t seed) {
  const auto& part = *partition;
  const int d = part.dim();
  SpectralField v(partition);
  std::mt19937_64 rng(seed);
  for (std::size_t i : part.resolved()) {
    const WaveVector k = part.wavevector(i);
    if (!is_canonical(k)) continue;
    CVec3 a{};
    for (int c = 0; c < d; ++c) {
      const double re = 2.0 * uniform01(rng) - 1.0;
      const double im = 2.0 * uniform01(rng) - 1.0;
      a[c] = {re, im};
    }
    if (d > 1) a = leray_apply(k, a);
    const std::size_t j = part.index(-k);
    for (int c = 0; c < d; ++c) {
      v.at(c, i) = a[c];
      v.at(c, j) = std::conj(a[c]);
    }
  }
  return v;
}

}  // namespace tmodel
