#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tmodel/analysis.hpp"
#include "tmodel/dynamics.hpp"
#include "tmodel/integrators.hpp"

namespace tmodel {

enum class SampleSpacing { Log, Linear };

/// Everything needed to reproduce one run. Field names double as CLI flags
/// (`t_end` ↔ `--t-end`) and JSON keys.
struct RunConfig {
  std::string preset;
  SystemKind system = SystemKind::Burgers1D;
  Closure closure = Closure::TModel;
  int n = 16;
  /// "sine", "random", "taylor-green", or "file:<snapshot path>".
  std::string ic = "sine";
  std::uint64_t seed = 20070101;
  double t0 = 0.0;
  double t_end = 100.0;
  Scheme scheme = Scheme::Rkf45;
  double tol = 1e-10;
  double h = 1e-3;
  double solver_tol = 1e-12;
  int max_iter = 50;
  int sample_count = 15000;
  SampleSpacing sample_spacing = SampleSpacing::Log;
  std::optional<TimeWindow> fit_window;
  double peak_prominence = 0.05;
  std::string output_dir = "out";
  bool snapshot = false;
  int threads = 1;
  /// Seconds between progress lines on stderr; 0 disables them.
  double progress_interval = 10.0;

  /// Throws ConfigError naming the first offending field.
  void validate() const;
  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
  /// Keys absent from `j` keep the values already in `base`.
  static RunConfig from_json(const nlohmann::json& j, RunConfig base);
};

std::string to_string(SampleSpacing s);
SampleSpacing parse_spacing(const std::string& s);
/// "lo:hi" → window.
TimeWindow parse_window(const std::string& s);

/// burgers-n32, euler2d-n32, euler3d-n32, euler3d-n16-short.
RunConfig make_preset(const std::string& name);
std::vector<std::string> preset_names();

/// Default fit window per system when the config leaves it open.
TimeWindow default_fit_window(SystemKind system, double t_end);

}  // namespace tmodel
