#include "tmodel/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tmodel/errors.hpp"

namespace tmodel {

std::string to_string(SampleSpacing s) { return s == SampleSpacing::Log ? "log" : "linear"; }

SampleSpacing parse_spacing(const std::string& s) {
  if (s == "log") return SampleSpacing::Log;
  if (s == "linear") return SampleSpacing::Linear;
  throw ConfigError("unknown sample spacing '" + s + "' (expected log or linear)");
}

TimeWindow parse_window(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw ConfigError("window '" + s + "' must look like lo:hi");
  try {
    std::size_t used = 0;
    const double lo = std::stod(s.substr(0, colon), &used);
    const std::string rest = s.substr(colon + 1);
    const double hi = std::stod(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("trailing characters");
    if (!(hi > lo) || !(lo > 0.0)) throw ConfigError("window '" + s + "' needs 0 < lo < hi");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw ConfigError("window '" + s + "' is not a pair of numbers");
  }
}

void RunConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("config: " + what); };
  if (n < 1) fail("n must be >= 1");
  if (!(t_end > t0)) fail("t_end must exceed t0");
  if (t0 < 0.0) fail("t0 must be nonnegative (the memory term grows with t from 0)");
  if (!(tol > 0.0)) fail("tol must be positive");
  if (!(h > 0.0)) fail("h must be positive");
  if (!(solver_tol > 0.0)) fail("solver_tol must be positive");
  if (max_iter < 1) fail("max_iter must be >= 1");
  if (sample_count < 1) fail("sample_count must be >= 1");
  if (!(peak_prominence > 0.0)) fail("peak_prominence must be positive");
  if (threads < 1) fail("threads must be >= 1");
  if (progress_interval < 0.0) fail("progress_interval must be nonnegative");
  if (output_dir.empty()) fail("output_dir must be set");
  if (fit_window && !(fit_window->hi > fit_window->lo && fit_window->lo > 0.0))
    fail("fit_window needs 0 < lo < hi");

  const bool from_file = ic.rfind("file:", 0) == 0;
  if (from_file) return;
  switch (system) {
    case SystemKind::Burgers1D:
      if (ic != "sine") fail("burgers1d runs from the 'sine' initial condition");
      break;
    case SystemKind::Euler2D:
      if (ic != "random") fail("euler2d runs from the 'random' initial condition");
      break;
    case SystemKind::Euler3D:
      if (ic != "taylor-green" && ic != "random")
        fail("euler3d runs from the 'taylor-green' or 'random' initial condition");
      break;
  }
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j{
      {"preset", preset},
      {"system", to_string(system)},
      {"closure", to_string(closure)},
      {"n", n},
      {"ic", ic},
      {"seed", seed},
      {"t0", t0},
      {"t_end", t_end},
      {"scheme", to_string(scheme)},
      {"tol", tol},
      {"h", h},
      {"solver_tol", solver_tol},
      {"max_iter", max_iter},
      {"sample_count", sample_count},
      {"sample_spacing", to_string(sample_spacing)},
      {"peak_prominence", peak_prominence},
      {"output_dir", output_dir},
      {"snapshot", snapshot},
      {"threads", threads},
      {"progress_interval", progress_interval},
  };
  if (fit_window)
    j["fit_window"] = {fit_window->lo, fit_window->hi};
  else
    j["fit_window"] = nullptr;
  return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) { return from_json(j, RunConfig{}); }

RunConfig RunConfig::from_json(const nlohmann::json& j, RunConfig c) {
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  static const std::vector<std::string> known{
      "preset", "system", "closure", "n", "ic", "seed", "t0", "t_end", "scheme", "tol", "h",
      "solver_tol", "max_iter", "sample_count", "sample_spacing", "fit_window", "peak_prominence",
      "output_dir", "snapshot", "threads", "progress_interval"};
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("config: unknown key '" + key + "'");
  try {
    if (j.contains("preset") && !j["preset"].get<std::string>().empty())
      c = make_preset(j["preset"].get<std::string>());
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key) && !j[key].is_null()) field = j[key].get<std::decay_t<decltype(field)>>();
    };
    if (j.contains("system")) c.system = parse_system(j["system"].get<std::string>());
    if (j.contains("closure")) c.closure = parse_closure(j["closure"].get<std::string>());
    if (j.contains("scheme")) c.scheme = parse_scheme(j["scheme"].get<std::string>());
    if (j.contains("sample_spacing")) c.sample_spacing = parse_spacing(j["sample_spacing"].get<std::string>());
    get("n", c.n);
    get("ic", c.ic);
    get("seed", c.seed);
    get("t0", c.t0);
    get("t_end", c.t_end);
    get("tol", c.tol);
    get("h", c.h);
    get("solver_tol", c.solver_tol);
    get("max_iter", c.max_iter);
    get("sample_count", c.sample_count);
    get("peak_prominence", c.peak_prominence);
    get("output_dir", c.output_dir);
    get("snapshot", c.snapshot);
    get("threads", c.threads);
    get("progress_interval", c.progress_interval);
    if (j.contains("fit_window")) {
      const auto& w = j["fit_window"];
      if (w.is_null())
        c.fit_window.reset();
      else if (w.is_string())
        c.fit_window = parse_window(w.get<std::string>());
      else if (w.is_array() && w.size() == 2)
        c.fit_window = TimeWindow{w[0].get<double>(), w[1].get<double>()};
      else
        throw ConfigError("config: fit_window must be [lo, hi] or \"lo:hi\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

std::vector<std::string> preset_names() {
  return {"burgers-n32", "euler2d-n32", "euler3d-n32", "euler3d-n16-short"};
}

RunConfig make_preset(const std::string& name) {
  RunConfig c;
  c.preset = name;
  if (name == "burgers-n32") {
    c.system = SystemKind::Burgers1D;
    c.n = 16;
    c.ic = "sine";
    c.t_end = 100.0;
    c.fit_window = TimeWindow{5.0, 100.0};
  } else if (name == "euler2d-n32") {
    c.system = SystemKind::Euler2D;
    c.n = 16;
    c.ic = "random";
    c.t_end = 100.0;
    c.fit_window = TimeWindow{1.0, 100.0};
  } else if (name == "euler3d-n32") {
    c.system = SystemKind::Euler3D;
    c.n = 16;
    c.ic = "taylor-green";
    c.t_end = 100.0;
    c.fit_window = TimeWindow{10.0, 100.0};
  } else if (name == "euler3d-n16-short") {
    c.system = SystemKind::Euler3D;
    c.n = 8;
    c.ic = "taylor-green";
    c.t_end = 12.0;
    c.sample_count = 600;
    c.sample_spacing = SampleSpacing::Linear;
    c.fit_window.reset();
  } else {
    std::ostringstream os;
    os << "unknown preset '" << name << "' (available:";
    for (const auto& p : preset_names()) os << ' ' << p;
    os << ')';
    throw ConfigError(os.str());
  }
  c.output_dir = "out/" + name;
  return c;
}

TimeWindow default_fit_window(SystemKind system, double t_end) {
  TimeWindow w{5.0, 100.0};
  switch (system) {
    case SystemKind::Burgers1D: w = {5.0, 100.0}; break;
    case SystemKind::Euler2D: w = {1.0, 100.0}; break;
    case SystemKind::Euler3D: w = {10.0, 100.0}; break;
  }
  w.hi = std::min(w.hi, t_end);
  return w;
}

}  // namespace tmodel
