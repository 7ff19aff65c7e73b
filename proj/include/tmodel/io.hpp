#pragma once

#include <filesystem>
#include <vector>

#include "tmodel/series.hpp"
#include "tmodel/spectral_field.hpp"

namespace tmodel {

/// CSV with header `t,value`, 17 significant digits, LF line endings.
void write_series_csv(const std::filesystem::path& path, const std::vector<TimeValue>& samples);
std::vector<TimeValue> read_series_csv(const std::filesystem::path& path);

/// Spectral snapshot: `path` holds little-endian float64 (re, im) pairs for
/// every slot of the dense cube, k from −m to m on each axis with axis 0
/// slowest, components fastest within a mode. `path` + ".json" describes
/// dim, n, m, components and the layout.
void write_snapshot(const std::filesystem::path& path, const SpectralField& field, double t);
SpectralField read_snapshot(const std::filesystem::path& path);

}  // namespace tmodel
