#pragma once

#include <algorithm>

#include "tmodel/spectral_field.hpp"

namespace tmodel::test {

inline double max_diff(const SpectralField& a, const SpectralField& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.raw().size(); ++i) d = std::max(d, std::abs(a.raw()[i] - b.raw()[i]));
  return d;
}

inline double rel_diff(const SpectralField& a, const SpectralField& b) {
  const double scale = std::max(a.max_abs(), b.max_abs());
  return scale == 0.0 ? max_diff(a, b) : max_diff(a, b) / scale;
}

inline double norm(const SpectralField& v) {
  double s = 0.0;
  for (const auto& z : v.raw()) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace tmodel::test
