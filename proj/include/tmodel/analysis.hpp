#pragma once

#include <vector>

#include "tmodel/series.hpp"

namespace tmodel {

struct TimeWindow {
  double lo;
  double hi;
};

/// E ∝ t^exponent over a time window.
struct PowerLawFit {
  double exponent = 0.0;
  double standard_error = 0.0;
  double intercept = 0.0;
  TimeWindow window{0.0, 0.0};
  int n_points = 0;
};

struct FitOptions {
  /// Interpolate onto a log-uniform time grid before fitting, so every
  /// decade carries the same weight.
  bool log_resample = true;
  /// Grid size when resampling; 0 keeps the number of samples in the window.
  int resample_points = 0;
};

inline constexpr int kMinFitPoints = 10;

/// OLS of log E on log t. Throws FitError on fewer than kMinFitPoints
/// samples in the window or on any nonpositive t or E (the message names
/// the offending sample).
PowerLawFit fit_power_law(const EnergySeries& series, TimeWindow window, const FitOptions& options = {});

struct Peak {
  double t;
  double value;
  double prominence;
};

/// Local maxima of |dE/dt| whose prominence exceeds `relative_prominence`
/// times the series maximum, in time order. Prominence is the height above
/// the higher of the two flanking minima, each taken up to the nearest
/// higher sample (or the series end).
std::vector<Peak> find_rate_peaks(const DecayRateSeries& series, double relative_prominence = 0.05);
std::vector<Peak> find_peaks(const std::vector<TimeValue>& samples, double relative_prominence);

/// (E_first − E_last) / E_first. Throws FitError for an empty series or
/// E_first = 0.
double relative_energy_drop(const EnergySeries& series);

}  // namespace tmodel
