#include "tmodel/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tmodel/errors.hpp"

namespace tmodel {

PowerLawFit fit_power_law(const EnergySeries& series, TimeWindow window, const FitOptions& options) {
  if (!(window.hi > window.lo)) throw FitError("power-law fit: empty window");
  std::vector<double> x, y;
  for (const auto& s : series.samples()) {
    if (s.t < window.lo || s.t > window.hi) continue;
    if (!(s.t > 0.0) || !(s.value > 0.0)) {
      std::ostringstream os;
      os << "power-law fit: sample (t = " << s.t << ", E = " << s.value << ") is not positive";
      throw FitError(os.str());
    }
    x.push_back(std::log(s.t));
    y.push_back(std::log(s.value));
  }
  if (int(x.size()) < kMinFitPoints) {
    std::ostringstream os;
    os << "power-law fit: only " << x.size() << " samples in [" << window.lo << ", " << window.hi
       << "], need " << kMinFitPoints;
    throw FitError(os.str());
  }

  if (options.log_resample) {
    const int m = options.resample_points > 0 ? options.resample_points : int(x.size());
    std::vector<double> rx(static_cast<std::size_t>(m)), ry(static_cast<std::size_t>(m));
    std::size_t j = 0;
    for (int i = 0; i < m; ++i) {
      const double xi = i == m - 1 ? x.back() : x.front() + (x.back() - x.front()) * double(i) / double(m - 1);
      while (j + 2 < x.size() && x[j + 1] < xi) ++j;
      const double w = x[j + 1] == x[j] ? 0.0 : (xi - x[j]) / (x[j + 1] - x[j]);
      rx[std::size_t(i)] = xi;
      ry[std::size_t(i)] = y[j] + w * (y[j + 1] - y[j]);
    }
    x = std::move(rx);
    y = std::move(ry);
  }

  const double n = double(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw FitError("power-law fit: all samples share one time");

  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - fit.intercept - fit.exponent * x[i];
    ssr += r * r;
  }
  fit.standard_error = std::sqrt(ssr / (n - 2.0) / sxx);
  fit.window = window;
  fit.n_points = int(x.size());
  return fit;
}

std::vector<Peak> find_peaks(const std::vector<TimeValue>& s, double relative_prominence) {
  std::vector<Peak> peaks;
  const std::size_t n = s.size();
  if (n < 3) return peaks;
  double global = 0.0;
  for (const auto& p : s) global = std::max(global, p.value);
  if (!(global > 0.0)) return peaks;
  const double threshold = relative_prominence * global;

  std::size_t i = 1;
  while (i + 1 < n) {
    if (!(s[i].value > s[i - 1].value)) {
      ++i;
      continue;
    }
    // Walk across a plateau.
    std::size_t j = i;
    while (j + 1 < n && s[j + 1].value == s[i].value) ++j;
    if (j + 1 >= n || !(s[j + 1].value < s[i].value)) {
      i = j + 1;
      continue;
    }
    const double h = s[i].value;
    double left_min = h;
    for (std::size_t l = i; l-- > 0;) {
      if (s[l].value > h) break;
      left_min = std::min(left_min, s[l].value);
    }
    double right_min = h;
    for (std::size_t r = j + 1; r < n; ++r) {
      if (s[r].value > h) break;
      right_min = std::min(right_min, s[r].value);
    }
    const double prominence = h - std::max(left_min, right_min);
    if (prominence > threshold) peaks.push_back({s[(i + j) / 2].t, h, prominence});
    i = j + 1;
  }
  return peaks;
}

std::vector<Peak> find_rate_peaks(const DecayRateSeries& series, double relative_prominence) {
  return find_peaks(series.magnitude(), relative_prominence);
}

double relative_energy_drop(const EnergySeries& series) {
  if (series.empty()) throw FitError("relative energy drop: empty series");
  const double first = series.samples().front().value;
  if (first == 0.0) throw FitError("relative energy drop: initial energy is zero");
  return (first - series.samples().back().value) / first;
}

}  // namespace tmodel
