#include "tmodel/series.hpp"

#include <cmath>
#include <sstream>

#include "tmodel/errors.hpp"

namespace tmodel {

namespace {

void check_time(const std::vector<TimeValue>& s, double t) {
  if (!s.empty() && !(t > s.back().t)) {
    std::ostringstream os;
    os << "series: time " << t << " does not follow " << s.back().t;
    throw UsageError(os.str());
  }
}

}  // namespace

EnergySeries::EnergySeries(std::vector<TimeValue> samples) {
  for (const auto& s : samples) push(s.t, s.value);
}

void EnergySeries::push(double t, double energy) {
  check_time(samples_, t);
  if (!(energy >= 0.0)) {
    std::ostringstream os;
    os << "energy series: negative or NaN energy " << energy << " at t = " << t;
    throw UsageError(os.str());
  }
  samples_.push_back({t, energy});
}

DecayRateSeries::DecayRateSeries(std::vector<TimeValue> samples) {
  for (const auto& s : samples) push(s.t, s.value);
}

void DecayRateSeries::push(double t, double rate) {
  check_time(samples_, t);
  samples_.push_back({t, rate});
}

std::vector<TimeValue> DecayRateSeries::magnitude() const {
  std::vector<TimeValue> out;
  out.reserve(samples_.size());
  for (const auto& s : samples_) out.push_back({s.t, std::abs(s.value)});
  return out;
}

}  // namespace tmodel
