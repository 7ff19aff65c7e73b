#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace tmodel {

struct TimeValue {
  double t;
  double value;
};

/// Sampled (t, E). Times strictly increasing, E ≥ 0.
class EnergySeries {
 public:
  EnergySeries() = default;
  explicit EnergySeries(std::vector<TimeValue> samples);

  /// Throws UsageError if t does not increase or E < 0.
  void push(double t, double energy);
  const std::vector<TimeValue>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

 private:
  std::vector<TimeValue> samples_;
};

/// Sampled (t, dE/dt) with dE/dt ≤ 0 for the t-model.
class DecayRateSeries {
 public:
  DecayRateSeries() = default;
  explicit DecayRateSeries(std::vector<TimeValue> samples);

  void push(double t, double rate);
  const std::vector<TimeValue>& samples() const { return samples_; }
  /// (t, |dE/dt|), the form written to disk and used for peak finding.
  std::vector<TimeValue> magnitude() const;
  std::size_t size() const { return samples_.size(); }

 private:
  std::vector<TimeValue> samples_;
};

}  // namespace tmodel
