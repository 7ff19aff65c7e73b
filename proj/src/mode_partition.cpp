#include "tmodel/mode_partition.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "tmodel/errors.hpp"

namespace tmodel {

int WaveVector::norm_inf() const {
  return std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2])});
}

std::int64_t WaveVector::norm_sq() const {
  return std::int64_t(c[0]) * c[0] + std::int64_t(c[1]) * c[1] + std::int64_t(c[2]) * c[2];
}

int smooth_length(int at_least) {
  for (int len = std::max(at_least, 1);; ++len) {
    int r = len;
    for (int f : {2, 3, 5, 7})
      while (r % f == 0) r /= f;
    if (r == 1) return len;
  }
}

bool is_canonical(const WaveVector& k) {
  for (int a = 2; a >= 0; --a)
    if (k.c[a] != 0) return k.c[a] > 0;
  return false;
}

std::shared_ptr<const ModePartition> ModePartition::build(int dim, int n) {
  if (dim < 1 || dim > 3)
    throw ConfigError("mode partition: dimension must be 1, 2 or 3 (got " + std::to_string(dim) + ")");
  if (n < 1)
    throw ConfigError("mode partition: resolved cutoff n must be >= 1 (got " + std::to_string(n) + ")");
  return std::shared_ptr<const ModePartition>(new ModePartition(dim, n));
}

ModePartition::ModePartition(int dim, int n)
    : dim_(dim), n_(n), m_(2 * n), side_(2 * m_ + 1), transform_len_(smooth_length(4 * n + 1)) {
  volume_ = 1;
  for (int a = dim_ - 1; a >= 0; --a) {
    stride_[a] = volume_;
    volume_ *= std::size_t(side_);
  }
  for (std::size_t i = 0; i < volume_; ++i) {
    const int r = wavevector(i).norm_inf();
    if (r == 0) continue;
    if (r <= n_)
      resolved_.push_back(i);
    else
      unresolved_.push_back(i);
  }
}

std::size_t ModePartition::index(const WaveVector& k) const {
  std::size_t idx = 0;
  for (int a = 0; a < dim_; ++a) idx += std::size_t(k.c[a] + m_) * stride_[a];
  return idx;
}

WaveVector ModePartition::wavevector(std::size_t index) const {
  WaveVector k;
  for (int a = 0; a < dim_; ++a) {
    k.c[a] = int(index / stride_[a]) - m_;
    index %= stride_[a];
  }
  return k;
}

bool ModePartition::in_resolved(const WaveVector& k) const {
  const int r = k.norm_inf();
  return r > 0 && r <= n_;
}

bool ModePartition::in_unresolved(const WaveVector& k) const {
  const int r = k.norm_inf();
  return r > n_ && r <= m_;
}

bool ModePartition::in_set(const WaveVector& k, ModeSet set) const {
  switch (set) {
    case ModeSet::Resolved: return in_resolved(k);
    case ModeSet::Unresolved: return in_unresolved(k);
    case ModeSet::All: return in_resolved(k) || in_unresolved(k);
  }
  return false;
}

}  // namespace tmodel
