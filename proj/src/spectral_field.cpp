#include "tmodel/spectral_field.hpp"

#include <algorithm>
#include <cmath>

#include "tmodel/errors.hpp"

namespace tmodel {

SpectralField::SpectralField(PartitionPtr partition)
    : SpectralField(partition, partition ? partition->dim() : 0) {}

SpectralField::SpectralField(PartitionPtr partition, int components)
    : partition_(std::move(partition)), components_(components) {
  if (!partition_) throw UsageError("spectral field: null partition");
  if (components_ < 1) throw UsageError("spectral field: needs at least one component");
  data_.assign(std::size_t(components_) * partition_->volume(), cplx{});
}

void SpectralField::set_zero() { std::fill(data_.begin(), data_.end(), cplx{}); }

void SpectralField::axpy(double a, const SpectralField& x) {
  if (!same_shape(x)) throw UsageError("spectral field: axpy on mismatched fields");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += a * x.data_[i];
}

void SpectralField::scale(double a) {
  for (auto& z : data_) z *= a;
}

double SpectralField::max_abs() const {
  double r = 0.0;
  for (const auto& z : data_) r = std::max(r, std::abs(z));
  return r;
}

double SpectralField::max_abs_outside(ModeSet set) const {
  double r = 0.0;
  for (std::size_t i = 0; i < partition_->volume(); ++i) {
    if (partition_->in_set(partition_->wavevector(i), set)) continue;
    for (int c = 0; c < components_; ++c) r = std::max(r, std::abs(at(c, i)));
  }
  return r;
}

bool SpectralField::same_shape(const SpectralField& o) const {
  return partition_ && o.partition_ && *partition_ == *o.partition_ && components_ == o.components_;
}

double reality_residual(const SpectralField& v) {
  const auto& p = v.partition();
  double r = 0.0;
  for (std::size_t i = 0; i < p.volume(); ++i) {
    const std::size_t j = p.index(-p.wavevector(i));
    for (int c = 0; c < v.components(); ++c)
      r = std::max(r, std::abs(v.at(c, j) - std::conj(v.at(c, i))));
  }
  return r;
}

double divergence_residual(const SpectralField& v) {
  const auto& p = v.partition();
  // Incompressibility only constrains the 2D/3D velocity fields.
  if (p.dim() < 2 || v.components() != p.dim()) return 0.0;
  double r = 0.0;
  for (std::size_t i = 0; i < p.volume(); ++i) {
    const WaveVector k = p.wavevector(i);
    cplx s{};
    for (int a = 0; a < p.dim(); ++a) s += double(k.c[a]) * v.at(a, i);
    r = std::max(r, std::abs(s));
  }
  return r;
}

double energy(const SpectralField& v) {
  double s = 0.0;
  for (int c = 0; c < v.components(); ++c)
    for (std::size_t i : v.partition().resolved()) s += std::norm(v.at(c, i));
  return 0.5 * s;
}

double inner_resolved(const SpectralField& a, const SpectralField& b) {
  if (!a.same_shape(b)) throw UsageError("inner product of mismatched fields");
  double s = 0.0;
  for (int c = 0; c < a.components(); ++c)
    for (std::size_t i : a.partition().resolved()) s += (std::conj(a.at(c, i)) * b.at(c, i)).real();
  return s;
}

double evaluate_at(const SpectralField& v, int comp, std::span<const double> x) {
  const auto& p = v.partition();
  cplx s{};
  for (std::size_t i = 0; i < p.volume(); ++i) {
    const cplx z = v.at(comp, i);
    if (z == cplx{}) continue;
    const WaveVector k = p.wavevector(i);
    double phase = 0.0;
    for (int a = 0; a < p.dim(); ++a) phase += k.c[a] * x[a];
    s += z * std::polar(1.0, phase);
  }
  return s.real();
}

}  // namespace tmodel
