#pragma once

#include <complex>
#include <span>
#include <vector>

#include "tmodel/mode_partition.hpp"

namespace tmodel {

using cplx = std::complex<double>;

/// Fourier coefficients of a (vector or scalar) field on F ∪ G.
///
/// Full signed spectrum, dense storage, component-major. The k = 0 slot
/// exists but every producer in the library leaves it at zero.
class SpectralField {
 public:
  SpectralField() = default;
  /// Vector field with `dim` components, all zero.
  explicit SpectralField(PartitionPtr partition);
  SpectralField(PartitionPtr partition, int components);

  const ModePartition& partition() const { return *partition_; }
  const PartitionPtr& partition_ptr() const { return partition_; }
  int components() const { return components_; }

  cplx& at(int comp, const WaveVector& k) { return data_[offset(comp) + partition_->index(k)]; }
  const cplx& at(int comp, const WaveVector& k) const {
    return data_[offset(comp) + partition_->index(k)];
  }
  cplx& at(int comp, std::size_t idx) { return data_[offset(comp) + idx]; }
  const cplx& at(int comp, std::size_t idx) const { return data_[offset(comp) + idx]; }

  std::span<cplx> component(int comp) { return {data_.data() + offset(comp), partition_->volume()}; }
  std::span<const cplx> component(int comp) const {
    return {data_.data() + offset(comp), partition_->volume()};
  }
  std::span<cplx> raw() { return data_; }
  std::span<const cplx> raw() const { return data_; }

  void set_zero();
  /// this += a * x
  void axpy(double a, const SpectralField& x);
  void scale(double a);

  /// Largest |·| over all stored coefficients.
  double max_abs() const;
  /// Largest |·| over coefficients outside `set`.
  double max_abs_outside(ModeSet set) const;

  bool same_shape(const SpectralField& o) const;

 private:
  std::size_t offset(int comp) const { return std::size_t(comp) * partition_->volume(); }

  PartitionPtr partition_;
  int components_ = 0;
  std::vector<cplx> data_;
};

/// max_k |coeffs[−k] − conj(coeffs[k])|.
double reality_residual(const SpectralField& v);

/// max_k |k · v_k| (vector fields only; 0 for scalar fields).
double divergence_residual(const SpectralField& v);

/// ½ Σ_{k∈F} |v_k|² over the signed spectrum and all components.
double energy(const SpectralField& v);

/// Re Σ_{k∈F} conj(a_k)·b_k over all components.
double inner_resolved(const SpectralField& a, const SpectralField& b);

/// Physical value of component `comp` at x (inverse Fourier sum; tests and
/// small diagnostics only).
double evaluate_at(const SpectralField& v, int comp, std::span<const double> x);

}  // namespace tmodel
