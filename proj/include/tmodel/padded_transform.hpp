#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "tmodel/mode_partition.hpp"
#include "tmodel/spectral_field.hpp"

namespace tmodel {

namespace detail {
struct FftwFree {
  void operator()(void* p) const;
};
}  // namespace detail

/// Aligned scratch buffer owned through fftw_malloc/fftw_free.
template <typename T>
class FftBuffer {
 public:
  FftBuffer() = default;
  explicit FftBuffer(std::size_t n);
  T* data() { return ptr_.get(); }
  const T* data() const { return ptr_.get(); }
  std::size_t size() const { return size_; }
  T& operator[](std::size_t i) { return ptr_.get()[i]; }
  const T& operator[](std::size_t i) const { return ptr_.get()[i]; }
  std::span<T> span() { return {ptr_.get(), size_}; }

 private:
  std::unique_ptr<T, detail::FftwFree> ptr_;
  std::size_t size_ = 0;
};

/// Real-field transforms between Hermitian spectra on F ∪ G and a padded
/// physical grid of `transform_len()` points per axis.
///
/// Plans are built once; execute() calls use fresh scratch per call so a
/// single instance may be shared between threads.
class PaddedTransform {
 public:
  explicit PaddedTransform(PartitionPtr partition);
  ~PaddedTransform();
  PaddedTransform(const PaddedTransform&) = delete;
  PaddedTransform& operator=(const PaddedTransform&) = delete;

  const ModePartition& partition() const { return *partition_; }
  int len() const { return len_; }
  std::size_t real_size() const { return real_size_; }
  std::size_t half_size() const { return half_size_; }

  /// One entry per canonical mode of a set: where to read it in the half
  /// spectrum and where to write k and −k in dense storage.
  struct Slot {
    WaveVector k;
    std::size_t half;
    std::size_t pos;
    std::size_t neg;
  };
  const std::vector<Slot>& canonical(ModeSet set) const;

  /// Dense coefficients restricted to `support` → real grid values.
  void to_physical(std::span<const cplx> coeffs, ModeSet support, std::span<double> phys) const;
  /// Real grid values → half spectrum, normalised so entries are Fourier
  /// coefficients. `phys` may be overwritten.
  void to_half_spectrum(std::span<double> phys, std::span<cplx> half) const;

 private:
  PartitionPtr partition_;
  int len_;
  std::size_t real_size_;
  std::size_t half_size_;
  void* forward_ = nullptr;
  void* backward_ = nullptr;
  std::vector<Slot> resolved_;
  std::vector<Slot> unresolved_;
  std::vector<Slot> all_;
  // Scatter lists: every mode with last component ≥ 0 that c2r reads.
  std::vector<std::pair<std::size_t, std::size_t>> scatter_resolved_;
  std::vector<std::pair<std::size_t, std::size_t>> scatter_unresolved_;
};

extern template class FftBuffer<double>;
extern template class FftBuffer<cplx>;

}  // namespace tmodel
