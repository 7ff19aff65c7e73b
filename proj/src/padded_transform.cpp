#include "tmodel/padded_transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

#include "fft_planner.hpp"
#include "tmodel/errors.hpp"

namespace tmodel {

void detail::FftwFree::operator()(void* p) const { fftw_free(p); }

template <typename T>
FftBuffer<T>::FftBuffer(std::size_t n)
    : ptr_(static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1)))), size_(n) {
  if (!ptr_) throw std::bad_alloc();
  std::fill(ptr_.get(), ptr_.get() + n, T{});
}

template class FftBuffer<double>;
template class FftBuffer<cplx>;

namespace {

std::size_t half_index(const WaveVector& k, int dim, int len) {
  const std::size_t half_last = std::size_t(len / 2 + 1);
  std::size_t idx = 0;
  for (int a = 0; a < dim - 1; ++a) {
    const int w = ((k.c[a] % len) + len) % len;
    idx = idx * std::size_t(len) + std::size_t(w);
  }
  return idx * half_last + std::size_t(k.c[dim - 1]);
}

}  // namespace

PaddedTransform::PaddedTransform(PartitionPtr partition)
    : partition_(std::move(partition)), len_(partition_->transform_len()) {
  const int d = partition_->dim();
  real_size_ = 1;
  for (int a = 0; a < d; ++a) real_size_ *= std::size_t(len_);
  half_size_ = real_size_ / std::size_t(len_) * std::size_t(len_ / 2 + 1);

  for (std::size_t i = 0; i < partition_->volume(); ++i) {
    const WaveVector k = partition_->wavevector(i);
    const bool res = partition_->in_resolved(k);
    const bool unres = partition_->in_unresolved(k);
    if (!res && !unres) continue;
    if (k.c[d - 1] >= 0) {
      auto& scatter = res ? scatter_resolved_ : scatter_unresolved_;
      scatter.emplace_back(i, half_index(k, d, len_));
    }
    if (is_canonical(k)) {
      Slot s{k, half_index(k, d, len_), i, partition_->index(-k)};
      (res ? resolved_ : unresolved_).push_back(s);
      all_.push_back(s);
    }
  }

  std::array<int, 3> dims{len_, len_, len_};
  FftBuffer<double> r(real_size_);
  FftBuffer<cplx> c(half_size_);
  auto* cc = reinterpret_cast<fftw_complex*>(c.data());
  std::lock_guard lock(detail::planner_mutex());
  detail::apply_thread_setting();
  forward_ = fftw_plan_dft_r2c(d, dims.data(), r.data(), cc, FFTW_ESTIMATE);
  backward_ = fftw_plan_dft_c2r(d, dims.data(), cc, r.data(), FFTW_ESTIMATE);
  if (!forward_ || !backward_) throw Error("padded transform: FFTW planning failed");
}

PaddedTransform::~PaddedTransform() {
  std::lock_guard lock(detail::planner_mutex());
  if (forward_) fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  if (backward_) fftw_destroy_plan(static_cast<fftw_plan>(backward_));
}

const std::vector<PaddedTransform::Slot>& PaddedTransform::canonical(ModeSet set) const {
  switch (set) {
    case ModeSet::Resolved: return resolved_;
    case ModeSet::Unresolved: return unresolved_;
    case ModeSet::All: return all_;
  }
  return all_;
}

void PaddedTransform::to_physical(std::span<const cplx> coeffs, ModeSet support,
                                  std::span<double> phys) const {
  FftBuffer<cplx> half(half_size_);
  auto put = [&](const auto& list) {
    for (const auto& [dense, h] : list) half[h] = coeffs[dense];
  };
  if (support != ModeSet::Unresolved) put(scatter_resolved_);
  if (support != ModeSet::Resolved) put(scatter_unresolved_);
  fftw_execute_dft_c2r(static_cast<fftw_plan>(backward_), reinterpret_cast<fftw_complex*>(half.data()),
                       phys.data());
}

void PaddedTransform::to_half_spectrum(std::span<double> phys, std::span<cplx> half) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_), phys.data(),
                       reinterpret_cast<fftw_complex*>(half.data()));
  const double norm = 1.0 / double(real_size_);
  for (auto& z : half) z *= norm;
}

}  // namespace tmodel
