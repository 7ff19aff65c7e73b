#include "tmodel/spectral_ops.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

#include "fft_planner.hpp"
#include "tmodel/errors.hpp"
#include "tmodel/padded_transform.hpp"

namespace tmodel {

namespace detail {

namespace {
int g_threads = 1;
bool g_threads_initialised = false;
}  // namespace

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void apply_thread_setting() {
  if (!g_threads_initialised) {
    fftw_init_threads();
    g_threads_initialised = true;
  }
  fftw_plan_with_nthreads(g_threads);
}

}  // namespace detail

void set_fft_threads(int threads) {
  std::lock_guard lock(detail::planner_mutex());
  detail::g_threads = std::max(threads, 1);
}

int fft_threads() {
  std::lock_guard lock(detail::planner_mutex());
  return detail::g_threads;
}

CVec3 leray_apply(const WaveVector& k, const CVec3& a) {
  if (k.is_zero()) throw DomainError("leray projector is undefined at k = 0");
  const double k2 = double(k.norm_sq());
  const cplx kdota = double(k.c[0]) * a[0] + double(k.c[1]) * a[1] + double(k.c[2]) * a[2];
  const cplx s = kdota / k2;
  return {a[0] - double(k.c[0]) * s, a[1] - double(k.c[1]) * s, a[2] - double(k.c[2]) * s};
}

void leray_project(SpectralField& v) {
  const auto& p = v.partition();
  if (v.components() != p.dim())
    throw UsageError("leray_project: field must have one component per dimension");
  for (std::size_t i = 0; i < p.volume(); ++i) {
    const WaveVector k = p.wavevector(i);
    if (k.is_zero()) continue;
    CVec3 a{};
    for (int c = 0; c < p.dim(); ++c) a[c] = v.at(c, i);
    a = leray_apply(k, a);
    for (int c = 0; c < p.dim(); ++c) v.at(c, i) = a[c];
  }
}

namespace {

void check_scalar_pair(const SpectralField& a, const SpectralField& b) {
  if (!a.partition_ptr() || !b.partition_ptr() || !(a.partition() == b.partition()))
    throw UsageError("convolution: operands live on different partitions");
  if (a.components() != 1 || b.components() != 1)
    throw UsageError("convolution: operands must be scalar (single-component) fields");
}

int support_radius(const SpectralField& f) {
  const auto& p = f.partition();
  int r = -1;
  for (std::size_t i = 0; i < p.volume(); ++i)
    if (f.at(0, i) != cplx{}) r = std::max(r, p.wavevector(i).norm_inf());
  return r;
}

std::size_t wrapped_index(const WaveVector& k, int dim, int len) {
  std::size_t idx = 0;
  for (int a = 0; a < dim; ++a) idx = idx * std::size_t(len) + std::size_t(((k.c[a] % len) + len) % len);
  return idx;
}

}  // namespace

SpectralField convolve_dealiased(const SpectralField& a, const SpectralField& b, ModeSet output) {
  check_scalar_pair(a, b);
  const auto& p = a.partition();
  SpectralField out(a.partition_ptr(), 1);
  const int ra = support_radius(a);
  const int rb = support_radius(b);
  if (ra < 0 || rb < 0) return out;

  const int d = p.dim();
  const int len = smooth_length(ra + rb + p.radius(output) + 1);
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= std::size_t(len);

  FftBuffer<cplx> fa(total), fb(total);
  for (std::size_t i = 0; i < p.volume(); ++i) {
    const WaveVector k = p.wavevector(i);
    const std::size_t w = wrapped_index(k, d, len);
    fa[w] = a.at(0, i);
    fb[w] = b.at(0, i);
  }

  std::array<int, 3> dims{len, len, len};
  fftw_plan backward, forward;
  auto* pa = reinterpret_cast<fftw_complex*>(fa.data());
  auto* pb = reinterpret_cast<fftw_complex*>(fb.data());
  {
    std::lock_guard lock(detail::planner_mutex());
    detail::apply_thread_setting();
    backward = fftw_plan_dft(d, dims.data(), pa, pa, FFTW_BACKWARD, FFTW_ESTIMATE);
    forward = fftw_plan_dft(d, dims.data(), pa, pa, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute_dft(backward, pa, pa);
  fftw_execute_dft(backward, pb, pb);
  for (std::size_t i = 0; i < total; ++i) fa[i] *= fb[i];
  fftw_execute_dft(forward, pa, pa);
  {
    std::lock_guard lock(detail::planner_mutex());
    fftw_destroy_plan(backward);
    fftw_destroy_plan(forward);
  }

  const double norm = 1.0 / double(total);
  for (std::size_t i = 0; i < p.volume(); ++i) {
    const WaveVector k = p.wavevector(i);
    if (p.in_set(k, output)) out.at(0, i) = fa[wrapped_index(k, d, len)] * norm;
  }
  return out;
}

SpectralField convolve_direct(const SpectralField& a, const SpectralField& b, ModeSet output) {
  check_scalar_pair(a, b);
  const auto& p = a.partition();
  SpectralField out(a.partition_ptr(), 1);
  std::vector<std::size_t> nz_a;
  for (std::size_t i = 0; i < p.volume(); ++i)
    if (a.at(0, i) != cplx{}) nz_a.push_back(i);
  for (std::size_t i = 0; i < p.volume(); ++i) {
    const WaveVector k = p.wavevector(i);
    if (!p.in_set(k, output)) continue;
    cplx s{};
    for (std::size_t ip : nz_a) {
      const WaveVector q = k - p.wavevector(ip);
      if (!p.stored(q)) continue;
      s += a.at(0, ip) * b.at(0, q);
    }
    out.at(0, i) = s;
  }
  return out;
}

}  // namespace tmodel
