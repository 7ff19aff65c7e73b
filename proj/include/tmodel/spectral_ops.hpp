#pragma once

#include <array>
#include <complex>
#include <span>

#include "tmodel/mode_partition.hpp"
#include "tmodel/spectral_field.hpp"

namespace tmodel {

using CVec3 = std::array<cplx, 3>;

/// A_k a = a − k (k·a)/|k|². Throws DomainError for k = 0.
CVec3 leray_apply(const WaveVector& k, const CVec3& a);

/// Project every mode of a vector field in place (k = 0 is left at zero).
void leray_project(SpectralField& v);

/// c_k = Σ_{p+q=k} a_p b_q on `output`, via zero-padded FFTs.
///
/// a and b are scalar (single-component) fields; entries outside their
/// actual support are zero. The transform length per axis is the smallest
/// 7-smooth length that is alias-free for the realised supports, so the
/// result is exact up to round-off for any input on F ∪ G.
SpectralField convolve_dealiased(const SpectralField& a, const SpectralField& b, ModeSet output);

/// Same quantity by explicit summation over p + q = k. O(|F∪G|²).
SpectralField convolve_direct(const SpectralField& a, const SpectralField& b, ModeSet output);

/// Caps the number of threads FFTW may use for plans created afterwards.
void set_fft_threads(int threads);
int fft_threads();

}  // namespace tmodel
