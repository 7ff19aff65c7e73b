#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "tmodel/errors.hpp"
#include "tmodel/initial_conditions.hpp"
#include "tmodel/spectral_ops.hpp"

using namespace tmodel;
using test::rel_diff;

namespace {

// Random real-symmetric scalar coefficients on F.
SpectralField random_scalar(const PartitionPtr& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SpectralField f(p, 1);
  for (auto i : p->resolved()) {
    const WaveVector k = p->wavevector(i);
    if (!is_canonical(k)) continue;
    const cplx z{u(rng), u(rng)};
    f.at(0, k) = z;
    f.at(0, -k) = std::conj(z);
  }
  return f;
}

}  // namespace

TEST_CASE("leray projection on hand examples") {
  const auto a = leray_apply(WaveVector{{1, 0, 0}}, CVec3{0.0, 1.0, 0.0});
  CHECK(std::abs(a[0]) == 0.0);
  CHECK(std::abs(a[1] - 1.0) == 0.0);

  const auto b = leray_apply(WaveVector{{1, 0, 0}}, CVec3{1.0, 0.0, 0.0});
  CHECK(std::abs(b[0]) == 0.0);
  CHECK(std::abs(b[1]) == 0.0);

  const auto c = leray_apply(WaveVector{{1, 1, 0}}, CVec3{1.0, 0.0, 0.0});
  CHECK(std::abs(c[0] - 0.5) < 1e-15);
  CHECK(std::abs(c[1] + 0.5) < 1e-15);
  CHECK(std::abs(c[2]) < 1e-15);
}

TEST_CASE("leray projection is idempotent and removes the longitudinal part") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const WaveVector k{{int(rng() % 9) - 4, int(rng() % 9) - 4, int(rng() % 9) - 4}};
    if (k.is_zero()) continue;
    const CVec3 a{cplx{u(rng), u(rng)}, cplx{u(rng), u(rng)}, cplx{u(rng), u(rng)}};
    const CVec3 once = leray_apply(k, a);
    const CVec3 twice = leray_apply(k, once);
    cplx div{};
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(once[i] - twice[i]) <= 1e-15);
      div += double(k.c[i]) * once[i];
    }
    CHECK(std::abs(div) < 1e-14);
  }
}

TEST_CASE("leray projection is undefined at k = 0") {
  CHECK_THROWS_AS(leray_apply(WaveVector{}, CVec3{1.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("single-mode convolution") {
  const auto p = ModePartition::build(1, 4);
  SpectralField a(p, 1);
  a.at(0, WaveVector{{1, 0, 0}}) = 1.0;
  for (const SpectralField& c : {convolve_dealiased(a, a, ModeSet::All), convolve_direct(a, a, ModeSet::All)}) {
    for (std::size_t i = 0; i < p->volume(); ++i) {
      const cplx expected = p->wavevector(i) == WaveVector{{2, 0, 0}} ? 1.0 : 0.0;
      CHECK(std::abs(c.at(0, i) - expected) < 1e-15);
    }
  }
}

TEST_CASE("zero inputs convolve to zero") {
  const auto p = ModePartition::build(2, 3);
  const SpectralField z(p, 1);
  CHECK(convolve_dealiased(z, z, ModeSet::All).max_abs() == 0.0);
  CHECK(convolve_direct(z, z, ModeSet::All).max_abs() == 0.0);
}

TEST_CASE("dealiased convolution matches direct summation") {
  for (int dim = 1; dim <= 3; ++dim) {
    for (int n = 1; n <= 8; ++n) {
      CAPTURE(dim);
      CAPTURE(n);
      const auto p = ModePartition::build(dim, n);
      const SpectralField a = random_scalar(p, std::uint64_t(10 * dim + n));
      const SpectralField b = random_scalar(p, std::uint64_t(1000 + 10 * dim + n));
      const SpectralField fast = convolve_dealiased(a, b, ModeSet::All);
      CHECK(rel_diff(fast, convolve_direct(a, b, ModeSet::All)) < 1e-12);
      CHECK(reality_residual(fast) <= 1e-14 * fast.max_abs());
    }
  }
}

TEST_CASE("n = 4 convolution matches direct summation to 1e-13") {
  for (int dim = 1; dim <= 3; ++dim) {
    const auto p = ModePartition::build(dim, 4);
    const SpectralField a = random_scalar(p, 77), b = random_scalar(p, 78);
    CHECK(rel_diff(convolve_dealiased(a, b, ModeSet::All), convolve_direct(a, b, ModeSet::All)) < 1e-13);
  }
}

TEST_CASE("convolution restricted to an output set") {
  const auto p = ModePartition::build(2, 3);
  const SpectralField a = random_scalar(p, 5), b = random_scalar(p, 6);
  const SpectralField all = convolve_direct(a, b, ModeSet::All);
  const SpectralField f = convolve_dealiased(a, b, ModeSet::Resolved);
  const SpectralField g = convolve_dealiased(a, b, ModeSet::Unresolved);
  CHECK(f.max_abs_outside(ModeSet::Resolved) == 0.0);
  CHECK(g.max_abs_outside(ModeSet::Unresolved) == 0.0);
  SpectralField sum = f;
  sum.axpy(1.0, g);
  CHECK(rel_diff(sum, all) < 1e-12);
}

TEST_CASE("convolution inputs must be compatible scalar fields") {
  const auto p = ModePartition::build(2, 2);
  const auto q = ModePartition::build(2, 3);
  const SpectralField a(p, 1), b(q, 1), vec(p, 2);
  CHECK_THROWS_AS(convolve_dealiased(a, b, ModeSet::All), UsageError);
  CHECK_THROWS_AS(convolve_dealiased(a, vec, ModeSet::All), UsageError);
  CHECK_THROWS_AS(convolve_direct(a, b, ModeSet::All), UsageError);
}

TEST_CASE("fft thread count does not change results") {
  const auto p = ModePartition::build(3, 6);
  const SpectralField a = random_scalar(p, 11), b = random_scalar(p, 12);
  set_fft_threads(1);
  const SpectralField one = convolve_dealiased(a, b, ModeSet::All);
  set_fft_threads(4);
  CHECK(fft_threads() == 4);
  const SpectralField four = convolve_dealiased(a, b, ModeSet::All);
  set_fft_threads(1);
  CHECK(rel_diff(one, four) <= 1e-14);
}

TEST_CASE("projected fields are divergence free") {
  const auto p = ModePartition::build(3, 3);
  SpectralField v = random_admissible(p, 9);
  CHECK(divergence_residual(v) < 1e-14);
  leray_project(v);
  CHECK(divergence_residual(v) < 1e-14);
  CHECK(reality_residual(v) == 0.0);
}

TEST_CASE("divergence residual is not defined for the 1D field") {
  const auto p = ModePartition::build(1, 4);
  CHECK(divergence_residual(init_burgers_sine(p)) == 0.0);
}
