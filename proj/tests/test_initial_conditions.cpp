#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "tmodel/errors.hpp"
#include "tmodel/initial_conditions.hpp"

using namespace tmodel;

namespace {

// Shell s holds s - 1/2 <= |k| < s + 1/2.
int shell_of(const WaveVector& k) { return int(std::floor(std::sqrt(double(k.norm_sq())) + 0.5)); }

std::map<int, double> shell_energies(const SpectralField& v) {
  std::map<int, double> e;
  const auto& p = v.partition();
  for (auto i : p.resolved())
    for (int c = 0; c < v.components(); ++c) e[shell_of(p.wavevector(i))] += 0.5 * std::norm(v.at(c, i));
  return e;
}

void check_admissible(const SpectralField& v) {
  CHECK(reality_residual(v) == 0.0);
  CHECK(v.max_abs_outside(ModeSet::Resolved) == 0.0);
  if (v.partition().dim() > 1) CHECK(divergence_residual(v) < 1e-14 * v.partition().m());
}

}  // namespace

TEST_CASE("sine initial condition") {
  const auto p = ModePartition::build(1, 16);
  const SpectralField v = init_burgers_sine(p);
  int nonzero = 0;
  for (const auto& z : v.raw()) nonzero += z != cplx{};
  CHECK(nonzero == 2);
  CHECK(v.at(0, WaveVector{{-1, 0, 0}}) == std::conj(v.at(0, WaveVector{{1, 0, 0}})));
  CHECK(energy(v) == doctest::Approx(0.25).epsilon(1e-15));
  const double x = std::numbers::pi / 2;
  CHECK(std::abs(evaluate_at(v, 0, std::span<const double>(&x, 1)) - 1.0) < 1e-14);
  check_admissible(v);
}

TEST_CASE("taylor-green initial condition") {
  const auto p = ModePartition::build(3, 4);
  const SpectralField v = init_taylor_green(p);
  std::set<std::size_t> support;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < p->volume(); ++i)
      if (v.at(c, i) != cplx{}) support.insert(i);
  CHECK(support.size() == 8);
  for (auto i : support) {
    const WaveVector k = p->wavevector(i);
    CHECK(std::abs(k.c[0]) == 1);
    CHECK(std::abs(k.c[1]) == 1);
    CHECK(std::abs(k.c[2]) == 1);
  }
  CHECK(energy(v) == doctest::Approx(0.125).epsilon(1e-14));
  check_admissible(v);

  const double x[3] = {0.3, 1.1, -0.7};
  CHECK(evaluate_at(v, 0, x) == doctest::Approx(std::sin(x[0]) * std::cos(x[1]) * std::cos(x[2])));
  CHECK(evaluate_at(v, 1, x) == doctest::Approx(-std::cos(x[0]) * std::sin(x[1]) * std::cos(x[2])));
  CHECK(std::abs(evaluate_at(v, 2, x)) < 1e-15);
}

TEST_CASE("zero profile gives a zero field") {
  const auto p = ModePartition::build(2, 4);
  CHECK(init_random_isotropic(p, SpectrumProfile::zero()).max_abs() == 0.0);
}

TEST_CASE("random isotropic field carries the exponential shell spectrum") {
  for (int dim : {2, 3}) {
    const int n = dim == 2 ? 16 : 6;
    const auto p = ModePartition::build(dim, n);
    RandomFieldReport report;
    const SpectralField v = init_random_isotropic(p, SpectrumProfile::exponential(1), &report);
    check_admissible(v);

    std::set<int> occupied;
    for (auto i : p->resolved()) occupied.insert(shell_of(p->wavevector(i)));
    double expected = 0.0;
    for (int s : occupied) expected += std::exp(-2.0 * s);
    CHECK(std::abs(energy(v) - expected) <= 1e-12 * expected);

    for (const auto& [s, e] : shell_energies(v)) CHECK(std::abs(e - std::exp(-2.0 * s)) <= 1e-12 * std::exp(-2.0 * s));
    CHECK(report.shells.size() == occupied.size());
  }
}

TEST_CASE("different seeds give different fields with equal shell energies") {
  const auto p = ModePartition::build(2, 8);
  const SpectralField a = init_random_isotropic(p, SpectrumProfile::exponential(1));
  const SpectralField b = init_random_isotropic(p, SpectrumProfile::exponential(2));
  CHECK(test::max_diff(a, b) > 1e-3);
  const auto ea = shell_energies(a), eb = shell_energies(b);
  REQUIRE(ea.size() == eb.size());
  for (const auto& [s, e] : ea) CHECK(std::abs(e - eb.at(s)) <= 1e-12 * e);
}

TEST_CASE("random fields are reproducible bit for bit") {
  const auto p = ModePartition::build(3, 4);
  const SpectralField a = init_random_isotropic(p, SpectrumProfile::exponential(99));
  const SpectralField b = init_random_isotropic(p, SpectrumProfile::exponential(99));
  CHECK(test::max_diff(a, b) == 0.0);
  const SpectralField c = random_admissible(p, 5), d = random_admissible(p, 5);
  CHECK(test::max_diff(c, d) == 0.0);
  check_admissible(c);
}

TEST_CASE("constructors check the dimension") {
  CHECK_THROWS_AS(init_burgers_sine(ModePartition::build(2, 2)), ConfigError);
  CHECK_THROWS_AS(init_taylor_green(ModePartition::build(1, 2)), ConfigError);
  CHECK_THROWS_AS(init_random_isotropic(ModePartition::build(1, 2), SpectrumProfile::exponential(1)), ConfigError);
}
