#include <algorithm>

#include "doctest.h"
#include "tmodel/errors.hpp"
#include "tmodel/mode_partition.hpp"

using namespace tmodel;

TEST_CASE("1D partition with n = 16 has 32 resolved and 32 unresolved modes") {
  const auto p = ModePartition::build(1, 16);
  CHECK(p->resolved().size() == 32);
  CHECK(p->unresolved().size() == 32);
  CHECK(p->resolved_per_axis() == 32);
  CHECK(p->fft_len() == 64);
  CHECK(p->transform_len() >= 65);
}

TEST_CASE("smallest 1D partition") {
  const auto p = ModePartition::build(1, 1);
  std::vector<int> f, g;
  for (auto i : p->resolved()) f.push_back(p->wavevector(i).c[0]);
  for (auto i : p->unresolved()) g.push_back(p->wavevector(i).c[0]);
  CHECK(f == std::vector<int>{-1, 1});
  CHECK(g == std::vector<int>{-2, 2});
}

TEST_CASE("2D partition with n = 2 counts lattice points") {
  const auto p = ModePartition::build(2, 2);
  CHECK(p->resolved().size() == 24);
  CHECK(p->unresolved().size() == 56);
}

TEST_CASE("set sizes in 3D") {
  for (int n = 1; n <= 4; ++n) {
    const auto p = ModePartition::build(3, n);
    const std::size_t f = std::size_t((2 * n + 1) * (2 * n + 1) * (2 * n + 1) - 1);
    const std::size_t all = std::size_t((4 * n + 1) * (4 * n + 1) * (4 * n + 1) - 1);
    CHECK(p->resolved().size() == f);
    CHECK(p->unresolved().size() == all - f);
  }
}

TEST_CASE("index and wavevector are inverse") {
  const auto p = ModePartition::build(3, 2);
  for (std::size_t i = 0; i < p->volume(); ++i) CHECK(p->index(p->wavevector(i)) == i);
  const WaveVector k{{-3, 1, 4}};
  CHECK(p->wavevector(p->index(k)) == k);
}

TEST_CASE("enumeration is lexicographic and stable") {
  const auto a = ModePartition::build(2, 3);
  const auto b = ModePartition::build(2, 3);
  CHECK(a->resolved() == b->resolved());
  CHECK(a->unresolved() == b->unresolved());
  CHECK(std::is_sorted(a->resolved().begin(), a->resolved().end()));
  const auto first = a->wavevector(a->resolved().front());
  CHECK(first == WaveVector{{-3, -3, 0}});
}

TEST_CASE("membership tests") {
  const auto p = ModePartition::build(2, 2);
  CHECK(p->in_resolved(WaveVector{{2, -1, 0}}));
  CHECK_FALSE(p->in_resolved(WaveVector{{0, 0, 0}}));
  CHECK(p->in_unresolved(WaveVector{{3, 0, 0}}));
  CHECK(p->in_unresolved(WaveVector{{-4, 4, 0}}));
  CHECK_FALSE(p->in_unresolved(WaveVector{{5, 0, 0}}));
  CHECK_FALSE(p->stored(WaveVector{{5, 0, 0}}));
  CHECK(p->in_set(WaveVector{{1, 3, 0}}, ModeSet::All));
}

TEST_CASE("invalid partitions are rejected") {
  CHECK_THROWS_AS(ModePartition::build(1, 0), ConfigError);
  CHECK_THROWS_AS(ModePartition::build(0, 4), ConfigError);
  CHECK_THROWS_AS(ModePartition::build(4, 4), ConfigError);
}

TEST_CASE("smooth transform lengths") {
  CHECK(smooth_length(65) == 70);
  CHECK(smooth_length(33) == 35);
  CHECK(smooth_length(17) == 18);
  CHECK(smooth_length(13) == 14);
  CHECK(smooth_length(64) == 64);
  for (int n = 1; n <= 40; ++n) {
    int r = smooth_length(n);
    CHECK(r >= n);
    for (int f : {2, 3, 5, 7})
      while (r % f == 0) r /= f;
    CHECK(r == 1);
  }
}

TEST_CASE("canonical representative of a conjugate pair") {
  CHECK(is_canonical(WaveVector{{1, 0, 0}}));
  CHECK_FALSE(is_canonical(WaveVector{{-1, 0, 0}}));
  CHECK(is_canonical(WaveVector{{-3, 2, 0}}));
  CHECK(is_canonical(WaveVector{{5, -1, 1}}));
  CHECK_FALSE(is_canonical(WaveVector{{0, 0, 0}}));
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b) {
      const WaveVector k{{a, b, 0}};
      if (!k.is_zero()) CHECK(is_canonical(k) != is_canonical(-k));
    }
}
