#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace tmodel {

/// Integer wavenumber on the 2π-periodic torus. Components past the
/// partition's dimension are zero, so dot products can always run over 3.
struct WaveVector {
  std::array<int, 3> c{0, 0, 0};

  int norm_inf() const;
  std::int64_t norm_sq() const;
  WaveVector operator-() const { return {{-c[0], -c[1], -c[2]}}; }
  WaveVector operator+(const WaveVector& o) const {
    return {{c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2]}};
  }
  WaveVector operator-(const WaveVector& o) const {
    return {{c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2]}};
  }
  bool operator==(const WaveVector&) const = default;
  bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0; }
};

/// Which modes an operation reads or writes.
enum class ModeSet { Resolved, Unresolved, All };

/// Resolved set F = {0 < |k|_∞ ≤ n} and unresolved set G = {n < |k|_∞ ≤ 2n}.
///
/// Coefficients live in a dense cube of side 2m+1 (m = 2n) indexed by
/// k + m along every axis, axis 0 slowest. That ordering is also the
/// "lexicographic order" used for enumeration and for snapshot files.
class ModePartition {
 public:
  /// Throws ConfigError unless dim ∈ {1,2,3} and n ≥ 1.
  static std::shared_ptr<const ModePartition> build(int dim, int n);

  int dim() const { return dim_; }
  int n() const { return n_; }
  int m() const { return m_; }
  /// Resolved modes per axis (2n).
  int resolved_per_axis() const { return 2 * n_; }
  /// Nominal padded length 2N = 4n.
  int fft_len() const { return 4 * n_; }
  /// Alias-free transform length actually used by the tendency kernels.
  int transform_len() const { return transform_len_; }

  int side() const { return side_; }
  std::size_t volume() const { return volume_; }

  std::size_t index(const WaveVector& k) const;
  WaveVector wavevector(std::size_t index) const;
  /// True when |k|_∞ ≤ m, i.e. the wavevector has a storage slot.
  bool stored(const WaveVector& k) const { return k.norm_inf() <= m_; }
  bool in_resolved(const WaveVector& k) const;
  bool in_unresolved(const WaveVector& k) const;
  bool in_set(const WaveVector& k, ModeSet set) const;
  static int radius(int n, ModeSet set) { return set == ModeSet::Resolved ? n : 2 * n; }
  int radius(ModeSet set) const { return radius(n_, set); }

  /// Dense indices of F and G in lexicographic order.
  const std::vector<std::size_t>& resolved() const { return resolved_; }
  const std::vector<std::size_t>& unresolved() const { return unresolved_; }

  bool operator==(const ModePartition& o) const { return dim_ == o.dim_ && n_ == o.n_; }

 private:
  ModePartition(int dim, int n);

  int dim_;
  int n_;
  int m_;
  int side_;
  int transform_len_;
  std::size_t volume_;
  std::array<std::size_t, 3> stride_{};
  std::vector<std::size_t> resolved_;
  std::vector<std::size_t> unresolved_;
};

using PartitionPtr = std::shared_ptr<const ModePartition>;

/// Smallest integer ≥ lower bound whose prime factors are all ≤ 7.
int smooth_length(int at_least);

/// True for the representative of each ±k pair: the last nonzero component
/// is positive. Used to write k and −k together so reality holds exactly.
bool is_canonical(const WaveVector& k);

}  // namespace tmodel
