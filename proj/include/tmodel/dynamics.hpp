#pragma once

#include <memory>
#include <string>

#include "tmodel/mode_partition.hpp"
#include "tmodel/padded_transform.hpp"
#include "tmodel/spectral_field.hpp"

namespace tmodel {

enum class SystemKind { Burgers1D, Euler2D, Euler3D };
enum class Closure { Galerkin, TModel };

std::string to_string(SystemKind s);
std::string to_string(Closure c);
SystemKind parse_system(const std::string& s);
Closure parse_closure(const std::string& s);
int dimension_of(SystemKind s);

/// Anything the time integrators can advance: maps (v, t) to dv/dt.
class Dynamics {
 public:
  virtual ~Dynamics() = default;

  virtual const PartitionPtr& partition() const = 0;
  virtual int components() const { return partition()->dim(); }

  /// Writes dv/dt into `out`. When `unresolved_norm_sq` is non-null it also
  /// receives Σ_{k∈G} |g_k(v)|² for the same v.
  virtual void tendency(const SpectralField& v, double t, SpectralField& out,
                        double* unresolved_norm_sq = nullptr) const = 0;

  /// Σ_{k∈G} |g_k(v)|². Zero for systems without an unresolved range.
  virtual double unresolved_norm_sq(const SpectralField& v) const;

  /// The model's own dE/dt at (v, t).
  virtual double energy_rate(const SpectralField& v, double t) const;
};

/// Galerkin and t-model tendencies for Burgers / Euler, evaluated with
/// padded real FFTs.
///
/// Nonlinear term in divergence form: N_k = −i c A_k k_j (u^i u^j)^_k with
/// c = ½ for Burgers (A_k = 1) and c = 1 for Euler. The unresolved
/// tendency g is the same expression on G with u = v. The t-model adds
/// −i c t A_k k_j (v^i g^j + g^i v^j)^_k on F.
class RhsEvaluator final : public Dynamics {
 public:
  RhsEvaluator(SystemKind system, Closure closure, PartitionPtr partition);

  SystemKind system() const { return system_; }
  Closure closure() const { return closure_; }
  const PartitionPtr& partition() const override { return partition_; }

  void tendency(const SpectralField& v, double t, SpectralField& out,
                double* unresolved_norm_sq = nullptr) const override;
  double unresolved_norm_sq(const SpectralField& v) const override;
  double energy_rate(const SpectralField& v, double t) const override;

  SpectralField eval_galerkin(const SpectralField& v, double t = 0.0) const;
  SpectralField eval_unresolved_tendency(const SpectralField& v) const;
  SpectralField eval_tmodel(const SpectralField& v, double t) const;
  /// −t Σ_{k∈G} |g_k(v)|², regardless of closure.
  double energy_decay_rate(const SpectralField& v, double t) const;

 private:
  void check_input(const SpectralField& v) const;
  /// Galerkin tendency on F into `out`; g on G into `g` when non-null; the
  /// memory term is added when `with_memory` (requires g).
  void evaluate(const SpectralField& v, double t, bool with_memory, SpectralField& out,
                SpectralField* g) const;

  SystemKind system_;
  Closure closure_;
  PartitionPtr partition_;
  double coupling_;
  std::unique_ptr<PaddedTransform> transform_;
};

/// The same tendencies written as literal triad sums over p + q = k.
/// O(|F|·|F∪G|) per mode; used as the oracle for RhsEvaluator.
class DirectEvaluator final : public Dynamics {
 public:
  DirectEvaluator(SystemKind system, Closure closure, PartitionPtr partition);

  const PartitionPtr& partition() const override { return partition_; }
  void tendency(const SpectralField& v, double t, SpectralField& out,
                double* unresolved_norm_sq = nullptr) const override;
  double unresolved_norm_sq(const SpectralField& v) const override;
  double energy_rate(const SpectralField& v, double t) const override;

  SpectralField eval_galerkin(const SpectralField& v) const;
  SpectralField eval_unresolved_tendency(const SpectralField& v) const;
  SpectralField eval_tmodel(const SpectralField& v, double t) const;

 private:
  SystemKind system_;
  Closure closure_;
  PartitionPtr partition_;
  double coupling_;
};

/// Σ|·|² over G (signed spectrum) of an unresolved tendency.
double norm_sq_unresolved(const SpectralField& g);

}  // namespace tmodel
