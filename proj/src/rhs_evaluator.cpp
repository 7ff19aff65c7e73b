#include <algorithm>
#include <array>
#include <vector>

#include "tmodel/dynamics.hpp"
#include "tmodel/errors.hpp"
#include "tmodel/spectral_ops.hpp"

namespace tmodel {

std::string to_string(SystemKind s) {
  switch (s) {
    case SystemKind::Burgers1D: return "burgers1d";
    case SystemKind::Euler2D: return "euler2d";
    case SystemKind::Euler3D: return "euler3d";
  }
  return "?";
}

std::string to_string(Closure c) { return c == Closure::Galerkin ? "galerkin" : "tmodel"; }

SystemKind parse_system(const std::string& s) {
  if (s == "burgers1d" || s == "burgers") return SystemKind::Burgers1D;
  if (s == "euler2d") return SystemKind::Euler2D;
  if (s == "euler3d") return SystemKind::Euler3D;
  throw ConfigError("unknown system '" + s + "' (expected burgers1d, euler2d or euler3d)");
}

Closure parse_closure(const std::string& s) {
  if (s == "galerkin") return Closure::Galerkin;
  if (s == "tmodel" || s == "t-model") return Closure::TModel;
  throw ConfigError("unknown closure '" + s + "' (expected galerkin or tmodel)");
}

int dimension_of(SystemKind s) {
  switch (s) {
    case SystemKind::Burgers1D: return 1;
    case SystemKind::Euler2D: return 2;
    case SystemKind::Euler3D: return 3;
  }
  return 0;
}

double Dynamics::unresolved_norm_sq(const SpectralField&) const { return 0.0; }
double Dynamics::energy_rate(const SpectralField&, double) const { return 0.0; }

double norm_sq_unresolved(const SpectralField& g) {
  double s = 0.0;
  for (int c = 0; c < g.components(); ++c)
    for (std::size_t i : g.partition().unresolved()) s += std::norm(g.at(c, i));
  return s;
}

namespace {

constexpr cplx kMinusI{0.0, -1.0};

void check_partition(SystemKind system, const PartitionPtr& partition) {
  if (!partition) throw ConfigError("evaluator: null partition");
  if (partition->dim() != dimension_of(system))
    throw ConfigError("evaluator: " + to_string(system) + " needs a " +
                      std::to_string(dimension_of(system)) + "D partition");
}

double coupling_for(SystemKind system) { return system == SystemKind::Burgers1D ? 0.5 : 1.0; }

/// Index of the symmetric pair (i, j) in packed storage.
int pair_index(int i, int j, int d) {
  if (i > j) std::swap(i, j);
  return i * d - i * (i - 1) / 2 + (j - i);
}

/// −i c A_k w, with A_k the identity in 1D.
CVec3 finish(const WaveVector& k, CVec3 w, int d, double scale) {
  if (d > 1) w = leray_apply(k, w);
  for (int c = 0; c < d; ++c) w[c] *= kMinusI * scale;
  return w;
}

/// For every canonical slot in `set`, forms k_j H_ij and writes
/// −i·scale·A_k(...) into target at k and its conjugate at −k.
void gather(const PaddedTransform& tr, const std::vector<FftBuffer<cplx>>& halves, ModeSet set,
            double scale, bool accumulate, SpectralField& target) {
  const int d = tr.partition().dim();
  for (const auto& slot : tr.canonical(set)) {
    CVec3 w{};
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) w[i] += double(slot.k.c[j]) * halves[pair_index(i, j, d)][slot.half];
    w = finish(slot.k, w, d, scale);
    for (int c = 0; c < d; ++c) {
      if (accumulate) {
        target.at(c, slot.pos) += w[c];
        target.at(c, slot.neg) += std::conj(w[c]);
      } else {
        target.at(c, slot.pos) = w[c];
        target.at(c, slot.neg) = std::conj(w[c]);
      }
    }
  }
}

}  // namespace

RhsEvaluator::RhsEvaluator(SystemKind system, Closure closure, PartitionPtr partition)
    : system_(system), closure_(closure), partition_(std::move(partition)) {
  check_partition(system_, partition_);
  coupling_ = coupling_for(system_);
  transform_ = std::make_unique<PaddedTransform>(partition_);
}

void RhsEvaluator::check_input(const SpectralField& v) const {
  if (!v.partition_ptr() || !(v.partition() == *partition_) || v.components() != partition_->dim())
    throw UsageError("evaluator: field does not match the evaluator's partition");
  if (v.max_abs_outside(ModeSet::Resolved) != 0.0)
    throw UsageError("evaluator: input field has support outside the resolved set F");
}

void RhsEvaluator::evaluate(const SpectralField& v, double t, bool with_memory, SpectralField& out,
                            SpectralField* g) const {
  const PaddedTransform& tr = *transform_;
  const int d = partition_->dim();
  const int npairs = d * (d + 1) / 2;
  const std::size_t nr = tr.real_size();

  out.set_zero();
  std::vector<FftBuffer<double>> u;
  for (int i = 0; i < d; ++i) {
    u.emplace_back(nr);
    tr.to_physical(v.component(i), ModeSet::Resolved, u.back().span());
  }
  std::vector<FftBuffer<cplx>> halves;
  for (int p = 0; p < npairs; ++p) halves.emplace_back(tr.half_size());
  FftBuffer<double> prod(nr);

  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      for (std::size_t x = 0; x < nr; ++x) prod[x] = u[i][x] * u[j][x];
      tr.to_half_spectrum(prod.span(), halves[pair_index(i, j, d)].span());
    }
  gather(tr, halves, ModeSet::Resolved, coupling_, false, out);
  if (!g) return;
  g->set_zero();
  gather(tr, halves, ModeSet::Unresolved, coupling_, false, *g);
  if (!with_memory || t == 0.0) return;

  std::vector<FftBuffer<double>> gp;
  for (int i = 0; i < d; ++i) {
    gp.emplace_back(nr);
    tr.to_physical(g->component(i), ModeSet::Unresolved, gp.back().span());
  }
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      for (std::size_t x = 0; x < nr; ++x) prod[x] = u[i][x] * gp[j][x] + gp[i][x] * u[j][x];
      tr.to_half_spectrum(prod.span(), halves[pair_index(i, j, d)].span());
    }
  gather(tr, halves, ModeSet::Resolved, coupling_ * t, true, out);
}

void RhsEvaluator::tendency(const SpectralField& v, double t, SpectralField& out,
                            double* unresolved_norm_sq) const {
  if (!out.same_shape(v)) out = SpectralField(partition_);
  const bool memory = closure_ == Closure::TModel;
  if (!memory && !unresolved_norm_sq) {
    evaluate(v, t, false, out, nullptr);
    return;
  }
  SpectralField g(partition_);
  evaluate(v, t, memory, out, &g);
  if (unresolved_norm_sq) *unresolved_norm_sq = norm_sq_unresolved(g);
}

double RhsEvaluator::unresolved_norm_sq(const SpectralField& v) const {
  return norm_sq_unresolved(eval_unresolved_tendency(v));
}

double RhsEvaluator::energy_rate(const SpectralField& v, double t) const {
  return closure_ == Closure::TModel ? energy_decay_rate(v, t) : 0.0;
}

SpectralField RhsEvaluator::eval_galerkin(const SpectralField& v, double t) const {
  check_input(v);
  SpectralField out(partition_);
  evaluate(v, t, false, out, nullptr);
  return out;
}

SpectralField RhsEvaluator::eval_unresolved_tendency(const SpectralField& v) const {
  check_input(v);
  SpectralField out(partition_), g(partition_);
  evaluate(v, 0.0, false, out, &g);
  return g;
}

SpectralField RhsEvaluator::eval_tmodel(const SpectralField& v, double t) const {
  check_input(v);
  if (t < 0.0) throw UsageError("eval_tmodel: time must be nonnegative");
  SpectralField out(partition_), g(partition_);
  evaluate(v, t, true, out, &g);
  return out;
}

double RhsEvaluator::energy_decay_rate(const SpectralField& v, double t) const {
  if (t == 0.0) return 0.0;
  return -t * unresolved_norm_sq(v);
}

// ---------------------------------------------------------------------------

DirectEvaluator::DirectEvaluator(SystemKind system, Closure closure, PartitionPtr partition)
    : system_(system), closure_(closure), partition_(std::move(partition)) {
  check_partition(system_, partition_);
  coupling_ = coupling_for(system_);
}

namespace {

CVec3 load(const SpectralField& f, std::size_t idx, int d) {
  CVec3 a{};
  for (int c = 0; c < d; ++c) a[c] = f.at(c, idx);
  return a;
}

cplx kdot(const WaveVector& k, const CVec3& a) {
  return double(k.c[0]) * a[0] + double(k.c[1]) * a[1] + double(k.c[2]) * a[2];
}

/// Σ_{p∈P, q=k−p∈Q} (k·x_p) y_q for one output mode k.
CVec3 triad_sum(const ModePartition& part, const WaveVector& k, const SpectralField& x, ModeSet xs,
                const SpectralField& y, ModeSet ys) {
  const int d = part.dim();
  CVec3 acc{};
  const auto& plist = xs == ModeSet::Resolved ? part.resolved() : part.unresolved();
  for (std::size_t ip : plist) {
    const WaveVector p = part.wavevector(ip);
    const WaveVector q = k - p;
    if (!part.in_set(q, ys)) continue;
    const cplx s = kdot(k, load(x, ip, d));
    const CVec3 yq = load(y, part.index(q), d);
    for (int c = 0; c < d; ++c) acc[c] += s * yq[c];
  }
  return acc;
}

void store(SpectralField& f, std::size_t idx, const CVec3& a, int d, bool add) {
  for (int c = 0; c < d; ++c) {
    if (add)
      f.at(c, idx) += a[c];
    else
      f.at(c, idx) = a[c];
  }
}

}  // namespace

SpectralField DirectEvaluator::eval_galerkin(const SpectralField& v) const {
  const auto& part = *partition_;
  const int d = part.dim();
  SpectralField out(partition_);
  for (std::size_t ik : part.resolved()) {
    const WaveVector k = part.wavevector(ik);
    store(out, ik, finish(k, triad_sum(part, k, v, ModeSet::Resolved, v, ModeSet::Resolved), d, coupling_),
          d, false);
  }
  return out;
}

SpectralField DirectEvaluator::eval_unresolved_tendency(const SpectralField& v) const {
  const auto& part = *partition_;
  const int d = part.dim();
  SpectralField g(partition_);
  for (std::size_t iq : part.unresolved()) {
    const WaveVector q = part.wavevector(iq);
    store(g, iq, finish(q, triad_sum(part, q, v, ModeSet::Resolved, v, ModeSet::Resolved), d, coupling_),
          d, false);
  }
  return g;
}

SpectralField DirectEvaluator::eval_tmodel(const SpectralField& v, double t) const {
  if (t < 0.0) throw UsageError("eval_tmodel: time must be nonnegative");
  const auto& part = *partition_;
  const int d = part.dim();
  SpectralField out = eval_galerkin(v);
  const SpectralField g = eval_unresolved_tendency(v);
  for (std::size_t ik : part.resolved()) {
    const WaveVector k = part.wavevector(ik);
    const CVec3 a = triad_sum(part, k, v, ModeSet::Resolved, g, ModeSet::Unresolved);
    const CVec3 b = triad_sum(part, k, g, ModeSet::Unresolved, v, ModeSet::Resolved);
    CVec3 s{};
    for (int c = 0; c < d; ++c) s[c] = a[c] + b[c];
    store(out, ik, finish(k, s, d, coupling_ * t), d, true);
  }
  return out;
}

void DirectEvaluator::tendency(const SpectralField& v, double t, SpectralField& out,
                               double* unresolved_norm_sq) const {
  out = closure_ == Closure::TModel ? eval_tmodel(v, t) : eval_galerkin(v);
  if (unresolved_norm_sq) *unresolved_norm_sq = norm_sq_unresolved(eval_unresolved_tendency(v));
}

double DirectEvaluator::unresolved_norm_sq(const SpectralField& v) const {
  return norm_sq_unresolved(eval_unresolved_tendency(v));
}

double DirectEvaluator::energy_rate(const SpectralField& v, double t) const {
  return closure_ == Closure::TModel ? -t * unresolved_norm_sq(v) : 0.0;
}

}  // namespace tmodel
