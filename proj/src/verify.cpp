#include <cmath>
#include <limits>

#include "tmodel/errors.hpp"
#include "tmodel/experiment.hpp"
#include "tmodel/initial_conditions.hpp"
#include "tmodel/spectral_ops.hpp"

namespace tmodel {

namespace {

constexpr double kHandTol = 1e-13;
constexpr double kOracleTol = 1e-12;
constexpr double kConservationTol = 1e-12;
constexpr double kDissipationTol = 1e-11;

double norm2(const SpectralField& v) {
  double s = 0.0;
  for (const auto& z : v.raw()) s += std::norm(z);
  return std::sqrt(s);
}

double relative_diff(const SpectralField& a, const SpectralField& b) {
  SpectralField d = a;
  d.axpy(-1.0, b);
  const double scale = std::max(a.max_abs(), b.max_abs());
  return scale == 0.0 ? d.max_abs() : d.max_abs() / scale;
}

SystemKind system_for(int dim) {
  return dim == 1 ? SystemKind::Burgers1D : dim == 2 ? SystemKind::Euler2D : SystemKind::Euler3D;
}

void add(std::vector<CheckResult>& out, std::string name, double residual, double tol) {
  out.push_back({std::move(name), residual, tol, std::isfinite(residual) && residual <= tol});
}

}  // namespace

std::vector<CheckResult> verify_identities(const VerifyOptions& options) {
  std::vector<CheckResult> out;

  {
    const auto p = ModePartition::build(1, 1);
    const SpectralField v = init_burgers_sine(p);
    const RhsEvaluator fft(SystemKind::Burgers1D, Closure::TModel, p);
    const DirectEvaluator direct(SystemKind::Burgers1D, Closure::TModel, p);
    const WaveVector k2{{2, 0, 0}}, k1{{1, 0, 0}};
    const cplx quarter_i{0.0, 0.25}, eighth_i{0.0, 0.125};
    add(out, "hand: burgers n=1 g_2 = i/4",
        std::max(std::abs(fft.eval_unresolved_tendency(v).at(0, k2) - quarter_i),
                 std::abs(direct.eval_unresolved_tendency(v).at(0, k2) - quarter_i)),
        kHandTol);
    add(out, "hand: burgers n=1 memory term at k=1, t=1 = i/8",
        std::max(std::abs(fft.eval_tmodel(v, 1.0).at(0, k1) - eighth_i),
                 std::abs(direct.eval_tmodel(v, 1.0).at(0, k1) - eighth_i)),
        kHandTol);
    add(out, "hand: burgers n=1 decay rate at t=1 = -1/8",
        std::max(std::abs(fft.energy_decay_rate(v, 1.0) + 0.125), std::abs(direct.energy_rate(v, 1.0) + 0.125)),
        kHandTol);
    add(out, "hand: sine energy = 1/4", std::abs(energy(v) - 0.25), kHandTol);
  }
  {
    const auto p = ModePartition::build(3, 1);
    add(out, "hand: taylor-green energy = 1/8", std::abs(energy(init_taylor_green(p)) - 0.125), kHandTol);
  }

  const int small_n[4] = {0, 6, 4, 2};
  for (int dim = 1; dim <= 3; ++dim) {
    const auto p = ModePartition::build(dim, small_n[dim]);
    const SystemKind sys = system_for(dim);
    const RhsEvaluator fft(sys, Closure::TModel, p);
    const DirectEvaluator direct(sys, Closure::TModel, p);
    double oracle = 0.0, conv = 0.0, conservation = 0.0, dissipation = 0.0;
    for (int f = 0; f < options.fields; ++f) {
      const SpectralField v = random_admissible(p, options.seed + std::uint64_t(100 * dim + f));
      oracle = std::max(oracle, relative_diff(fft.eval_tmodel(v, 0.7), direct.eval_tmodel(v, 0.7)));
      oracle = std::max(oracle, relative_diff(fft.eval_galerkin(v), direct.eval_galerkin(v)));
      oracle = std::max(oracle,
                        relative_diff(fft.eval_unresolved_tendency(v), direct.eval_unresolved_tendency(v)));

      SpectralField a(p, 1), b(p, 1);
      for (std::size_t i = 0; i < p->volume(); ++i) {
        a.at(0, i) = v.at(0, i);
        b.at(0, i) = v.at(dim - 1, i);
      }
      conv = std::max(conv, relative_diff(convolve_dealiased(a, b, ModeSet::All),
                                          convolve_direct(a, b, ModeSet::All)));

      const SpectralField gal = fft.eval_galerkin(v);
      conservation = std::max(conservation, std::abs(inner_resolved(v, gal)) / (norm2(v) * norm2(gal)));
      for (double t : {0.0, 0.5, 1.0, 5.0}) {
        const SpectralField tm = fft.eval_tmodel(v, t);
        const double lhs = inner_resolved(v, tm);
        const double rhs = fft.energy_decay_rate(v, t);
        const double scale = t == 0.0 ? norm2(v) * norm2(tm) : std::abs(rhs);
        dissipation = std::max(dissipation, std::abs(lhs - rhs) / scale);
      }
    }
    const std::string tag = to_string(sys) + " n=" + std::to_string(small_n[dim]);
    add(out, "oracle: fft vs direct tendencies, " + tag, oracle, kOracleTol);
    add(out, "oracle: convolve_dealiased vs convolve_direct, " + tag, conv, kOracleTol);
    add(out, "galerkin conservation, " + tag, conservation, kConservationTol);
    add(out, "dissipation identity, " + tag, dissipation, kDissipationTol);
  }

  {
    const double a11 = options.corrupt_tableau ? 0.6 : 0.5;
    const ButcherTableau::Matrix a{{a11}};
    const std::vector<double> b{1.0};
    double defect = ButcherTableau::symplectic_defect(a, b);
    try {
      ButcherTableau("implicit_midpoint", a, b, {a11}, {}, true);
    } catch (const ConfigError&) {
      if (defect <= ButcherTableau::kSymplecticTolerance) defect = std::numeric_limits<double>::infinity();
    }
    add(out, "symplectic condition, implicit midpoint", defect, ButcherTableau::kSymplecticTolerance);
  }

  {
    const MidpointParams mp;
    struct Case {
      const char* name;
      SystemKind sys;
      int n;
    };
    for (const Case& c : {Case{"burgers1d n=4", SystemKind::Burgers1D, 4}, Case{"euler3d n=2", SystemKind::Euler3D, 2}}) {
      const auto p = ModePartition::build(dimension_of(c.sys), c.n);
      const RhsEvaluator rhs(c.sys, Closure::TModel, p);
      SpectralField v = c.sys == SystemKind::Burgers1D ? init_burgers_sine(p) : init_taylor_green(p);
      double t = 0.5, worst = 0.0, increase = 0.0;
      const double h = 0.01;
      for (int step = 0; step < 20; ++step) {
        const StepResult r = implicit_midpoint_step(rhs, v, t, h, mp);
        const double predicted = -h * (t + 0.5 * h) * r.stage_g_norms.front();
        worst = std::max(worst, std::abs(r.energy_decrement - predicted));
        increase = std::max(increase, r.energy_decrement);
        v = r.state;
        t += h;
      }
      add(out, std::string("theorem equality, implicit midpoint, ") + c.name, worst, 10.0 * mp.solver_tol);
      add(out, std::string("energy nonincreasing, implicit midpoint, ") + c.name, std::max(increase, 0.0),
          10.0 * mp.solver_tol);
    }
  }
  return out;
}

}  // namespace tmodel
