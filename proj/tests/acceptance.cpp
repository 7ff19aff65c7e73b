// End-to-end acceptance runs. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails that was not declared with
// --known-failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "tmodel/experiment.hpp"
#include "tmodel/initial_conditions.hpp"

using namespace tmodel;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::set<int> g_failed;

void report(int id, const std::string& title, const Outcome& o) {
  std::printf("[%s] criterion %2d  %-34s %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) g_failed.insert(id);
}

Outcome guarded(const std::function<Outcome()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double norm(const SpectralField& v) {
  double s = 0.0;
  for (const auto& z : v.raw()) s += std::norm(z);
  return std::sqrt(s);
}

double rel_diff(const SpectralField& a, const SpectralField& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.raw().size(); ++i) d = std::max(d, std::abs(a.raw()[i] - b.raw()[i]));
  const double scale = std::max(a.max_abs(), b.max_abs());
  return scale > 0.0 ? d / scale : d;
}

SystemKind system_of(int dim) {
  return dim == 1 ? SystemKind::Burgers1D : dim == 2 ? SystemKind::Euler2D : SystemKind::Euler3D;
}

ExperimentResult run_preset(const std::string& name, const std::string& out_root,
                            const std::function<void(RunConfig&)>& tweak = {}) {
  RunConfig c = make_preset(name);
  if (tweak) tweak(c);
  c.output_dir = out_root + "/" + (c.output_dir.substr(c.output_dir.find('/') + 1));
  c.progress_interval = 60.0;
  const auto start = std::chrono::steady_clock::now();
  auto r = run_experiment(c, &std::cerr);
  std::fprintf(stderr, "  %s to t = %g: %.1f s, %ld steps\n", name.c_str(), r.manifest.t_reached,
               std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), r.manifest.steps);
  return r;
}

struct Structure {
  double divergence = 0.0;
  double reality = 0.0;
  void absorb(const RunManifest& m) {
    divergence = std::max(divergence, m.max_divergence_residual);
    reality = std::max(reality, m.max_reality_residual);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string out = "acceptance_out";
  std::vector<int> known;
  bool full3d = std::getenv("TMODEL_ACCEPT_FULL3D") != nullptr;
  app.add_option("--out", out, "Directory for run outputs");
  app.add_option("--known-failure", known, "Criterion expected to fail (documented)");
  app.add_flag("--full-3d", full3d, "Also run the 32^3 Euler run to t = 100 (hours)");
  CLI11_PARSE(app, argc, argv);

  // 10: hand values on the four-mode Burgers system and Taylor-Green.
  report(10, "hand values", guarded([] {
           const auto p1 = ModePartition::build(1, 1);
           const SpectralField v = init_burgers_sine(p1);
           const RhsEvaluator fft(SystemKind::Burgers1D, Closure::TModel, p1);
           const DirectEvaluator direct(SystemKind::Burgers1D, Closure::TModel, p1);
           const WaveVector k2{{2, 0, 0}};
           const cplx g2{0.0, 0.25};
           double worst = std::abs(fft.eval_unresolved_tendency(v).at(0, k2) - g2);
           worst = std::max(worst, std::abs(direct.eval_unresolved_tendency(v).at(0, k2) - g2));
           worst = std::max(worst, std::abs(fft.energy_decay_rate(v, 1.0) + 0.125));
           worst = std::max(worst, std::abs(direct.energy_rate(v, 1.0) + 0.125));
           const double tg = energy(init_taylor_green(ModePartition::build(3, 8)));
           worst = std::max(worst, std::abs(tg - 0.125));
           return Outcome{worst <= 1e-13, fmt("max deviation %.2e (tol 1e-13)", worst)};
         }));

  // 7: FFT path against literal triad sums.
  report(7, "fft vs direct-sum oracle", guarded([] {
           double worst = 0.0;
           for (int dim = 1; dim <= 3; ++dim) {
             const int n = dim == 3 ? 3 : 6;
             const auto p = ModePartition::build(dim, n);
             const RhsEvaluator fft(system_of(dim), Closure::TModel, p);
             const DirectEvaluator direct(system_of(dim), Closure::TModel, p);
             for (std::uint64_t s = 0; s < 20; ++s) {
               const SpectralField v = random_admissible(p, 500 + 100 * dim + s);
               worst = std::max(worst, rel_diff(fft.eval_galerkin(v), direct.eval_galerkin(v)));
               worst = std::max(worst, rel_diff(fft.eval_unresolved_tendency(v), direct.eval_unresolved_tendency(v)));
               worst = std::max(worst, rel_diff(fft.eval_tmodel(v, 0.9), direct.eval_tmodel(v, 0.9)));
             }
           }
           return Outcome{worst <= 1e-12, fmt("max relative difference %.2e over 60 fields (tol 1e-12)", worst)};
         }));

  // 5: Re<v, T(v,t)> = -t sum_G |g|^2 as an algebraic identity.
  report(5, "dissipation identity", guarded([] {
           double worst = 0.0;
           const int n_of[4] = {0, 16, 16, 8};
           for (int dim = 1; dim <= 3; ++dim) {
             const auto p = ModePartition::build(dim, n_of[dim]);
             const RhsEvaluator rhs(system_of(dim), Closure::TModel, p);
             for (std::uint64_t s = 0; s < 20; ++s) {
               const SpectralField v = random_admissible(p, 900 + 100 * dim + s);
               for (double t : {0.0, 0.5, 1.0, 5.0}) {
                 const SpectralField f = rhs.eval_tmodel(v, t);
                 const double lhs = inner_resolved(v, f), rate = rhs.energy_decay_rate(v, t);
                 // At t = 0 the rate is exactly zero; measure against |v||f| instead.
                 const double scale = t == 0.0 ? norm(v) * norm(f) : std::abs(rate);
                 worst = std::max(worst, std::abs(lhs - rate) / scale);
               }
             }
           }
           return Outcome{worst <= 1e-11, fmt("max relative residual %.2e, 20 fields x 3 systems x 4 times", worst)};
         }));

  // 6: implicit midpoint per-step energy equality and monotonicity.
  report(6, "implicit-midpoint energy equality", guarded([] {
           const MidpointParams mp;
           double worst = 0.0, rise = 0.0;
           // Small cutoffs put the Taylor-Green cascade into G from the first step.
           const std::pair<SystemKind, int> cases[] = {
               {SystemKind::Burgers1D, 16}, {SystemKind::Burgers1D, 4}, {SystemKind::Euler3D, 2}, {SystemKind::Euler3D, 4}};
           for (const auto& [sys, n] : cases) {
             const auto p = ModePartition::build(dimension_of(sys), n);
             const RhsEvaluator rhs(sys, Closure::TModel, p);
             SpectralField v = sys == SystemKind::Burgers1D ? init_burgers_sine(p) : init_taylor_green(p);
             double t = 0.0, e = energy(v);
             const double h = 0.01;
             for (int step = 0; step < 100; ++step) {
               const StepResult r = implicit_midpoint_step(rhs, v, t, h, mp);
               worst = std::max(worst, std::abs(r.energy_decrement + h * (t + h / 2) * r.stage_g_norms[0]));
               const double e_next = energy(r.state);
               rise = std::max(rise, e_next - e);
               e = e_next;
               v = r.state;
               t += h;
             }
           }
           const double tol = 10 * mp.solver_tol;
           return Outcome{worst <= tol && rise <= mp.solver_tol,
                          fmt("max |dE - predicted| %.2e (tol %.0e), max energy rise %.2e", worst, tol, rise)};
         }));

  // 8: Galerkin trajectories conserve energy.
  report(8, "galerkin energy conservation", guarded([] {
           double worst = 0.0;
           std::string notes;
           for (int dim : {2, 3}) {
             const auto p = ModePartition::build(dim, dim == 2 ? 16 : 8);
             const RhsEvaluator rhs(system_of(dim), Closure::Galerkin, p);
             const SpectralField v0 = dim == 2 ? init_random_isotropic(p, SpectrumProfile::exponential(20070101))
                                               : init_taylor_green(p);
             const auto tr = integrate(rhs, v0, 0.0, 5.0, {}, linear_sample_times(0.0, 5.0, 100));
             if (tr.failure) return Outcome{false, "integration failed: " + *tr.failure};
             const double e0 = tr.energy.samples().front().value;
             double d = 0.0;
             for (const auto& s : tr.energy.samples()) d = std::max(d, std::abs(s.value - e0) / e0);
             worst = std::max(worst, d);
             notes += fmt(" %dD %.2e", dim, d);
           }
           return Outcome{worst <= 1e-8, "max relative energy change" + notes + " (tol 1e-8)"};
         }));

  Structure structure;

  // 1 and 2: Burgers.
  std::optional<ExperimentResult> burgers;
  try {
    burgers = run_preset("burgers-n32", out);
    structure.absorb(burgers->manifest);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "burgers run failed: %s\n", e.what());
  }
  report(1, "burgers decay exponent", guarded([&] {
           if (!burgers || !burgers->manifest.fit) return Outcome{false, "no fit available"};
           const auto& f = *burgers->manifest.fit;
           return Outcome{f.exponent >= -2.05 && f.exponent <= -1.90,
                          fmt("exponent %.5f +- %.1e on [%g, %g], bracket [-2.05, -1.90]", f.exponent,
                              f.standard_error, f.window.lo, f.window.hi)};
         }));
  report(2, "burgers decay-rate peak", guarded([&] {
           if (!burgers || burgers->manifest.peaks.empty()) return Outcome{false, "no peak found"};
           const double t = burgers->manifest.peaks.front().t;
           return Outcome{t >= 1.0 && t <= 1.5, fmt("first peak at t = %.4f, bracket [1.0, 1.5]", t)};
         }));

  // 4: 3D Taylor-Green first spike at reduced resolution.
  report(4, "euler3d first decay-rate spike", guarded([&] {
           const auto r = run_preset("euler3d-n16-short", out);
           structure.absorb(r.manifest);
           if (r.manifest.failure) return Outcome{false, "integration failed: " + *r.manifest.failure};
           if (r.manifest.peaks.empty()) return Outcome{false, "no peak found"};
           const double t = r.manifest.peaks.front().t;
           return Outcome{t >= 3.5 && t <= 7.0, fmt("first peak at t = %.3f, bracket [3.5, 7.0]", t)};
         }));

  // 3: 2D Euler near-conservation, short and full horizons.
  report(3, "euler2d near-conservation", guarded([&] {
           const auto shortrun = run_preset("euler2d-n32", out, [](RunConfig& c) {
             c.t_end = 10.0;
             c.fit_window = TimeWindow{1.0, 10.0};
             c.output_dir = "out/euler2d-n32-t10";
           });
           structure.absorb(shortrun.manifest);
           const auto full = run_preset("euler2d-n32", out);
           structure.absorb(full.manifest);
           if (shortrun.manifest.failure || full.manifest.failure) return Outcome{false, "integration failed"};
           if (!full.manifest.fit) return Outcome{false, "no fit available"};
           const double d10 = shortrun.manifest.relative_energy_drop, d100 = full.manifest.relative_energy_drop;
           const double slope = full.manifest.fit->exponent;
           return Outcome{d10 < 3e-3 && d100 < 1e-2 && std::abs(slope) < 1e-2,
                          fmt("drop %.3f%% at t=10 (< 0.3%%), %.3f%% at t=100 (< 1%%), slope %.5f (|.| < 0.01)",
                              100 * d10, 100 * d100, slope)};
         }));

  // 9: structure residuals along all of the above t-model runs.
  report(9, "structure preservation", guarded([&] {
           return Outcome{structure.divergence <= 1e-9 && structure.reality <= 1e-12,
                          fmt("max |k.v| %.2e (tol 1e-9), max reality residual %.2e (tol 1e-12)",
                              structure.divergence, structure.reality)};
         }));

  if (full3d) {
    const auto r = guarded([&] {
      const auto run = run_preset("euler3d-n32", out);
      if (!run.manifest.fit) return Outcome{false, "no fit available"};
      const double a = run.manifest.fit->exponent;
      return Outcome{a >= -2.1 && a <= -1.5, fmt("exponent %.4f, bracket [-2.1, -1.5]", a)};
    });
    std::printf("[%s] optional      euler3d 32^3 decay exponent        %s\n", r.pass ? "PASS" : "FAIL", r.detail.c_str());
  } else {
    std::printf("[SKIP] optional      euler3d 32^3 decay exponent        set TMODEL_ACCEPT_FULL3D=1 or --full-3d\n");
  }

  const std::set<int> expected(known.begin(), known.end());
  int unexpected = 0;
  for (int id : g_failed)
    if (!expected.count(id)) ++unexpected;
  for (int id : expected)
    if (!g_failed.count(id)) std::printf("note: criterion %d was declared a known failure but passed\n", id);
  std::printf("%zu of 10 criteria passed; %d unexpected failure(s)\n", 10 - g_failed.size(), unexpected);
  return unexpected == 0 ? 0 : 1;
}
