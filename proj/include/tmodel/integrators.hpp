#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tmodel/dynamics.hpp"
#include "tmodel/errors.hpp"
#include "tmodel/series.hpp"
#include "tmodel/spectral_field.hpp"

namespace tmodel {

/// Runge-Kutta coefficients. Construction validates Σb = 1, Σb·c = ½ and,
/// for tableaux flagged symplectic, b_i a_ij + b_j a_ji − b_i b_j = 0.
class ButcherTableau {
 public:
  using Matrix = std::vector<std::vector<double>>;

  ButcherTableau(std::string name, Matrix a, std::vector<double> b, std::vector<double> c,
                 std::vector<double> b_err = {}, bool symplectic = false);

  static ButcherTableau fehlberg45();
  static ButcherTableau implicit_midpoint();

  const std::string& name() const { return name_; }
  int stages() const { return int(b_.size()); }
  const Matrix& a() const { return a_; }
  const std::vector<double>& b() const { return b_; }
  const std::vector<double>& c() const { return c_; }
  /// Embedded weights; empty when the tableau has no error estimator.
  const std::vector<double>& b_err() const { return b_err_; }
  bool symplectic() const { return symplectic_; }
  bool explicit_method() const;

  /// max_ij |b_i a_ij + b_j a_ji − b_i b_j|.
  double symplectic_defect() const { return symplectic_defect(a_, b_); }
  static double symplectic_defect(const Matrix& a, const std::vector<double>& b);

  static constexpr double kSymplecticTolerance = 1e-14;

 private:
  std::string name_;
  Matrix a_;
  std::vector<double> b_;
  std::vector<double> c_;
  std::vector<double> b_err_;
  bool symplectic_;
};

/// A step could not be completed. Carries the last good state.
class StepFailure : public Error {
 public:
  StepFailure(const std::string& what, SpectralField state, double t)
      : Error(what), state_(std::move(state)), t_(t) {}
  const SpectralField& state() const { return state_; }
  double time() const { return t_; }

 private:
  SpectralField state_;
  double t_;
};

struct StepResult {
  SpectralField state;
  double t_next = 0.0;
  double h_used = 0.0;
  double h_next = 0.0;
  /// ½‖v_{n+1}‖² − ½‖v_n‖² over F.
  double energy_decrement = 0.0;
  /// ‖g(V_j, 0)‖² per stage (implicit midpoint only).
  std::vector<double> stage_g_norms;
  double error_estimate = 0.0;
  int rejected = 0;
  int iterations = 0;
};

struct RkfParams {
  double tol = 1e-10;
  double h_min = 1e-12;
  double h_max = 1.0;
  double safety = 0.9;
  double min_factor = 0.2;
  double max_factor = 5.0;
};

/// Adaptive embedded Fehlberg 4(5) stepper with a PI step-size controller.
/// Keeps controller history between calls.
class RkfStepper {
 public:
  RkfStepper(const Dynamics& rhs, RkfParams params = {});

  /// Takes one accepted step from (v, t) starting from trial step h,
  /// shrinking h on rejection. Throws StepFailure if h drops below h_min.
  StepResult step(const SpectralField& v, double t, double h);
  const RkfParams& params() const { return params_; }

 private:
  const Dynamics& rhs_;
  RkfParams params_;
  ButcherTableau tableau_;
  std::vector<SpectralField> k_;
  SpectralField stage_;
  double err_prev_ = 1e-4;
};

StepResult rkf_step(const Dynamics& rhs, const SpectralField& v, double t, double h,
                    const RkfParams& params = {});

struct MidpointParams {
  double solver_tol = 1e-12;
  int max_iter = 50;
};

/// One implicit midpoint step: V = v + (h/2) F(V, t + h/2) by fixed-point
/// iteration in max-norm, then v + h F(V, t + h/2). Throws StepFailure if
/// the iteration does not converge within max_iter.
StepResult implicit_midpoint_step(const Dynamics& rhs, const SpectralField& v, double t, double h,
                                  const MidpointParams& params = {});

enum class Scheme { Rkf45, ImplicitMidpoint };
std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& s);

struct IntegrateParams {
  Scheme scheme = Scheme::Rkf45;
  RkfParams rkf;
  MidpointParams midpoint;
  /// Initial trial step (RKF) or fixed step (implicit midpoint).
  double h = 1e-3;
  /// Implicit midpoint may halve its step this many times on failure.
  int max_halvings = 8;
};

/// One diagnostic sample as seen by the sampler.
struct Sample {
  double t;
  double energy;
  double energy_rate;
  double divergence_residual;
  double reality_residual;
};

struct Trajectory {
  EnergySeries energy;
  DecayRateSeries decay_rate;
  SpectralField final_state;
  double t_reached = 0.0;
  long steps = 0;
  long rejected = 0;
  long rhs_evaluations = 0;
  double max_divergence_residual = 0.0;
  double max_reality_residual = 0.0;
  std::optional<std::string> failure;
};

/// t0 plus `count` log-uniform times in [t0 + (t_end − t0)·first_fraction, t_end].
std::vector<double> log_sample_times(double t0, double t_end, int count, double first_fraction = 1e-4);
/// t0 plus `count` uniform times in (t0, t_end].
std::vector<double> linear_sample_times(double t0, double t_end, int count);

/// Advances v0 from t0 to t_end, landing exactly on every sample time (and
/// on t_end) and recording energy, model dE/dt and structure residuals
/// there. Integrator failures are caught: the partial trajectory is
/// returned with `failure` set.
Trajectory integrate(const Dynamics& rhs, const SpectralField& v0, double t0, double t_end,
                     const IntegrateParams& params, const std::vector<double>& sample_times,
                     const std::function<void(const Sample&)>& on_sample = {});

}  // namespace tmodel
