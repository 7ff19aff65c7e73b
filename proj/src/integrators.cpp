#include "tmodel/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace tmodel {

ButcherTableau::ButcherTableau(std::string name, Matrix a, std::vector<double> b, std::vector<double> c,
                               std::vector<double> b_err, bool symplectic)
    : name_(std::move(name)),
      a_(std::move(a)),
      b_(std::move(b)),
      c_(std::move(c)),
      b_err_(std::move(b_err)),
      symplectic_(symplectic) {
  const std::size_t s = b_.size();
  if (s == 0 || a_.size() != s || c_.size() != s || (!b_err_.empty() && b_err_.size() != s))
    throw ConfigError("tableau " + name_ + ": inconsistent stage counts");
  for (const auto& row : a_)
    if (row.size() != s) throw ConfigError("tableau " + name_ + ": a must be square");

  constexpr double eps = 1e-14;
  const double sum_b = std::accumulate(b_.begin(), b_.end(), 0.0);
  double sum_bc = 0.0;
  for (std::size_t i = 0; i < s; ++i) sum_bc += b_[i] * c_[i];
  if (std::abs(sum_b - 1.0) > eps) throw ConfigError("tableau " + name_ + ": weights do not sum to 1");
  if (std::abs(sum_bc - 0.5) > eps) throw ConfigError("tableau " + name_ + ": sum b_i c_i != 1/2");
  for (std::size_t i = 0; i < s; ++i) {
    const double row = std::accumulate(a_[i].begin(), a_[i].end(), 0.0);
    if (std::abs(row - c_[i]) > eps) throw ConfigError("tableau " + name_ + ": c_i != sum_j a_ij");
  }
  if (symplectic_ && symplectic_defect() > kSymplecticTolerance) {
    std::ostringstream os;
    os << "tableau " << name_ << ": flagged symplectic but b_i a_ij + b_j a_ji - b_i b_j = "
       << symplectic_defect();
    throw ConfigError(os.str());
  }
}

ButcherTableau ButcherTableau::fehlberg45() {
  Matrix a{
      {0, 0, 0, 0, 0, 0},
      {1.0 / 4, 0, 0, 0, 0, 0},
      {3.0 / 32, 9.0 / 32, 0, 0, 0, 0},
      {1932.0 / 2197, -7200.0 / 2197, 7296.0 / 2197, 0, 0, 0},
      {439.0 / 216, -8.0, 3680.0 / 513, -845.0 / 4104, 0, 0},
      {-8.0 / 27, 2.0, -3544.0 / 2565, 1859.0 / 4104, -11.0 / 40, 0},
  };
  std::vector<double> b5{16.0 / 135, 0, 6656.0 / 12825, 28561.0 / 56430, -9.0 / 50, 2.0 / 55};
  std::vector<double> b4{25.0 / 216, 0, 1408.0 / 2565, 2197.0 / 4104, -1.0 / 5, 0};
  std::vector<double> c{0, 1.0 / 4, 3.0 / 8, 12.0 / 13, 1, 1.0 / 2};
  return ButcherTableau("fehlberg45", std::move(a), std::move(b5), std::move(c), std::move(b4), false);
}

ButcherTableau ButcherTableau::implicit_midpoint() {
  return ButcherTableau("implicit_midpoint", {{0.5}}, {1.0}, {0.5}, {}, true);
}

bool ButcherTableau::explicit_method() const {
  for (std::size_t i = 0; i < a_.size(); ++i)
    for (std::size_t j = i; j < a_.size(); ++j)
      if (a_[i][j] != 0.0) return false;
  return true;
}

double ButcherTableau::symplectic_defect(const Matrix& a, const std::vector<double>& b) {
  double d = 0.0;
  const std::size_t s = b.size();
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      d = std::max(d, std::abs(b[i] * a[i][j] + b[j] * a[j][i] - b[i] * b[j]));
  return d;
}

// ---------------------------------------------------------------------------

RkfStepper::RkfStepper(const Dynamics& rhs, RkfParams params)
    : rhs_(rhs), params_(params), tableau_(ButcherTableau::fehlberg45()) {
  if (!(params_.tol > 0.0)) throw ConfigError("rkf: tolerance must be positive");
}

StepResult RkfStepper::step(const SpectralField& v, double t, double h) {
  if (!(h > 0.0)) throw UsageError("rkf: step size must be positive");
  const int s = tableau_.stages();
  if (int(k_.size()) != s || !k_[0].same_shape(v)) {
    k_.assign(std::size_t(s), SpectralField(v.partition_ptr(), v.components()));
    stage_ = SpectralField(v.partition_ptr(), v.components());
  }
  const auto& a = tableau_.a();
  const auto& b = tableau_.b();
  const auto& bh = tableau_.b_err();
  const auto& c = tableau_.c();

  StepResult res;
  rhs_.tendency(v, t, k_[0]);
  res.iterations = 1;

  const std::size_t size = v.raw().size();
  for (;;) {
    for (int i = 1; i < s; ++i) {
      auto st = stage_.raw();
      auto v0 = v.raw();
      std::copy(v0.begin(), v0.end(), st.begin());
      for (int j = 0; j < i; ++j)
        if (a[i][j] != 0.0) stage_.axpy(h * a[i][j], k_[j]);
      rhs_.tendency(stage_, t + c[i] * h, k_[i]);
      ++res.iterations;
    }
    SpectralField next = v;
    double err = 0.0;
    auto out = next.raw();
    for (std::size_t x = 0; x < size; ++x) {
      cplx inc{}, e{};
      for (int j = 0; j < s; ++j) {
        const cplx kj = k_[j].raw()[x];
        inc += b[j] * kj;
        e += (b[j] - bh[j]) * kj;
      }
      out[x] += h * inc;
      err = std::max(err, std::abs(h * e));
    }

    const double ratio = err / params_.tol;
    if (std::isfinite(err) && ratio <= 1.0) {
      double factor = params_.max_factor;
      if (ratio > 0.0)
        factor = params_.safety * std::pow(ratio, -0.7 / 5.0) * std::pow(err_prev_, 0.4 / 5.0);
      factor = std::clamp(factor, params_.min_factor, params_.max_factor);
      err_prev_ = std::max(ratio, 1e-4);
      res.energy_decrement = energy(next) - energy(v);
      res.state = std::move(next);
      res.h_used = h;
      res.t_next = t + h;
      res.h_next = std::min(h * factor, params_.h_max);
      res.error_estimate = err;
      return res;
    }

    double factor = params_.min_factor;
    if (std::isfinite(err)) factor = std::max(params_.min_factor, params_.safety * std::pow(ratio, -0.2));
    h *= std::min(factor, 1.0);
    ++res.rejected;
    if (h < params_.h_min) {
      std::ostringstream os;
      os << "rkf: step size underflow (h = " << h << " < h_min = " << params_.h_min << ") at t = " << t;
      throw StepFailure(os.str(), v, t);
    }
  }
}

StepResult rkf_step(const Dynamics& rhs, const SpectralField& v, double t, double h, const RkfParams& params) {
  RkfStepper stepper(rhs, params);
  return stepper.step(v, t, h);
}

StepResult implicit_midpoint_step(const Dynamics& rhs, const SpectralField& v, double t, double h,
                                  const MidpointParams& params) {
  if (!(h > 0.0)) throw UsageError("implicit midpoint: step size must be positive");
  if (!(params.solver_tol > 0.0)) throw ConfigError("implicit midpoint: solver tolerance must be positive");
  const double tm = t + 0.5 * h;
  SpectralField stage = v;
  SpectralField f(v.partition_ptr(), v.components());
  StepResult res;
  for (int it = 1; it <= params.max_iter; ++it) {
    double g_norm = 0.0;
    rhs.tendency(stage, tm, f, &g_norm);
    SpectralField next_stage = v;
    next_stage.axpy(0.5 * h, f);
    double diff = 0.0;
    for (std::size_t x = 0; x < v.raw().size(); ++x)
      diff = std::max(diff, std::abs(next_stage.raw()[x] - stage.raw()[x]));
    if (!std::isfinite(diff)) break;
    if (diff <= params.solver_tol) {
      res.state = v;
      res.state.axpy(h, f);
      res.t_next = t + h;
      res.h_used = h;
      res.h_next = h;
      res.energy_decrement = energy(res.state) - energy(v);
      res.stage_g_norms = {g_norm};
      res.iterations = it;
      return res;
    }
    stage = std::move(next_stage);
  }
  std::ostringstream os;
  os << "implicit midpoint: fixed-point iteration did not converge in " << params.max_iter
     << " iterations at t = " << t << " (h = " << h << ")";
  throw StepFailure(os.str(), v, t);
}

std::string to_string(Scheme s) { return s == Scheme::Rkf45 ? "rkf45" : "implicit-midpoint"; }

Scheme parse_scheme(const std::string& s) {
  if (s == "rkf45" || s == "rkf") return Scheme::Rkf45;
  if (s == "implicit-midpoint" || s == "midpoint") return Scheme::ImplicitMidpoint;
  throw ConfigError("unknown scheme '" + s + "' (expected rkf45 or implicit-midpoint)");
}

std::vector<double> log_sample_times(double t0, double t_end, int count, double first_fraction) {
  std::vector<double> out{t0};
  if (count <= 0) return out;
  const double first = (t_end - t0) * first_fraction;
  if (count == 1) {
    out.push_back(t_end);
    return out;
  }
  const double lo = std::log(first), hi = std::log(t_end - t0);
  for (int i = 0; i < count; ++i) {
    const double x = lo + (hi - lo) * double(i) / double(count - 1);
    out.push_back(i == count - 1 ? t_end : t0 + std::exp(x));
  }
  return out;
}

std::vector<double> linear_sample_times(double t0, double t_end, int count) {
  std::vector<double> out{t0};
  for (int i = 1; i <= count; ++i) out.push_back(i == count ? t_end : t0 + (t_end - t0) * double(i) / count);
  return out;
}

Trajectory integrate(const Dynamics& rhs, const SpectralField& v0, double t0, double t_end,
                     const IntegrateParams& params, const std::vector<double>& sample_times,
                     const std::function<void(const Sample&)>& on_sample) {
  if (!(t_end > t0)) throw UsageError("integrate: t_end must exceed t0");
  if (!(params.h > 0.0)) throw ConfigError("integrate: step size must be positive");

  Trajectory tr;
  SpectralField v = v0;
  double t = t0;

  auto record = [&](double ts) {
    Sample s{ts, energy(v), rhs.energy_rate(v, ts), divergence_residual(v), reality_residual(v)};
    tr.energy.push(s.t, s.energy);
    tr.decay_rate.push(s.t, s.energy_rate);
    tr.max_divergence_residual = std::max(tr.max_divergence_residual, s.divergence_residual);
    tr.max_reality_residual = std::max(tr.max_reality_residual, s.reality_residual);
    if (on_sample) on_sample(s);
  };

  std::vector<double> targets;
  for (double s : sample_times)
    if (s > t0 && s < t_end) targets.push_back(s);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  const bool sample_end = std::find(sample_times.begin(), sample_times.end(), t_end) != sample_times.end();
  targets.push_back(t_end);
  if (std::find(sample_times.begin(), sample_times.end(), t0) != sample_times.end()) record(t0);

  RkfStepper rkf(rhs, params.rkf);
  double h = params.h;
  std::size_t next = 0;
  try {
    while (next < targets.size()) {
      const double target = targets[next];
      double h_try = h;
      bool clipped = false;
      if (target - t <= 1.01 * h) {
        h_try = target - t;
        clipped = true;
      }
      StepResult res;
      if (params.scheme == Scheme::Rkf45) {
        res = rkf.step(v, t, h_try);
        tr.rejected += res.rejected;
        const bool full = res.h_used == h_try;
        h = (clipped && full) ? std::max(res.h_next, h) : res.h_next;
        clipped = clipped && full;
      } else {
        for (int halving = 0;; ++halving) {
          try {
            res = implicit_midpoint_step(rhs, v, t, h_try, params.midpoint);
            break;
          } catch (const StepFailure&) {
            if (halving >= params.max_halvings) throw;
            h_try *= 0.5;
            clipped = false;
            ++tr.rejected;
          }
        }
        if (!clipped) h = std::min(h, h_try);
      }
      tr.rhs_evaluations += res.iterations;
      ++tr.steps;
      if (!std::isfinite(energy(res.state))) throw StepFailure("integrate: non-finite energy", v, t);
      v = std::move(res.state);
      t = clipped ? target : t + res.h_used;
      if (clipped) {
        const bool last = next + 1 == targets.size();
        if (!last || sample_end) record(t);
        ++next;
      }
    }
  } catch (const StepFailure& e) {
    tr.failure = e.what();
    tr.final_state = e.state();
    tr.t_reached = e.time();
    return tr;
  }
  tr.final_state = std::move(v);
  tr.t_reached = t;
  return tr;
}

}  // namespace tmodel
