#include "squeeze/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "squeeze/analysis.hpp"
#include "squeeze/errors.hpp"
#include "squeeze/format.hpp"

namespace squeeze {
namespace {

const Complex kMinusI{0.0, -1.0};

// Apply(t, v, out) writes H(t) v into out.
template <class Apply>
Eigen::VectorXcd rk4_step(const Eigen::VectorXcd& psi, double t, double dt, Apply& apply) {
  Eigen::VectorXcd hv(psi.size());
  apply(t, psi, hv);
  Eigen::VectorXcd k1 = kMinusI * hv;
  apply(t + 0.5 * dt, psi + 0.5 * dt * k1, hv);
  Eigen::VectorXcd k2 = kMinusI * hv;
  apply(t + 0.5 * dt, psi + 0.5 * dt * k2, hv);
  Eigen::VectorXcd k3 = kMinusI * hv;
  apply(t + dt, psi + dt * k3, hv);
  return psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + kMinusI * hv);
}

// Dense path: H(t) is rebuilt only for times not seen in the last few calls,
// which covers the shared midpoint and step boundaries of RK4.
class DenseApply {
 public:
  explicit DenseApply(const HamiltonianFn& h) : h_(h) {}

  void operator()(double t, const Eigen::VectorXcd& v, Eigen::VectorXcd& out) {
    out.noalias() = matrix_at(t) * v;
  }

 private:
  const OperatorMatrix& matrix_at(double t) {
    for (const auto& [time, m] : cache_) {
      if (time == t) return m;
    }
    if (cache_.size() == kSlots) cache_.erase(cache_.begin());
    cache_.emplace_back(t, h_(t));
    return cache_.back().second;
  }

  static constexpr std::size_t kSlots = 6;
  const HamiltonianFn& h_;
  std::vector<std::pair<double, OperatorMatrix>> cache_;
};

class DrivenApply {
 public:
  explicit DrivenApply(const DrivenHamiltonian& h) : h_(h) {}
  void operator()(double t, const Eigen::VectorXcd& v, Eigen::VectorXcd& out) { h_.apply(t, v, out); }

 private:
  const DrivenHamiltonian& h_;
};

template <class Apply>
class Integrator {
 public:
  Integrator(const StateVector& psi0, Apply apply, const EvolutionConfig& cfg)
      : basis_(psi0.basis()), kind_(psi0.kind()), apply_(std::move(apply)), cfg_(cfg) {}

  Trajectory run(const StateVector& psi0) {
    Trajectory out;
    out.samples.push_back({0.0, psi0});
    if (cfg_.t_final == 0.0) return out;

    if (cfg_.method == StepMethod::FixedRk4) {
      run_fixed(psi0.amplitudes(), out);
    } else {
      run_adaptive(psi0.amplitudes(), out);
    }
    return out;
  }

 private:
  void finish_step(Eigen::VectorXcd& psi, double t, Trajectory& out) {
    const double norm = psi.norm();
    out.max_norm_correction = std::max(out.max_norm_correction, std::abs(norm - 1.0));
    psi /= norm;
    ++out.steps;

    const StateVector state(basis_, kind_, psi);
    const double leak = tail_probability(state);
    out.max_leakage = std::max(out.max_leakage, leak);
    if (leak > cfg_.leakage_threshold) {
      if (cfg_.leakage_policy == LeakagePolicy::Throw) {
        std::ostringstream msg;
        msg << "evolve_td: Fock-tail leakage " << leak << " exceeds " << cfg_.leakage_threshold
            << " at t = " << t << " (n_max = " << basis_.n_max() << ")";
        throw TruncationError(msg.str());
      }
      out.leakage_flagged = true;
    }
  }

  void record(const Eigen::VectorXcd& psi, double t, Trajectory& out, bool force) {
    if (force || out.steps % std::max(1, cfg_.record_every) == 0) {
      out.samples.push_back({t, StateVector(basis_, kind_, psi)});
    }
  }

  void run_fixed(Eigen::VectorXcd psi, Trajectory& out) {
    const long n_steps =
        std::max(1L, static_cast<long>(std::ceil(cfg_.t_final / cfg_.dt - 1e-9)));
    const double dt = cfg_.t_final / static_cast<double>(n_steps);
    for (long k = 0; k < n_steps; ++k) {
      const double t = dt * static_cast<double>(k);
      const bool last = k + 1 == n_steps;
      psi = rk4_step(psi, t, last ? cfg_.t_final - t : dt, apply_);
      const double t1 = last ? cfg_.t_final : dt * static_cast<double>(k + 1);
      finish_step(psi, t1, out);
      record(psi, t1, out, last);
    }
  }

  void run_adaptive(Eigen::VectorXcd psi, Trajectory& out) {
    const double dt_max = cfg_.dt;
    double dt = dt_max;
    double t = 0.0;
    while (t < cfg_.t_final) {
      const bool last = t + dt >= cfg_.t_final * (1.0 - 1e-12);
      const double step = last ? cfg_.t_final - t : dt;

      const Eigen::VectorXcd full = rk4_step(psi, t, step, apply_);
      Eigen::VectorXcd half = rk4_step(psi, t, 0.5 * step, apply_);
      half = rk4_step(half, t + 0.5 * step, 0.5 * step, apply_);
      const double err = (half - full).norm();

      if (err <= cfg_.tolerance || step <= dt_max * 1e-9) {
        psi = half;
        t = last ? cfg_.t_final : t + step;
        finish_step(psi, t, out);
        record(psi, t, out, last);
      } else {
        ++out.rejected_steps;
      }
      const double factor = err > 0.0 ? 0.9 * std::pow(cfg_.tolerance / err, 0.2) : 2.0;
      dt = std::min(dt_max, step * std::clamp(factor, 0.2, 2.0));
    }
  }

  FockBasis basis_;
  BasisKind kind_;
  Apply apply_;
  const EvolutionConfig& cfg_;
};

void check_config(const StateVector& psi0, const EvolutionConfig& cfg) {
  if (!(cfg.t_final >= 0.0) || !std::isfinite(cfg.t_final)) {
    throw std::invalid_argument("evolve_td: t_final must be finite and >= 0");
  }
  if (cfg.t_final > 0.0 && !(cfg.dt > 0.0)) {
    throw std::invalid_argument("evolve_td: dt must be positive");
  }
  if (std::abs(psi0.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("evolve_td: initial state is not normalized");
  }
}

void check_dimension(long rows, const StateVector& psi0) {
  if (rows != psi0.dim()) {
    throw DimensionMismatch("evolve_td: Hamiltonian dimension " + std::to_string(rows) +
                            " does not match state dimension " + std::to_string(psi0.dim()));
  }
}

void check_stability(double product, double t, double limit) {
  if (product > limit) {
    std::ostringstream msg;
    msg << "evolve_td: dt * ||H(" << t << ")|| = " << product << " exceeds the limit " << limit;
    throw StabilityViolation(msg.str());
  }
}

}  // namespace

double spectral_bound(const OperatorMatrix& h) { return h.cwiseAbs().rowwise().sum().maxCoeff(); }

double stable_time_step(const HamiltonianFn& h, double t_final, double stability_limit) {
  double bound = 0.0;
  for (const double t : {0.0, 0.5 * t_final, t_final}) {
    bound = std::max(bound, spectral_bound(h(t)));
  }
  if (bound == 0.0) return t_final > 0.0 ? t_final : 1.0;
  return stability_limit / bound;
}

Trajectory evolve_td(const StateVector& psi0, const HamiltonianFn& h, const EvolutionConfig& cfg) {
  check_config(psi0, cfg);
  if (cfg.t_final > 0.0) {
    check_dimension(h(0.0).rows(), psi0);
    for (const double t : {0.0, 0.5 * cfg.t_final, cfg.t_final}) {
      check_stability(cfg.dt * spectral_bound(h(t)), t, cfg.stability_limit);
    }
  }
  Integrator<DenseApply> integrator(psi0, DenseApply(h), cfg);
  return integrator.run(psi0);
}

double stable_time_step(const DrivenHamiltonian& h, double stability_limit) {
  const double bound = h.spectral_bound();
  return bound == 0.0 ? 1.0 : stability_limit / bound;
}

Trajectory evolve_td(const StateVector& psi0, const DrivenHamiltonian& h,
                     const EvolutionConfig& cfg) {
  check_config(psi0, cfg);
  if (cfg.t_final > 0.0) {
    check_dimension(h.dim(), psi0);
    // The bound holds for every t, so one check covers the whole run.
    check_stability(cfg.dt * h.spectral_bound(), 0.0, cfg.stability_limit);
  }
  Integrator<DrivenApply> integrator(psi0, DrivenApply(h), cfg);
  return integrator.run(psi0);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory,
                          bool include_amplitudes) {
  out << "t,min_variance,r_extracted,phi_extracted";
  const int dim = trajectory.samples.empty() ? 0 : trajectory.samples.front().state.basis().dim();
  if (include_amplitudes) {
    for (int k = 0; k < dim; ++k) out << ",re_" << k << ",im_" << k;
  }
  out << '\n';
  for (const auto& sample : trajectory.samples) {
    const StateVector field = sample.state.kind() == BasisKind::Fock
                                  ? sample.state
                                  : sample.state.block(Level::i).normalized();
    const QuadratureStats stats = quadrature_stats(field);
    out << sci(sample.t) << ',' << sci(stats.var_min) << ','
        << sci(squeeze_factor_from_variance(stats.var_min)) << ','
        << sci(squeeze_angle_from_stats(stats));
    if (include_amplitudes) {
      for (int k = 0; k < dim; ++k) {
        out << ',' << sci(field.amplitudes()(k).real()) << ',' << sci(field.amplitudes()(k).imag());
      }
    }
    out << '\n';
  }
}

}  // namespace squeeze
