#include "validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "squeeze/analysis.hpp"
#include "squeeze/dynamics.hpp"
#include "squeeze/errors.hpp"

namespace squeeze::cli {
namespace {

Check below(std::string name, double residual, double tolerance, std::string detail = {}) {
  return {std::move(name), residual <= tolerance, residual, tolerance, std::move(detail)};
}

Trajectory run_mode(const EffectiveParams& eff, const FockBasis& basis, const StateVector& psi0,
                    double t, int record_every) {
  const EffectiveModeHamiltonian h(eff, basis);
  EvolutionConfig cfg;
  cfg.t_final = t;
  cfg.stability_limit = 0.02;
  cfg.dt = stable_time_step(h, cfg.stability_limit);
  cfg.record_every = record_every;
  cfg.leakage_policy = LeakagePolicy::Record;
  return evolve_td(psi0, h, cfg);
}

}  // namespace

std::vector<Check> run_invariant_suite(const SystemParams& params, double t) {
  params.validate();
  if (!(t > 0.0)) throw ParameterError("validate: t must be positive");

  std::vector<Check> checks;
  const FockBasis basis = params.basis();
  const EffectiveParams eff = derive_effective(params);

  // Hermiticity of every Hamiltonian builder.
  double herm_full = 0.0;
  double herm_eff = 0.0;
  for (const double s : {0.0, t / 3.0, t}) {
    herm_full = std::max(herm_full, hermiticity_residual(full_hamiltonian(params, s, basis)));
    herm_eff = std::max({herm_eff, hermiticity_residual(effective_hamiltonian_full(params, s, basis)),
                         hermiticity_residual(effective_hamiltonian_mode(eff, s, basis))});
  }
  checks.push_back(below("hermiticity_full", herm_full, 1e-12));
  checks.push_back(below("hermiticity_effective", herm_eff, 1e-12));

  // Oracle equivalence on resonance: RK4 against the closed-form transform.
  SystemParams tuned = params;
  tuned.big_delta = 2.0 * eff.chi;
  const EffectiveParams on = derive_effective(tuned);
  double worst_rel = 0.0;
  double worst_norm = 0.0;
  double floor_margin = std::numeric_limits<double>::infinity();
  for (const Complex alpha : {Complex(0.0), Complex(1.0)}) {
    const StateVector psi0 = coherent_state(basis, alpha);
    const Trajectory traj = run_mode(on, basis, psi0, t, 1000);
    worst_norm = std::max(worst_norm, traj.max_norm_correction);
    for (const auto& sample : traj.samples) {
      const QuadratureStats q = quadrature_stats(sample.state);
      floor_margin = std::min(floor_margin, q.var_min * q.var_max - 1.0 / 16.0);
    }
    const StateVector analytic =
        apply_squeeze(psi0, analytic_squeeze(on, t), LeakagePolicy::Record);
    const double v_num = quadrature_stats(traj.final_state()).var_min;
    const double v_ana = quadrature_stats(analytic).var_min;
    worst_rel = std::max(worst_rel, std::abs(v_num - v_ana) / v_ana);
  }
  checks.push_back(below("unitarity", worst_norm, 1e-9, "largest per-step norm correction"));
  checks.push_back(below("uncertainty_floor", std::max(0.0, -floor_margin), 1e-9,
                         "shortfall of Var_min Var_max below 1/16"));
  checks.push_back(below("oracle_equivalence", worst_rel, 1e-5,
                         "relative var_min difference, RK4 vs analytic, vacuum and alpha = 1"));

  // Invariance of var_min under rotation and displacement, on a basis with
  // enough headroom that the truncated tail stays below the tolerance.
  const FockBasis roomy(std::max(basis.n_max(), 127));
  const SqueezeTransform s(std::min(1.0, on_resonant_factor(eff.xi_modulus(), t)), 0.4);
  const StateVector vac = StateVector::fock(roomy, 0);
  const double base = quadrature_stats(apply_squeeze(vac, s, LeakagePolicy::Record)).var_min;
  const double rotated =
      quadrature_stats(apply_squeeze(vac, SqueezeTransform(s.r(), s.phi(), 0.9), LeakagePolicy::Record))
          .var_min;
  const double displaced =
      quadrature_stats(apply_squeeze(coherent_state(roomy, Complex(0.6, -0.3)), s, LeakagePolicy::Record))
          .var_min;
  checks.push_back(below("rotation_invariance", std::abs(rotated - base), 1e-10));
  checks.push_back(below("displacement_invariance", std::abs(displaced - base), 1e-8));

  // Group law: two half squeezes equal one full squeeze; U^-1 U = 1.
  const SqueezeTransform half(0.5 * s.r(), s.phi());
  const StateVector twice = apply_squeeze(apply_squeeze(vac, half, LeakagePolicy::Record), half,
                                          LeakagePolicy::Record);
  const StateVector once = apply_squeeze(vac, s, LeakagePolicy::Record);
  const SqueezeTransform skew(0.3, -1.2, 0.5);
  const double group_residual =
      std::max({1.0 - std::abs(once.amplitudes().dot(twice.amplitudes())),
                skew.inverse().after(skew).r(), s.after(skew).after(skew.inverse()).r() - s.r()});
  checks.push_back(below("squeeze_group_law", std::abs(group_residual), 1e-9));

  // Off-resonant closed form: identity at t = 0 and the resonant limit.
  double identity = 0.0;
  for (const double p : {1.1, 2.0, 10.0, 100.0}) {
    const OffResonantInputs in{p, eff.xi_modulus(), eff.theta(), 0.0, 0.0, eff.nu};
    identity = std::max(identity, off_resonant_point(in, 0.0).r);
  }
  checks.push_back(below("offres_identity_t0", identity, 1e-12));

  const double r_on = on_resonant_factor(eff.xi_modulus(), t);
  double limit_excess = 0.0;
  for (const double p : {100.0, 1000.0}) {
    const OffResonantInputs in{p, eff.xi_modulus(), eff.theta(), 0.0, 0.0, eff.nu};
    const double deviation = std::abs(off_resonant_point(in, t).r / r_on - 1.0);
    limit_excess = std::max(limit_excess, deviation * p * p / 10.0);
  }
  checks.push_back(below("offres_large_coupling_limit", limit_excess, 1.0,
                         "|r_off/r_on - 1| in units of 10/P^2"));

  // The coherent-state guard must refuse an undersized basis.
  bool guarded = false;
  try {
    coherent_state(FockBasis(4), 2.0);
  } catch (const TruncationError&) {
    guarded = true;
  }
  checks.push_back({"truncation_guard", guarded, guarded ? 0.0 : 1.0, 0.0,
                    "coherent alpha = 2 on n_max = 4 must raise"});
  return checks;
}

}  // namespace squeeze::cli
