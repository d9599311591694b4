#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "squeeze/hilbert.hpp"
#include "squeeze/model.hpp"

namespace squeeze {

// ---------------------------------------------------------------------------
// Squeeze transforms
// ---------------------------------------------------------------------------

// U = exp(-i rotation a^dag a) S(r e^{i phi}),
// S(zeta) = exp((zeta* a^2 - zeta a^dag^2) / 2).
// Heisenberg action: U^dag a U = mu a + nu a^dag with
//   mu = e^{-i rotation} cosh r,  nu = -e^{-i rotation} e^{i phi} sinh r.
// r is kept >= 0 and both angles are wrapped into (-pi, pi].
class SqueezeTransform {
 public:
  SqueezeTransform() = default;
  SqueezeTransform(double r, double phi, double rotation = 0.0);

  double r() const noexcept { return r_; }
  double phi() const noexcept { return phi_; }
  double rotation() const noexcept { return rotation_; }

  // Bogoliubov coefficients (mu, nu) described above.
  std::pair<Complex, Complex> bogoliubov() const;
  static SqueezeTransform from_bogoliubov(Complex mu, Complex nu);

  SqueezeTransform inverse() const;

  // (*this) after `first`: the operator product this_U * first_U.
  SqueezeTransform after(const SqueezeTransform& first) const;

 private:
  double r_ = 0.0;
  double phi_ = 0.0;
  double rotation_ = 0.0;
};

double wrap_angle(double angle);

// Quadrature X_theta = (a e^{-i theta} + a^dag e^{i theta}) / 2 squeezed by
// S(r e^{i phi}) acting on a minimum-uncertainty state: theta = phi / 2.
double squeezed_quadrature_angle(const SqueezeTransform& s);

// Resonant closed form: r = 2 |xi| t, phi = pi/2 - Theta, rotation = varpi t,
// so that applying it to |Phi(0)> gives the Schrodinger-picture |Phi(t)>.
// The caller is responsible for Delta = 2 chi.
SqueezeTransform analytic_squeeze(const EffectiveParams& eff, double t);

enum class LeakagePolicy { Throw, Record };

// exp of the truncated quadratic generator applied to a Fock-only state,
// followed by the rotation. Throws TruncationError when the result carries
// more than `leakage_threshold` in the top 10% of Fock levels and the policy
// is Throw.
StateVector apply_squeeze(const StateVector& psi, const SqueezeTransform& s,
                          LeakagePolicy policy = LeakagePolicy::Throw,
                          double leakage_threshold = kLeakageThreshold);

// ---------------------------------------------------------------------------
// Time-dependent Schrodinger integration
// ---------------------------------------------------------------------------

using HamiltonianFn = std::function<OperatorMatrix(double)>;

enum class StepMethod {
  FixedRk4,     // classical RK4, fixed dt
  StepDoubling  // RK4 with step-doubling error control, dt is the largest step
};

struct EvolutionConfig {
  double dt = 0.0;
  double t_final = 0.0;
  StepMethod method = StepMethod::FixedRk4;
  int record_every = 1;
  // dt * ||H||_bound must not exceed this.
  double stability_limit = 0.05;
  // Per-step error target for StepDoubling, on ||psi_full - psi_half||.
  double tolerance = 1e-11;
  double leakage_threshold = kLeakageThreshold;
  LeakagePolicy leakage_policy = LeakagePolicy::Throw;
};

struct TrajectorySample {
  double t;
  StateVector state;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;  // always starts at t = 0, ends at t_final
  long steps = 0;
  long rejected_steps = 0;
  double max_norm_correction = 0.0;  // largest per-step | ||psi|| - 1 |
  double max_leakage = 0.0;
  bool leakage_flagged = false;

  const StateVector& final_state() const { return samples.back().state; }
};

// Gershgorin bound on the spectral radius: max_i sum_j |H_ij|.
double spectral_bound(const OperatorMatrix& h);

// Largest dt satisfying the stability limit, probed at t = 0, t_final/2 and
// t_final.
double stable_time_step(const HamiltonianFn& h, double t_final, double stability_limit = 0.05);

// Integrates i d/dt psi = H(t) psi. Throws StabilityViolation if the guard
// fails and TruncationError if leakage crosses the threshold under the Throw
// policy.
Trajectory evolve_td(const StateVector& psi0, const HamiltonianFn& h, const EvolutionConfig& cfg);

// Sparse path for H0 + e^{-iwt} D + h.c.; H(t) is never formed.
double stable_time_step(const DrivenHamiltonian& h, double stability_limit = 0.05);
Trajectory evolve_td(const StateVector& psi0, const DrivenHamiltonian& h,
                     const EvolutionConfig& cfg);

// CSV with header t,min_variance,r_extracted,phi_extracted and, when
// include_amplitudes is set, re_<k>,im_<k> for every basis index. Atom (x) Fock
// states report the normalized |i> block.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, bool include_amplitudes);

}  // namespace squeeze
