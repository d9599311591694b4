#pragma once

#include <span>
#include <string>
#include <vector>

#include "squeeze/dynamics.hpp"
#include "squeeze/hilbert.hpp"
#include "squeeze/model.hpp"

namespace squeeze {

// ---------------------------------------------------------------------------
// Quadrature statistics
// ---------------------------------------------------------------------------

struct QuadratureStats {
  Complex mean;            // <a>
  double var_min = 0.25;   // min over theta of Var(X_theta)
  double var_max = 0.25;
  double phi_min = 0.0;    // minimizing quadrature angle, in (-pi/2, pi/2]
  double squeezing_pct = 0.0;
};

// Var(X_theta) with X_theta = (a e^{-i theta} + a^dag e^{i theta}) / 2.
double quadrature_variance(const StateVector& psi, double theta);

// Closed-form extremes of Var(X_theta) from <a>, <a^2>, <a^dag a>.
// Requires a normalized Fock-only state.
QuadratureStats quadrature_stats(const StateVector& psi);

// 100 (1 - 4 var); 0 for the vacuum level 1/4.
double squeezing_percent(double variance);

// r such that e^{-2r}/4 = var_min, clamped at 0.
double squeeze_factor_from_variance(double var_min);

// Squeeze-operator angle phi whose squeezed quadrature is phi_min (phi = 2 phi_min).
double squeeze_angle_from_stats(const QuadratureStats& stats);

// ---------------------------------------------------------------------------
// Off-resonant (strong-coupling) squeeze factor
// ---------------------------------------------------------------------------

enum class CouplingRegime { Strong, Weak, Critical };

std::string_view to_string(CouplingRegime regime);

struct OffResonantInputs {
  double coupling = 0.0;    // 4 |xi| / (2 chi - Delta), signed
  double xi_modulus = 0.0;  // s^-1
  double theta = 0.0;       // xi = |xi| e^{-i theta}
  double r0 = 0.0;
  double phi0 = 0.0;
  double nu = 0.0;          // s^-1

  static OffResonantInputs from(const EffectiveParams& eff, double r0 = 0.0, double phi0 = 0.0);

  // |P| = 1 within 1e-12 is critical.
  CouplingRegime regime() const;
};

// C = cosh(2 r0) + P cos(phi0 - theta) sinh(2 r0).
double off_resonant_constant(const OffResonantInputs& in);

struct OffResonantPoint {
  double r = 0.0;
  // Right-hand side of cos[phi_off + nu t - theta] = (C - cosh 2r) / (P sinh 2r),
  // clamped into [-1, 1].
  double phase_cosine = 0.0;
};

// Throws RegimeError unless |P|^2 - 1 >= 1e-9, BranchError when the phase
// cosine leaves [-1 - 1e-9, 1 + 1e-9] or C < 1 (no real solution).
OffResonantPoint off_resonant_point(const OffResonantInputs& in, double t);

// r_off(t) and phi_off(t) on the principal arccos branch.
SqueezeTransform off_resonant_squeeze(const OffResonantInputs& in, double t);

// Same over a time grid; the arccos branch at each sample is the one nearest
// the previous phi_off.
std::vector<SqueezeTransform> off_resonant_series(const OffResonantInputs& in,
                                                  std::span<const double> times);

inline double on_resonant_factor(double xi_modulus, double t) { return 2.0 * xi_modulus * t; }

enum class SweepFlag { None, Resonant, NotStrong };

struct SweepRow {
  double big_delta = 0.0;
  double coupling = 0.0;
  double r_off = 0.0;
  double r_on = 0.0;
  double ratio = 0.0;
  SweepFlag flag = SweepFlag::None;
};

// One row per detuning; weak/critical points are flagged with NaN r_off and
// ratio, and exact resonance reports ratio 1. Requires t > 0.
SweepRow fig2_point(const EffectiveParams& eff, double t, double big_delta);
std::vector<SweepRow> fig2_sweep(const EffectiveParams& eff, double t,
                                 std::span<const double> delta_grid);

// ---------------------------------------------------------------------------
// Phenomenological dissipation
// ---------------------------------------------------------------------------

struct DecayInputs {
  double gamma_a = 0.0;
  double gamma_c = 0.0;
  double xi_modulus = 0.0;
  double t = 0.0;
};

// 4 |xi| (1 - e^{-gamma_a t / 2}) / gamma_a, continuous onto 2 |xi| t.
double decayed_squeeze_factor(const DecayInputs& in);

// (1/4) [1 - (1 - e^{-2 r~}) e^{-gamma_c t}].
double decayed_variance(const DecayInputs& in);

// ---------------------------------------------------------------------------
// Gaussian mode profile
// ---------------------------------------------------------------------------

// r' = 2 int_0^tau |xi(t)| dt with the envelope-scaled couplings.
// Throws ProfileMissing when p carries no profile.
double profile_squeeze_factor(const SystemParams& p, double tau);

// Profile with the speed rescaled so the transit lasts tau instead of
// reference_tau (v tau held fixed).
GaussianProfile rescale_transit(const GaussianProfile& profile, double reference_tau, double tau);

}  // namespace squeeze
