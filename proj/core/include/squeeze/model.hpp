#pragma once

#include <optional>
#include <string>

#include <Eigen/SparseCore>

#include "squeeze/hilbert.hpp"

namespace squeeze {

// Transverse Gaussian mode f(x) = exp(-x^2 / w^2) crossed at constant speed.
struct GaussianProfile {
  double waist_m = 0.0;
  double speed_mps = 0.0;
};

// Physical inputs, hbar = 1: every rate is an angular frequency in s^-1.
struct SystemParams {
  Complex lambda_g{};
  Complex lambda_e{};
  Complex omega_rabi{};
  double delta = 0.0;         // common atom-field detuning, signed
  double big_delta = 0.0;     // drive detuning, omega_0 = 2 omega + Delta
  double omega_cavity = 0.0;  // cavity frequency
  double gamma_a = 0.0;
  double gamma_c = 0.0;
  std::optional<GaussianProfile> profile;
  int n_max = 63;

  // Throws ParameterError for delta == 0, non-finite values, negative decay
  // rates or n_max < 1.
  void validate() const;

  // Non-empty when |delta| < 10 max(|lambda_g|, |lambda_e|, |Omega|, |Delta|).
  std::optional<std::string> dispersive_warning() const;

  FockBasis basis() const { return FockBasis(n_max); }
};

// Quantities of the single-mode effective Hamiltonian
//   H_i = varpi a^dag a + xi e^{-i nu t} a^dag^2 + xi* e^{i nu t} a^2.
struct EffectiveParams {
  double chi = 0.0;    // 2 (|lambda_g|^2 + |lambda_e|^2) / delta
  double varpi = 0.0;  // omega + chi
  Complex xi{};        // 2 Omega lambda_g* lambda_e* / delta^2 = |xi| e^{-i Theta}
  double nu = 0.0;     // 2 omega + Delta
  double big_delta = 0.0;
  // 4 |xi| / (2 chi - Delta); +-infinity when resonant.
  double coupling = 0.0;
  bool resonant = false;

  double xi_modulus() const { return std::abs(xi); }
  double theta() const { return -std::arg(xi); }
};

// Relative tolerance on |Delta - 2 chi| for declaring the drive resonant.
inline constexpr double kResonanceTolerance = 1e-9;

EffectiveParams derive_effective(const SystemParams& p);

// Interaction-picture three-level Hamiltonian
//   H = (lambda_g a s_ig + lambda_e a s_ei + Omega e^{-i Delta t} s_eg + h.c.)
//       - delta (s_gg + s_ee)
// on the level-major Atom (x) Fock space.
OperatorMatrix full_hamiltonian(const SystemParams& p, double t, const FockBasis& basis);

// H(t) = H0 + e^{-i w t} D + e^{i w t} D^dag with sparse H0 and D. Both the
// three-level model and the single-mode generator have this shape, and the
// integrator applies it to a vector without forming H(t).
class DrivenHamiltonian {
 public:
  using Sparse = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

  DrivenHamiltonian(Sparse static_part, Sparse drive, double drive_frequency);

  // Dense H(t).
  OperatorMatrix operator()(double t) const;
  // out = H(t) v
  void apply(double t, const Eigen::VectorXcd& v, Eigen::VectorXcd& out) const;
  // Gershgorin bound on ||H(t)|| valid for every t.
  double spectral_bound() const;
  int dim() const { return static_cast<int>(static_part_.rows()); }

 private:
  Sparse static_part_;
  Sparse drive_;
  Sparse drive_adjoint_;
  double frequency_;
};

// Three-level model above, drive at frequency Delta.
class FullHamiltonian : public DrivenHamiltonian {
 public:
  FullHamiltonian(const SystemParams& p, const FockBasis& basis);
};

// Single-mode generator below, pump at frequency nu.
class EffectiveModeHamiltonian : public DrivenHamiltonian {
 public:
  EffectiveModeHamiltonian(const EffectiveParams& eff, const FockBasis& basis);
};

// Symmetrized adiabatic three-level Hamiltonian (dispersive elimination of
// s_ig and s_ei). Its |i> block is the single-mode generator plus a constant.
OperatorMatrix effective_hamiltonian_full(const SystemParams& p, double t, const FockBasis& basis);

// Schrodinger-picture single-mode generator on the Fock space.
OperatorMatrix effective_hamiltonian_mode(const EffectiveParams& eff, double t,
                                          const FockBasis& basis);

struct CouplingPair {
  Complex lambda_g;
  Complex lambda_e;
};

// Gaussian envelope along x(t) = v (t - tau/2); f = 1 at mid-transit.
double profile_envelope(const GaussianProfile& profile, double t, double tau);

// Couplings scaled by the envelope. Throws ProfileMissing without a profile.
CouplingPair profile_coupling(const SystemParams& p, double t, double tau);

}  // namespace squeeze
