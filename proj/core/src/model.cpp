#include "squeeze/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "squeeze/errors.hpp"

namespace squeeze {
namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// View of one (row level, column level) block of an Atom (x) Fock matrix.
auto block(OperatorMatrix& m, Level row, Level col, int d) {
  return m.block(static_cast<int>(row) * d, static_cast<int>(col) * d, d, d);
}

// a^dag^2, filled directly (called on every integrator stage).
OperatorMatrix two_photon_creation(const FockBasis& basis) {
  const int d = basis.dim();
  OperatorMatrix m = OperatorMatrix::Zero(d, d);
  for (int n = 0; n + 2 < d; ++n) m(n + 2, n) = std::sqrt((n + 1.0) * (n + 2.0));
  return m;
}

}  // namespace

void SystemParams::validate() const {
  if (!finite(lambda_g) || !finite(lambda_e) || !finite(omega_rabi) || !std::isfinite(delta) ||
      !std::isfinite(big_delta) || !std::isfinite(omega_cavity) || !std::isfinite(gamma_a) ||
      !std::isfinite(gamma_c)) {
    throw ParameterError("all rates must be finite");
  }
  if (delta == 0.0) {
    throw ParameterError("delta must be nonzero: the dispersive elimination divides by delta");
  }
  if (gamma_a < 0.0 || gamma_c < 0.0) {
    throw ParameterError("decay rates gamma_a and gamma_c must be >= 0");
  }
  if (n_max < 1) {
    throw ParameterError("n_max must be >= 1");
  }
  if (profile) {
    if (!(profile->waist_m > 0.0) || !std::isfinite(profile->waist_m)) {
      throw ParameterError("waist_m must be positive");
    }
    if (!(profile->speed_mps >= 0.0) || !std::isfinite(profile->speed_mps)) {
      throw ParameterError("speed_mps must be >= 0");
    }
  }
}

std::optional<std::string> SystemParams::dispersive_warning() const {
  const double largest = std::max({std::abs(lambda_g), std::abs(lambda_e), std::abs(omega_rabi),
                                   std::abs(big_delta)});
  if (std::abs(delta) >= 10.0 * largest) return std::nullopt;
  std::ostringstream msg;
  msg << "dispersive regime not satisfied: |delta| = " << std::abs(delta)
      << " < 10 * max(|lambda_g|, |lambda_e|, |Omega|, |Delta|) = " << 10.0 * largest;
  return msg.str();
}

EffectiveParams derive_effective(const SystemParams& p) {
  p.validate();
  EffectiveParams eff;
  eff.chi = 2.0 * (std::norm(p.lambda_g) + std::norm(p.lambda_e)) / p.delta;
  eff.varpi = p.omega_cavity + eff.chi;
  eff.xi = 2.0 * p.omega_rabi * std::conj(p.lambda_g) * std::conj(p.lambda_e) / (p.delta * p.delta);
  eff.nu = 2.0 * p.omega_cavity + p.big_delta;
  eff.big_delta = p.big_delta;

  const double offset = 2.0 * eff.chi - p.big_delta;
  const double scale = std::max(std::abs(2.0 * eff.chi), std::abs(p.big_delta));
  eff.resonant = std::abs(offset) <= kResonanceTolerance * scale;
  if (eff.resonant) {
    eff.coupling = std::numeric_limits<double>::infinity();
  } else {
    eff.coupling = 4.0 * eff.xi_modulus() / offset;
  }
  return eff;
}

DrivenHamiltonian::DrivenHamiltonian(Sparse static_part, Sparse drive, double drive_frequency)
    : static_part_(std::move(static_part)),
      drive_(std::move(drive)),
      drive_adjoint_(drive_.adjoint()),
      frequency_(drive_frequency) {
  static_part_.makeCompressed();
  drive_.makeCompressed();
  drive_adjoint_.makeCompressed();
}

OperatorMatrix DrivenHamiltonian::operator()(double t) const {
  const Complex phase = std::polar(1.0, -frequency_ * t);
  OperatorMatrix h = static_part_;
  h += phase * drive_;
  h += std::conj(phase) * drive_adjoint_;
  return h;
}

void DrivenHamiltonian::apply(double t, const Eigen::VectorXcd& v, Eigen::VectorXcd& out) const {
  const Complex phase = std::polar(1.0, -frequency_ * t);
  out.noalias() = static_part_ * v;
  out.noalias() += phase * (drive_ * v);
  out.noalias() += std::conj(phase) * (drive_adjoint_ * v);
}

double DrivenHamiltonian::spectral_bound() const {
  double bound = 0.0;
  for (int r = 0; r < dim(); ++r) {
    double row = 0.0;
    for (const Sparse* m : {&static_part_, &drive_, &drive_adjoint_}) {
      for (Sparse::InnerIterator it(*m, r); it; ++it) row += std::abs(it.value());
    }
    bound = std::max(bound, row);
  }
  return bound;
}

namespace {

DrivenHamiltonian::Sparse to_sparse(const OperatorMatrix& m) {
  return m.sparseView();
}

}  // namespace

FullHamiltonian::FullHamiltonian(const SystemParams& p, const FockBasis& basis)
    : DrivenHamiltonian(
          [&] {
            const int d = basis.dim();
            const int n = kAtomLevels * d;
            const OperatorMatrix a = annihilation(basis);
            OperatorMatrix h = OperatorMatrix::Zero(n, n);
            block(h, Level::i, Level::g, d) = p.lambda_g * a;
            block(h, Level::e, Level::i, d) = p.lambda_e * a;
            h += h.adjoint().eval();
            for (int k = 0; k < d; ++k) {
              h(static_cast<int>(Level::g) * d + k, static_cast<int>(Level::g) * d + k) = -p.delta;
              h(static_cast<int>(Level::e) * d + k, static_cast<int>(Level::e) * d + k) = -p.delta;
            }
            return to_sparse(h);
          }(),
          [&] {
            const int d = basis.dim();
            OperatorMatrix drive = OperatorMatrix::Zero(kAtomLevels * d, kAtomLevels * d);
            block(drive, Level::e, Level::g, d) = p.omega_rabi * OperatorMatrix::Identity(d, d);
            return to_sparse(drive);
          }(),
          p.big_delta) {}

EffectiveModeHamiltonian::EffectiveModeHamiltonian(const EffectiveParams& eff,
                                                   const FockBasis& basis)
    : DrivenHamiltonian(to_sparse(eff.varpi * number_operator(basis)),
                        to_sparse(eff.xi * two_photon_creation(basis)), eff.nu) {}

OperatorMatrix full_hamiltonian(const SystemParams& p, double t, const FockBasis& basis) {
  return FullHamiltonian(p, basis)(t);
}

OperatorMatrix effective_hamiltonian_full(const SystemParams& p, double t, const FockBasis& basis) {
  p.validate();
  const int d = basis.dim();
  const double delta = p.delta;
  const double lg2 = std::norm(p.lambda_g);
  const double le2 = std::norm(p.lambda_e);
  const double sum2 = lg2 + le2;

  const OperatorMatrix a = annihilation(basis);
  const OperatorMatrix a2 = a * a;
  const OperatorMatrix id = OperatorMatrix::Identity(d, d);
  const OperatorMatrix twice_n_plus_one = 2.0 * number_operator(basis) + id;

  const Complex drive = p.omega_rabi * std::polar(1.0, -p.big_delta * t);
  const Complex gl = p.lambda_g * p.lambda_e;
  // (lambda_g lambda_e Omega* e^{i Delta t} a^2 + h.c.)
  const OperatorMatrix y = gl * std::conj(drive) * a2;
  const OperatorMatrix y_herm = y + y.adjoint();

  OperatorMatrix h = OperatorMatrix::Zero(kAtomLevels * d, kAtomLevels * d);
  block(h, Level::g, Level::g, d) = -delta * id - (lg2 * twice_n_plus_one + y_herm / delta) / delta;
  block(h, Level::i, Level::i, d) = (sum2 * twice_n_plus_one + 2.0 * y_herm / delta) / delta;
  block(h, Level::e, Level::e, d) = -delta * id - (le2 * twice_n_plus_one + y_herm / delta) / delta;

  const OperatorMatrix eg =
      drive * id - (sum2 / (2.0 * delta) * drive * twice_n_plus_one + 2.0 * gl * a2) / delta;
  block(h, Level::e, Level::g, d) = eg;
  block(h, Level::g, Level::e, d) = eg.adjoint();
  return h;
}

OperatorMatrix effective_hamiltonian_mode(const EffectiveParams& eff, double t,
                                          const FockBasis& basis) {
  return EffectiveModeHamiltonian(eff, basis)(t);
}

double profile_envelope(const GaussianProfile& profile, double t, double tau) {
  const double x = profile.speed_mps * (t - tau / 2.0);
  return std::exp(-(x * x) / (profile.waist_m * profile.waist_m));
}

CouplingPair profile_coupling(const SystemParams& p, double t, double tau) {
  if (!p.profile) {
    throw ProfileMissing("profile_coupling: waist_m and speed_mps are required");
  }
  if (!(tau > 0.0)) {
    throw ParameterError("profile_coupling: transit time tau must be positive");
  }
  const double f = profile_envelope(*p.profile, t, tau);
  return {p.lambda_g * f, p.lambda_e * f};
}

}  // namespace squeeze
