#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "squeeze/dynamics.hpp"
#include "squeeze/errors.hpp"

namespace squeeze {

double wrap_angle(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::remainder(angle, two_pi);  // [-pi, pi]
  if (w <= -std::numbers::pi) w += two_pi;
  return w;
}

SqueezeTransform::SqueezeTransform(double r, double phi, double rotation)
    : r_(r), phi_(phi), rotation_(wrap_angle(rotation)) {
  if (!std::isfinite(r) || !std::isfinite(phi) || !std::isfinite(rotation)) {
    throw std::invalid_argument("SqueezeTransform: non-finite parameter");
  }
  if (r_ < 0.0) {
    r_ = -r_;
    phi_ += std::numbers::pi;
  }
  phi_ = wrap_angle(phi_);
}

std::pair<Complex, Complex> SqueezeTransform::bogoliubov() const {
  const Complex spin = std::polar(1.0, -rotation_);
  return {spin * std::cosh(r_), -spin * std::polar(1.0, phi_) * std::sinh(r_)};
}

SqueezeTransform SqueezeTransform::from_bogoliubov(Complex mu, Complex nu) {
  const double r = std::asinh(std::abs(nu));
  const double rotation = -std::arg(mu);
  const double phi = r > 0.0 ? std::arg(-nu) + rotation : 0.0;
  return {r, phi, rotation};
}

SqueezeTransform SqueezeTransform::inverse() const {
  const auto [mu, nu] = bogoliubov();
  return from_bogoliubov(std::conj(mu), -nu);
}

SqueezeTransform SqueezeTransform::after(const SqueezeTransform& first) const {
  const auto [mu1, nu1] = bogoliubov();
  const auto [mu2, nu2] = first.bogoliubov();
  return from_bogoliubov(mu1 * mu2 + nu1 * std::conj(nu2), mu1 * nu2 + nu1 * std::conj(mu2));
}

double squeezed_quadrature_angle(const SqueezeTransform& s) { return s.phi() / 2.0; }

SqueezeTransform analytic_squeeze(const EffectiveParams& eff, double t) {
  return {2.0 * eff.xi_modulus() * t, std::numbers::pi / 2.0 - eff.theta(), eff.varpi * t};
}

StateVector apply_squeeze(const StateVector& psi, const SqueezeTransform& s, LeakagePolicy policy,
                          double leakage_threshold) {
  if (psi.kind() != BasisKind::Fock) {
    throw DimensionMismatch("apply_squeeze: expects a Fock-only state");
  }
  const FockBasis basis = psi.basis();
  const int d = basis.dim();

  Eigen::VectorXcd out = psi.amplitudes();
  if (s.r() > 0.0) {
    const OperatorMatrix a = annihilation(basis);
    const OperatorMatrix a2 = a * a;
    const Complex zeta = std::polar(s.r(), s.phi());
    const OperatorMatrix generator = 0.5 * (std::conj(zeta) * a2 - zeta * a2.adjoint());
    const OperatorMatrix propagator = generator.exp();
    out = propagator * out;
  }
  if (s.rotation() != 0.0) {
    for (int n = 0; n < d; ++n) {
      out(n) *= std::polar(1.0, -s.rotation() * n);
    }
  }
  StateVector result(basis, BasisKind::Fock, std::move(out));

  const double leak = tail_probability(result);
  if (policy == LeakagePolicy::Throw && leak > leakage_threshold) {
    throw TruncationError("apply_squeeze: " + std::to_string(leak) +
                          " of the probability sits in the top 10% of Fock levels (n_max = " +
                          std::to_string(basis.n_max()) + "); increase n_max");
  }
  return result;
}

}  // namespace squeeze
